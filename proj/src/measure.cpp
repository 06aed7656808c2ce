#include "aitlab/measure.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace aitlab {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

void require_probability(const Rational& p, const char* what) {
  if (p < 0 || p > 1) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

mpz_class lcm_of(const mpz_class& a, const mpz_class& b) {
  mpz_class out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Bits bits_of(const mpz_class& value, std::size_t width) {
  if (width == 0) return Bits();
  std::string s = value.get_str(2);
  if (s.size() < width) s.insert(0, width - s.size(), '0');
  return Bits(s);
}

mpz_class shifted(const mpz_class& v, std::size_t k) {
  mpz_class out;
  mpz_mul_2exp(out.get_mpz_t(), v.get_mpz_t(), k);
  return out;
}

// Cylinder of the m-bit input with integer value a inside [lo/den, (lo+w)/den)?
bool inside(const mpz_class& a, std::size_t m, const CdfCursor::Interval& iv) {
  if (a * iv.den < shifted(iv.lo, m)) return false;
  return (a + 1) * iv.den <= shifted(iv.lo + iv.width, m);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty number");
  Rational q;
  const auto dot = t.find('.');
  if (dot != std::string::npos) {
    const std::string whole = t.substr(0, dot);
    const std::string frac = t.substr(dot + 1);
    if (frac.empty() || !std::all_of(frac.begin(), frac.end(), ::isdigit) ||
        !std::all_of(whole.begin(), whole.end(), ::isdigit)) {
      throw std::invalid_argument("malformed number '" + t + "'");
    }
    mpz_class num(whole + frac, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    q = Rational(num, den);
  } else {
    for (char c : t) {
      if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && c != '-') {
        throw std::invalid_argument("malformed number '" + t + "'");
      }
    }
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("malformed number '" + t + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + t + "'");
  }
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------

MeasureOracle MeasureOracle::uniform() { return MeasureOracle(); }

MeasureOracle MeasureOracle::bernoulli(const Rational& p) {
  require_probability(p, "Bernoulli parameter");
  MeasureOracle q;
  q.kind_ = Kind::Bernoulli;
  q.p_ = p;
  q.p_.canonicalize();
  q.common_den_ = q.p_.get_den();
  return q;
}

MeasureOracle MeasureOracle::markov(const Matrix& transition, const std::array<Rational, 2>& initial) {
  MeasureOracle q;
  q.kind_ = Kind::Markov;
  q.transition_ = transition;
  q.initial_ = initial;
  mpz_class den(1);
  for (auto& row : q.transition_) {
    for (Rational& v : row) {
      v.canonicalize();
      require_probability(v, "transition probability");
      den = lcm_of(den, v.get_den());
    }
    if (row[0] + row[1] != 1) throw std::invalid_argument("transition rows must sum to 1");
  }
  for (Rational& v : q.initial_) {
    v.canonicalize();
    require_probability(v, "initial probability");
    den = lcm_of(den, v.get_den());
  }
  if (q.initial_[0] + q.initial_[1] != 1) {
    throw std::invalid_argument("initial distribution must sum to 1");
  }
  q.common_den_ = den;
  return q;
}

MeasureOracle MeasureOracle::markov_stationary(const Rational& p01, const Rational& p10) {
  require_probability(p01, "p01");
  require_probability(p10, "p10");
  const Rational total = p01 + p10;
  std::array<Rational, 2> pi{Rational(1, 2), Rational(1, 2)};
  if (total != 0) {
    pi[0] = p10 / total;
    pi[1] = p01 / total;
  }
  return markov({{{Rational(1) - p01, p01}, {p10, Rational(1) - p10}}}, pi);
}

MeasureOracle MeasureOracle::finite_support(std::vector<Atom> atoms) {
  Rational total;
  for (auto& [w, mass] : atoms) {
    mass.canonicalize();
    if (mass < 0) throw std::invalid_argument("atom masses must be non-negative");
    total += mass;
  }
  if (total != 1) throw std::invalid_argument("atom masses must sum to 1");
  MeasureOracle q;
  q.kind_ = Kind::FiniteSupport;
  q.atoms_ = std::move(atoms);
  return q;
}

MeasureOracle MeasureOracle::parse(std::string_view text) {
  std::string cleaned;
  for (char c : text) cleaned.push_back((c == '[' || c == ']' || c == ',') ? ' ' : c);
  std::istringstream in(cleaned);
  std::vector<std::string> tok;
  for (std::string t; in >> t;) tok.push_back(t);
  if (tok.empty()) throw std::invalid_argument("empty measure specification");
  std::string kind = tok[0];
  std::transform(kind.begin(), kind.end(), kind.begin(), ::tolower);

  if (kind == "uniform") {
    if (tok.size() != 1) throw std::invalid_argument("uniform takes no parameters");
    return uniform();
  }
  if (kind == "bernoulli") {
    if (tok.size() != 2) throw std::invalid_argument("bernoulli takes one parameter");
    return bernoulli(parse_rational(tok[1]));
  }
  if (kind == "markov") {
    if (tok.size() < 2 || tok[1] != "2") {
      throw std::invalid_argument("markov: only 2-state chains are supported");
    }
    if (tok.size() != 6 && tok.size() != 8) {
      throw std::invalid_argument("markov 2 [[a,b],[c,d]] [e,f] expected");
    }
    Matrix t{{{parse_rational(tok[2]), parse_rational(tok[3])},
              {parse_rational(tok[4]), parse_rational(tok[5])}}};
    if (tok.size() == 6) {
      for (const auto& row : t) {
        if (row[0] + row[1] != 1) throw std::invalid_argument("transition rows must sum to 1");
      }
      return markov_stationary(t[0][1], t[1][0]);
    }
    return markov(t, {parse_rational(tok[6]), parse_rational(tok[7])});
  }
  if (kind == "finite") {
    std::vector<Atom> atoms;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      const auto colon = tok[i].find(':');
      if (colon == std::string::npos) throw std::invalid_argument("finite: W:M expected");
      const std::string w = tok[i].substr(0, colon);
      atoms.emplace_back(w == "-" ? Bits() : Bits(w), parse_rational(tok[i].substr(colon + 1)));
    }
    if (atoms.empty()) throw std::invalid_argument("finite: at least one atom expected");
    return finite_support(std::move(atoms));
  }
  throw std::invalid_argument("unknown measure kind '" + tok[0] + "'");
}

std::string MeasureOracle::describe() const {
  switch (kind_) {
    case Kind::Uniform:
      return "uniform";
    case Kind::Bernoulli:
      return "bernoulli " + p_.get_str();
    case Kind::Markov:
      return "markov 2 [[" + transition_[0][0].get_str() + "," + transition_[0][1].get_str() +
             "],[" + transition_[1][0].get_str() + "," + transition_[1][1].get_str() + "]] [" +
             initial_[0].get_str() + "," + initial_[1].get_str() + "]";
    case Kind::FiniteSupport: {
      std::string s = "finite";
      for (const auto& [w, mass] : atoms_) {
        s += " " + (w.empty() ? std::string("-") : w.str()) + ":" + mass.get_str();
      }
      return s;
    }
  }
  return {};
}

Rational MeasureOracle::measure(const Bits& x) const {
  switch (kind_) {
    case Kind::Uniform: {
      mpz_class den(1);
      mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), x.size());
      return Rational(mpz_class(1), den);
    }
    case Kind::Bernoulli: {
      std::size_t ones = 0;
      for (std::size_t i = 0; i < x.size(); ++i) ones += x[i];
      mpq_class out(1);
      const Rational q = Rational(1) - p_;
      for (std::size_t i = 0; i < ones; ++i) out *= p_;
      for (std::size_t i = ones; i < x.size(); ++i) out *= q;
      return out;
    }
    case Kind::Markov: {
      if (x.empty()) return Rational(1);
      Rational out = initial_[x[0]];
      for (std::size_t i = 1; i < x.size(); ++i) out *= transition_[x[i - 1]][x[i]];
      return out;
    }
    case Kind::FiniteSupport: {
      Rational out;
      for (const auto& [w, mass] : atoms_) {
        bool hit = true;
        for (std::size_t i = 0; i < x.size() && hit; ++i) {
          const bool bit = i < w.size() ? w[i] : false;
          hit = x[i] == bit;
        }
        if (hit) out += mass;
      }
      return out;
    }
  }
  return Rational();
}

Dyadic MeasureOracle::approx(const Bits& x, std::uint64_t n) const {
  return Dyadic::ceil_to_grid(measure(x), n);
}

Rational MeasureOracle::cdf_low(const Bits& x) const {
  CdfCursor c(*this);
  for (std::size_t i = 0; i < x.size(); ++i) c.push(x[i]);
  return c.current().lo_value();
}

MeasureOracle::Split MeasureOracle::split(const Bits& x) const {
  switch (kind_) {
    case Kind::Uniform:
      return {1, 1, 2};
    case Kind::Bernoulli:
      return {common_den_ - p_.get_num(), p_.get_num(), common_den_};
    case Kind::Markov: {
      const auto& row = x.empty() ? initial_ : transition_[x[x.size() - 1]];
      const mpz_class n0 = row[0].get_num() * (common_den_ / row[0].get_den());
      return {n0, common_den_ - n0, common_den_};
    }
    case Kind::FiniteSupport: {
      const Rational whole = measure(x);
      if (whole == 0) return {1, 0, 1};
      Bits x0 = x;
      x0.push_back(false);
      const Rational q0 = measure(x0) / whole;
      return {q0.get_num(), q0.get_den() - q0.get_num(), q0.get_den()};
    }
  }
  return {1, 1, 2};
}

// ---------------------------------------------------------------------------

Rational CdfCursor::Interval::lo_value() const {
  Rational q(lo, den);
  q.canonicalize();
  return q;
}

Rational CdfCursor::Interval::width_value() const {
  Rational q(width, den);
  q.canonicalize();
  return q;
}

CdfCursor::CdfCursor(const MeasureOracle& q) : q_(&q), iv_{0, 1, 1} {}

CdfCursor::Interval CdfCursor::child(bool bit) const {
  const MeasureOracle::Split s = q_->split(prefix_);
  Interval out;
  out.den = iv_.den * s.d;
  out.lo = iv_.lo * s.d;
  if (bit) {
    out.lo += iv_.width * s.n0;
    out.width = iv_.width * s.n1;
  } else {
    out.width = iv_.width * s.n0;
  }
  return out;
}

void CdfCursor::push(bool bit) {
  iv_ = child(bit);
  prefix_.push_back(bit);
}

bool input_inside(const Bits& z, const CdfCursor::Interval& iv) {
  mpz_class a;
  if (!z.empty()) a.set_str(z.str(), 2);
  return inside(a, z.size(), iv);
}

// ---------------------------------------------------------------------------

SampleResult sample_fast(const MeasureOracle& q, const Bits& alpha, std::size_t target_len,
                         std::size_t precision_cap) {
  SampleResult r;
  CdfCursor cur(q);
  const std::size_t limit = std::min(alpha.size(), precision_cap);
  mpz_class a;  // consumed input as an integer over 2^consumed
  while (r.output.size() < target_len) {
    bool emitted = false;
    for (bool bit : {false, true}) {
      const CdfCursor::Interval c = cur.child(bit);
      if (c.width > 0 && inside(a, r.consumed, c)) {
        cur.push(bit);
        r.output.push_back(bit);
        emitted = true;
        break;
      }
    }
    if (emitted) continue;
    if (r.consumed >= limit) {
      r.stalled = r.consumed >= precision_cap;
      break;
    }
    a = 2 * a + (alpha[r.consumed] ? 1 : 0);
    ++r.consumed;
  }
  return r;
}

Bits sample_literal(const MeasureOracle& q, const Bits& alpha, std::size_t n) {
  if (alpha.size() < n) throw std::invalid_argument("sample_literal: alpha shorter than n");
  if (n > 16) throw std::invalid_argument("sample_literal: n > 16");
  const std::vector<Bits> zs = strings_of_length(n);
  const std::size_t grid = 2 * n;
  std::vector<mpz_class> approx(zs.size());
  mpz_class total;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    approx[i] = q.approx(zs[i], grid).scaled(grid);
    total += approx[i];
  }
  mpz_class a;
  if (n > 0) a.set_str(alpha.prefix(n).str(), 2);
  const mpz_class a_scaled = shifted(a, n);               // (α)_n on the 2^-2n grid
  const mpz_class one_minus = shifted(mpz_class(1), grid) - shifted(mpz_class(1), n);

  bool any = false;
  Bits lcp;
  mpz_class below;  // Σ_{y<z}
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const mpz_class le = below + approx[i];
    const mpz_class ge = total - below;
    if (le >= a_scaled && a_scaled >= one_minus - ge) {
      lcp = any ? common_prefix(lcp, zs[i]) : zs[i];
      any = true;
    }
    below = le;
  }
  return lcp;
}

// ---------------------------------------------------------------------------

InvertResult invert_interval(const CdfCursor::Interval& iv, std::size_t precision_cap) {
  InvertResult r;
  if (iv.width == 0) {
    r.zero_measure = true;
    return r;
  }
  const std::size_t den_bits = mpz_sizeinbase(iv.den.get_mpz_t(), 2);
  const std::size_t width_bits = mpz_sizeinbase(iv.width.get_mpz_t(), 2);
  // 2^(width_bits-1) <= width < 2^width_bits and likewise for den, so
  // -log2(width/den) lies in (den_bits - width_bits - 1, den_bits - width_bits + 1).
  const std::size_t upper = den_bits + 1 > width_bits ? den_bits + 1 - width_bits : 0;
  const std::size_t lower = den_bits > width_bits + 1 ? den_bits - width_bits - 1 : 0;
  const mpz_class hi = iv.lo + iv.width;

  auto cell_of_lo = [&](std::size_t m) {
    mpz_class c;
    mpz_fdiv_q(c.get_mpz_t(), shifted(iv.lo, m).get_mpz_t(), iv.den.get_mpz_t());
    return c;
  };
  auto covers = [&](std::size_t m) { return (cell_of_lo(m) + 1) * iv.den >= shifted(hi, m); };

  std::size_t lo_m = 0;
  std::size_t hi_m = std::min(upper, precision_cap);
  while (lo_m < hi_m) {
    const std::size_t mid = lo_m + (hi_m - lo_m + 1) / 2;
    if (covers(mid)) {
      lo_m = mid;
    } else {
      hi_m = mid - 1;
    }
  }
  if (lo_m == precision_cap && precision_cap < upper && covers(precision_cap + 1)) r.capped = true;
  r.digits = bits_of(cell_of_lo(lo_m), lo_m);

  for (std::size_t m = lower; m <= precision_cap; ++m) {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), shifted(iv.lo, m).get_mpz_t(), iv.den.get_mpz_t());
    if ((c + 1) * iv.den <= shifted(hi, m)) {
      r.codeword = bits_of(c, m);
      return r;
    }
  }
  r.capped = true;
  return r;
}

InvertResult invert(const MeasureOracle& q, const Bits& omega_prefix, std::size_t precision_cap) {
  CdfCursor c(q);
  for (std::size_t i = 0; i < omega_prefix.size(); ++i) c.push(omega_prefix[i]);
  return invert_interval(c.current(), precision_cap);
}

// ---------------------------------------------------------------------------

Process program_process(const Program& program, Budget budget) {
  return [program, budget](const Bits& z) {
    return run(program, z, Mode::Monotone, budget).output;
  };
}

Process drop_first_bit_process() {
  return [](const Bits& z) { return z.empty() ? Bits() : z.suffix(1); };
}

Dyadic pushforward(const MeasureOracle& p, const Process& f, const Bits& y, std::uint64_t n,
                   std::uint64_t m_cap) {
  const Rational threshold = Rational(1) - Dyadic::inverse_pow2(n + 1).to_rational();
  for (std::uint64_t m = 0; m <= m_cap; ++m) {
    const std::vector<Bits> xs = strings_of_length(m);
    std::vector<Bits> images;
    images.reserve(xs.size());
    Rational long_enough;
    for (const Bits& x : xs) {
      images.push_back(f(x));
      if (images.back().size() > y.size()) long_enough += p.measure(x);
    }
    if (long_enough <= threshold) continue;
    Dyadic sum;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (is_prefix(y, images[i])) sum += p.approx(xs[i], m + n + 1);
    }
    return sum;
  }
  throw RegularityError(m_cap);
}

Rational pushforward_at_depth(const MeasureOracle& p, const Process& f, const Bits& y,
                              std::size_t m) {
  Rational sum;
  for (const Bits& x : strings_of_length(m)) {
    if (is_prefix(y, f(x))) sum += p.measure(x);
  }
  return sum;
}

}  // namespace aitlab
