#include "aitlab/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "aitlab/bitcodec.hpp"
#include "aitlab/complexity.hpp"
#include "aitlab/parallel.hpp"

namespace aitlab {

namespace {

std::uint64_t finite_or_throw(std::uint64_t v, const char* what) {
  if (v == kInfinite) throw std::domain_error(std::string(what) + " is infinite at this budget");
  return v;
}

std::int64_t as_signed(std::uint64_t v) { return static_cast<std::int64_t>(v); }

std::uint64_t abs_diff(std::int64_t a, std::int64_t b) {
  return static_cast<std::uint64_t>(a > b ? a - b : b - a);
}

}  // namespace

std::int64_t InfoRecord::info_y_about_x() const { return as_signed(k_x) - as_signed(k_x_given_y); }
std::int64_t InfoRecord::info_x_about_y() const { return as_signed(k_y) - as_signed(k_y_given_x); }
std::int64_t InfoRecord::symmetric_form() const {
  return as_signed(k_x) + as_signed(k_y) - as_signed(k_pair);
}

InfoRecord info(const Bits& y, const Bits& x, Budget budget) {
  InfoRecord r;
  r.x = x;
  r.y = y;
  r.budget = budget;
  r.k_x = finite_or_throw(k_plain(x, budget).value, "K(x)");
  r.k_y = finite_or_throw(k_plain(y, budget).value, "K(y)");
  r.k_pair = finite_or_throw(k_plain(pair_encode(x, y), budget).value, "K(pair)");
  r.k_x_given_y = finite_or_throw(k_cond(x, y, budget).value, "K(x|y)");
  r.k_y_given_x = finite_or_throw(k_cond(y, x, budget).value, "K(y|x)");
  return r;
}

SymmetryReport symmetry_report(const std::vector<std::pair<Bits, Bits>>& corpus, Budget budget,
                               unsigned threads) {
  SymmetryReport rep;
  rep.rows = parallel_map(corpus.size(), threads, [&](std::size_t i) {
    SymmetryRow row;
    row.record = info(corpus[i].second, corpus[i].first, budget);
    const std::int64_t ixy = row.record.info_x_about_y();
    row.delta_a = abs_diff(ixy, row.record.info_y_about_x());
    row.delta_b = abs_diff(ixy, row.record.symmetric_form());
    row.scale = 12 * ell(row.record.k_pair);
    return row;
  });
  rep.c_a = std::numeric_limits<std::int64_t>::min();
  rep.c_b = std::numeric_limits<std::int64_t>::min();
  for (const SymmetryRow& row : rep.rows) {
    rep.c_a = std::max(rep.c_a, as_signed(row.delta_a) - as_signed(row.scale));
    rep.c_b = std::max(rep.c_b, as_signed(row.delta_b) - as_signed(row.scale));
    if (row.record.x == row.record.y && row.delta_a != 0) rep.diagonal_zero = false;
    if (row.record.info_x_about_y() < 0 || row.record.info_y_about_x() < 0) {
      rep.information_nonnegative = false;
    }
  }
  std::vector<std::size_t> order(rep.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rep.rows[a].delta_a > rep.rows[b].delta_a;
  });
  order.resize(std::min<std::size_t>(order.size(), 5));
  rep.widest_gaps = std::move(order);
  return rep;
}

std::vector<std::pair<Bits, Bits>> symmetry_corpus(std::size_t full_len, std::size_t random_pairs,
                                                   std::size_t random_len, std::uint64_t seed) {
  std::vector<std::pair<Bits, Bits>> corpus;
  const std::vector<Bits> all = strings_up_to(full_len);
  for (const Bits& x : all) {
    for (const Bits& y : all) corpus.emplace_back(x, y);
  }
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    Bits b;
    const std::size_t len = static_cast<std::size_t>(rng() % (random_len + 1));
    for (std::size_t i = 0; i < len; ++i) b.push_back(rng() & 1U);
    return b;
  };
  for (std::size_t i = 0; i < random_pairs; ++i) {
    Bits x = draw();
    Bits y = draw();
    corpus.emplace_back(std::move(x), std::move(y));
  }
  return corpus;
}

PairCountResult pair_counting_check(std::size_t max_len, Budget budget, unsigned threads) {
  const std::vector<Bits> ys = strings_up_to(max_len);
  const ProgramTable plain = min_program_table(Mode::Plain, Bits(), max_len, budget);
  // hist[b][c]: pairs with K(y) = b and K(x|y) = c (exact values).
  using Hist = std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t>;
  const std::vector<Hist> parts = parallel_map(ys.size(), threads, [&](std::size_t i) {
    Hist h;
    const std::uint64_t ky = plain.at(ys[i]).length;
    if (ky == kInfinite) return h;
    const Mode mode = ys[i].empty() ? Mode::Plain : Mode::Conditional;
    for (const auto& [x, e] : min_program_table(mode, ys[i], max_len, budget)) {
      if (e.length != kInfinite) ++h[{ky, e.length}];
    }
    return h;
  });
  Hist hist;
  std::uint64_t top = 0;
  for (const Hist& h : parts) {
    for (const auto& [key, count] : h) {
      hist[key] += count;
      top = std::max({top, key.first, key.second});
    }
  }
  PairCountResult res;
  for (std::uint64_t b = 0; b <= top; ++b) {
    for (std::uint64_t c = 0; c <= top; ++c) {
      std::uint64_t count = 0;
      for (const auto& [key, n] : hist) {
        if (key.first <= b && key.second <= c) count += n;
      }
      if (count == 0) continue;
      const double ratio = std::ldexp(static_cast<double>(count), -static_cast<int>(b + c + 2));
      if (ratio > res.worst_ratio) {
        res.worst_ratio = ratio;
        res.worst_b = b;
        res.worst_c = c;
        res.worst_count = count;
      }
      if (b + c + 2 < 64 && count > (std::uint64_t{1} << (b + c + 2))) res.holds = false;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------

MarkovSourceSpec MarkovSourceSpec::parse(std::string_view text, std::uint64_t seed) {
  std::istringstream in{std::string(text)};
  std::string a;
  std::string b;
  std::string extra;
  if (!(in >> a >> b) || (in >> extra)) {
    throw std::invalid_argument("markov source: expected \"P01 P10\"");
  }
  MarkovSourceSpec spec;
  spec.p01 = parse_rational(a);
  spec.p10 = parse_rational(b);
  spec.seed = seed;
  (void)spec.oracle();  // validates the parameters
  return spec;
}

Rational MarkovSourceSpec::stationary_one() const {
  const Rational total = p01 + p10;
  if (total == 0) return Rational(1, 2);
  return p01 / total;
}

MeasureOracle MarkovSourceSpec::oracle() const {
  if (!initial_one) return MeasureOracle::markov_stationary(p01, p10);
  return MeasureOracle::markov({{{Rational(1) - p01, p01}, {p10, Rational(1) - p10}}},
                               {Rational(1) - *initial_one, *initial_one});
}

double binary_entropy(double p) {
  if (p <= 0 || p >= 1) return 0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

double MarkovSourceSpec::entropy_rate() const {
  const double pi1 = stationary_one().get_d();
  return (1 - pi1) * binary_entropy(p01.get_d()) + pi1 * binary_entropy(p10.get_d());
}

Bits markov_generate(const MarkovSourceSpec& spec, std::size_t n) {
  std::mt19937_64 rng(spec.seed);
  const Rational first_one = spec.initial_one ? *spec.initial_one : spec.stationary_one();
  auto draw_one = [&](const Rational& prob_one) {
    // u < prob·2^64 with u uniform on [0, 2^64).
    mpz_class u(static_cast<unsigned long>(rng()));
    mpz_class lhs = u * prob_one.get_den();
    mpz_class rhs = prob_one.get_num();
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), 64);
    return lhs < rhs;
  };
  Bits out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      out.push_back(draw_one(first_one));
    } else {
      const bool last = out[i - 1];
      out.push_back(draw_one(last ? Rational(1) - spec.p10 : spec.p01));
    }
  }
  return out;
}

EntropyReport entropy_experiment(const MarkovSourceSpec& spec, std::size_t n, std::size_t block,
                                 Budget budget, std::size_t checkpoints) {
  if (n == 0) throw std::invalid_argument("entropy: n must be positive");
  if (block == 0 || block > 12) throw std::invalid_argument("entropy: block must be in 1..12");
  EntropyReport rep;
  rep.entropy_rate = spec.entropy_rate();
  const MeasureOracle oracle = spec.oracle();
  const Bits omega = markov_generate(spec, n);

  const std::size_t every = std::max<std::size_t>(1, n / std::max<std::size_t>(1, checkpoints));
  CdfCursor cursor(oracle);
  for (std::size_t k = 1; k <= n; ++k) {
    cursor.push(omega[k - 1]);
    if (k % every != 0 && k != n) continue;
    const InvertResult inv = invert_interval(cursor.current(), k + 64);
    EntropyCheckpoint cp;
    cp.k = k;
    cp.codelength = inv.codeword.size();
    cp.neg_log_p = -log2_of(cursor.current().width_value());
    rep.trace.push_back(cp);
  }
  const EntropyCheckpoint& last = rep.trace.back();
  rep.per_symbol = static_cast<double>(last.codelength) / static_cast<double>(n);
  rep.overhead = static_cast<double>(last.codelength) - last.neg_log_p;

  const ProgramTable table = min_program_table(Mode::Plain, Bits(), block, budget);
  double k_sum = 0;
  double logp_sum = 0;
  for (std::size_t start = 0; start + block <= n; start += block) {
    const Bits b = omega.prefix(start + block).suffix(start);
    const std::uint64_t k = table.at(b).length;
    if (k == kInfinite) throw std::domain_error("entropy: block complexity infinite at budget");
    k_sum += static_cast<double>(k);
    logp_sum += -log2_of(oracle.measure(b));
    ++rep.blocks;
  }
  if (rep.blocks > 0) {
    const double symbols = static_cast<double>(rep.blocks * block);
    rep.block_k_per_symbol = k_sum / symbols;
    rep.block_log_p_per_symbol = logp_sum / symbols;
  }

  const bool extreme = rep.entropy_rate < 1e-12 || std::abs(rep.entropy_rate - 1) < 1e-12;
  rep.tolerance = extreme ? 0.02 : 0.05 * rep.entropy_rate;
  rep.pass = std::abs(rep.per_symbol - rep.entropy_rate) <= rep.tolerance;
  return rep;
}

}  // namespace aitlab
