#include "aitlab/semimeasure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "aitlab/bitcodec.hpp"
#include "aitlab/complexity.hpp"
#include "aitlab/parallel.hpp"

namespace aitlab {

TableRejected::TableRejected(TableViolation v)
    : std::runtime_error("table rejected at x='" + v.x.str() + "', t=" + std::to_string(v.t) +
                         ": " + v.rule),
      v_(std::move(v)) {}

// ---------------------------------------------------------------------------

SemimeasureTable::SemimeasureTable(std::size_t max_len, std::size_t stages)
    : max_len_(max_len), stages_(stages) {
  if (max_len > 20) throw std::invalid_argument("SemimeasureTable: max_len > 20");
  values_.resize(((std::size_t{1} << (max_len + 1)) - 1) * (stages + 1));
}

std::size_t SemimeasureTable::slot(const Bits& x, std::size_t t) const {
  if (x.size() > max_len_ || t > stages_) throw std::out_of_range("SemimeasureTable: index");
  return static_cast<std::size_t>(to_index(x)) * (stages_ + 1) + t;
}

const Dyadic& SemimeasureTable::beta(const Bits& x, std::size_t t) const {
  return values_[slot(x, t)];
}

void SemimeasureTable::set(const Bits& x, std::size_t t, Dyadic value) {
  values_[slot(x, t)] = std::move(value);
}

std::optional<TableViolation> SemimeasureTable::first_violation() const {
  for (std::size_t t = 0; t <= stages_; ++t) {
    if (beta(Bits(), t) > Dyadic(1)) return TableViolation{Bits(), t, "root exceeds 1"};
  }
  for (const Bits& x : strings_up_to(max_len_)) {
    for (std::size_t t = 0; t <= stages_; ++t) {
      if (beta(x, t) < Dyadic(0)) return TableViolation{x, t, "negative value"};
      if (t > 0 && beta(x, t) < beta(x, t - 1)) return TableViolation{x, t, "decreases in t"};
      if (x.size() < max_len_) {
        if (beta(x + Bits("0"), t) + beta(x + Bits("1"), t) > beta(x, t)) {
          return TableViolation{x, t, "children exceed parent"};
        }
      }
    }
  }
  return std::nullopt;
}

SemimeasureTable staged_table(const MeasureOracle& p, std::size_t max_len, std::size_t stages) {
  SemimeasureTable table(max_len, stages);
  for (const Bits& x : strings_up_to(max_len)) {
    const Rational m = p.measure(x);
    for (std::size_t t = 0; t <= stages; ++t) table.set(x, t, Dyadic::floor_to_grid(m, t));
  }
  return table;
}

Rational beta_from_process(const Program& f, const MeasureOracle& p, const Bits& x,
                           std::size_t input_len, std::uint64_t steps) {
  if (x.empty()) return Rational(1);
  if (steps == 0) return Rational(0);
  const Budget budget(steps);
  Rational total;
  // Depth-first over input prefixes; an output incompatible with x stays
  // incompatible on every extension.
  std::vector<Bits> stack{Bits()};
  while (!stack.empty()) {
    Bits y = std::move(stack.back());
    stack.pop_back();
    const Bits out = run(f, y, Mode::Monotone, budget).output;
    if (is_prefix(x, out)) {
      total += p.measure(y);
      continue;
    }
    if (!is_prefix(out, x) || y.size() >= input_len) continue;
    stack.push_back(y + Bits("1"));
    stack.push_back(y + Bits("0"));
  }
  return total;
}

Rational beta_from_process(const Program& f, const MeasureOracle& p, const Bits& x, std::size_t t) {
  return beta_from_process(f, p, x, t, t);
}

SemimeasureTable process_table(const Program& f, const MeasureOracle& p, std::size_t max_len,
                               std::size_t stages) {
  SemimeasureTable table(max_len, stages);
  for (const Bits& x : strings_up_to(max_len)) {
    for (std::size_t t = 0; t <= stages; ++t) {
      table.set(x, t, Dyadic::floor_to_grid(beta_from_process(f, p, x, t), t));
    }
  }
  return table;
}

SemimeasureTable normalize(const SemimeasureTable& raw) {
  const std::size_t max_len = raw.max_len();
  const std::size_t stages = raw.stages();
  SemimeasureTable out(max_len, stages);
  const std::vector<Bits> xs = strings_up_to(max_len);
  auto before = [&](const Bits& x, std::size_t t) { return t == 0 ? Dyadic() : out.beta(x, t - 1); };

  for (std::size_t t = 0; t <= stages; ++t) {
    const Dyadic root = raw.beta(Bits(), t);
    if (root > Dyadic(1)) throw TableRejected({Bits(), t, "root exceeds 1"});
    if (root < before(Bits(), t)) throw TableRejected({Bits(), t, "decreases in t"});
    out.set(Bits(), t, root);

    for (const Bits& x : xs) {
      if (x.size() >= max_len) break;
      const Bits c0 = x + Bits("0");
      const Bits c1 = x + Bits("1");
      const Dyadic inc0 = raw.beta(c0, t) - before(c0, t);
      const Dyadic inc1 = raw.beta(c1, t) - before(c1, t);
      if (inc0 < Dyadic(0)) throw TableRejected({c0, t, "decreases in t"});
      if (inc1 < Dyadic(0)) throw TableRejected({c1, t, "decreases in t"});
      const Dyadic avail = out.beta(x, t) - before(c0, t) - before(c1, t);
      const Dyadic want = inc0 + inc1;
      if (want <= avail) {
        out.set(c0, t, before(c0, t) + inc0);
        out.set(c1, t, before(c1, t) + inc1);
        continue;
      }
      const std::uint64_t grid =
          std::max({avail.exponent(), inc0.exponent(), inc1.exponent()}) + 1;
      const Rational ratio = avail.to_rational() / want.to_rational();
      out.set(c0, t, before(c0, t) + Dyadic::floor_to_grid(inc0.to_rational() * ratio, grid));
      out.set(c1, t, before(c1, t) + Dyadic::floor_to_grid(inc1.to_rational() * ratio, grid));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

IntervalSet difference(const IntervalSet& from, const IntervalSet& minus) {
  IntervalSet out;
  for (const DyadicInterval& p : from.parts()) {
    Dyadic cursor = p.lo;
    for (const DyadicInterval& m : minus.parts()) {
      if (m.hi <= cursor || m.lo >= p.hi) continue;
      if (cursor < m.lo) out.insert({cursor, m.lo});
      cursor = std::max(cursor, m.hi);
    }
    if (cursor < p.hi) out.insert({cursor, p.hi});
  }
  return out;
}

}  // namespace

AllocationState::AllocationState(const SemimeasureTable& normalized)
    : table_(normalized),
      regions_(((std::size_t{1} << (normalized.max_len() + 1)) - 1) * (normalized.stages() + 1)) {
  if (auto v = table_.first_violation()) throw TableRejected(*v);
  const std::size_t stages = table_.stages();
  const std::vector<Bits> xs = strings_up_to(table_.max_len());
  const IntervalSet unit(DyadicInterval{Dyadic(0), Dyadic(1)});
  auto at = [&](const Bits& x, std::size_t t) -> IntervalSet& {
    return regions_[static_cast<std::size_t>(to_index(x)) * (stages + 1) + t];
  };

  for (std::size_t t = 0; t <= stages; ++t) {
    for (const Bits& x : xs) {
      IntervalSet region = t == 0 ? IntervalSet() : at(x, t - 1);
      const Dyadic grow = table_.beta(x, t) - region.measure();
      if (grow.is_zero()) {
        at(x, t) = std::move(region);
        continue;
      }
      IntervalSet taken;
      if (x.empty()) {
        taken = region;
      } else {
        const Bits parent = x.prefix(x.size() - 1);
        const Bits sibling = parent + Bits(x[x.size() - 1] ? "0" : "1");
        // The sibling's current region: already updated at stage t if it
        // comes first in shortlex order.
        const bool sibling_done = sibling < x;
        taken = region;
        if (sibling_done) {
          taken.insert(at(sibling, t));
        } else if (t > 0) {
          taken.insert(at(sibling, t - 1));
        }
      }
      const IntervalSet free = difference(x.empty() ? unit : at(x.prefix(x.size() - 1), t), taken);
      Dyadic remaining = grow;
      for (const DyadicInterval& p : free.parts()) {
        if (remaining.is_zero()) break;
        const Dyadic take = std::min(remaining, p.length());
        region.insert({p.lo, p.lo + take});
        remaining -= take;
      }
      if (!remaining.is_zero()) throw TableRejected({x, t, "parent region exhausted"});
      at(x, t) = std::move(region);
    }
  }
}

const IntervalSet& AllocationState::region(const Bits& x, std::size_t t) const {
  if (x.size() > table_.max_len() || t > table_.stages()) {
    throw std::out_of_range("AllocationState: index");
  }
  return regions_[static_cast<std::size_t>(to_index(x)) * (table_.stages() + 1) + t];
}

std::optional<TableViolation> AllocationState::first_violation() const {
  for (const Bits& x : strings_up_to(table_.max_len())) {
    for (std::size_t t = 0; t <= table_.stages(); ++t) {
      const IntervalSet& r = region(x, t);
      if (r.measure() != table_.beta(x, t)) return TableViolation{x, t, "length differs from beta"};
      if (t > 0 && !r.contains(region(x, t - 1))) return TableViolation{x, t, "region shrank"};
      if (!x.empty() && !region(x.prefix(x.size() - 1), t).contains(r)) {
        return TableViolation{x, t, "region leaves its parent"};
      }
      if (x.size() < table_.max_len() &&
          region(x + Bits("0"), t).intersects(region(x + Bits("1"), t))) {
        return TableViolation{x, t, "children overlap"};
      }
    }
  }
  return std::nullopt;
}

Bits AllocationState::transduce(const Bits& z) const {
  const std::size_t t = std::min(z.size(), table_.stages());
  const DyadicInterval j = cylinder_interval(z);
  Bits x;
  if (!region(x, t).contains(j)) return x;
  while (x.size() < table_.max_len()) {
    const Bits c0 = x + Bits("0");
    const Bits c1 = x + Bits("1");
    if (region(c0, t).contains(j)) {
      x = c0;
    } else if (region(c1, t).contains(j)) {
      x = c1;
    } else {
      break;
    }
  }
  return x;
}

Process process_from_beta(const SemimeasureTable& table) {
  auto state = std::make_shared<const AllocationState>(normalize(table));
  return [state](const Bits& z) { return state->transduce(z); };
}

// ---------------------------------------------------------------------------

namespace {

using Count = unsigned __int128;

mpz_class to_mpz(Count c) {
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(c >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(c)));
  mpz_mul_2exp(hi.get_mpz_t(), hi.get_mpz_t(), 64);
  return hi + lo;
}

}  // namespace

Dyadic universal_R(const Bits& x, std::size_t input_cap, Budget budget) {
  const std::size_t n = x.size();
  if (n == 0) return Dyadic(1);
  if (input_cap > 128) throw std::invalid_argument("universal_R: input_cap > 128");
  if (n > budget.max_output) return Dyadic();

  struct Length {
    std::size_t bits;
    std::size_t free_input;
    std::size_t ell;
  };
  std::vector<Length> lengths;
  for (std::size_t len = 0; prefix_length(len) <= input_cap; ++len) {
    const std::uint64_t header = prefix_length(len);
    if (header > budget.max_steps || budget.max_steps - header < n) continue;
    lengths.push_back({len, input_cap - header, ell(len)});
  }
  if (lengths.empty()) return Dyadic();
  const std::size_t max_ops = lengths.back().bits / 3;

  // dbl_ok[o]: doubling an output equal to (x)_o stays a prefix of x or covers it.
  std::vector<char> dbl_ok(n, 0);
  for (std::size_t o = 1; o < n; ++o) {
    bool ok = true;
    for (std::size_t i = o; i < std::min(2 * o, n) && ok; ++i) ok = x[i] == x[i - o];
    dbl_ok[o] = ok;
  }

  // success[(j, k)]: opcode prefixes of length j that first extend x with k
  // input bits pinned.
  std::map<std::pair<std::size_t, std::size_t>, Count> success;
  std::map<std::pair<std::size_t, std::size_t>, Count> layer{{{0, 0}, 1}};
  for (std::size_t j = 0; j < max_ops && !layer.empty(); ++j) {
    std::map<std::pair<std::size_t, std::size_t>, Count> next;
    auto advance = [&](std::size_t o, std::size_t k, Count c) {
      if (o >= n) {
        success[{j + 1, k}] += c;
      } else {
        next[{o, k}] += c;
      }
    };
    for (const auto& [state, c] : layer) {
      const auto [o, k] = state;
      advance(o + 1, k, c);  // the EMIT matching x[o]
      if (o == 0) {
        next[{0, k}] += c;  // DBL of Λ
      } else if (dbl_ok[o]) {
        advance(2 * o, k, c);
      }
      advance(o + 1, k + 1, c);          // READ, pinning one input bit
      success[{j + 1, k + n - o}] += c;  // CPALL, pinning the rest of x
    }
    layer = std::move(next);
  }

  mpz_class numerator;
  for (const auto& [event, c] : success) {
    const auto [j, k] = event;
    const mpz_class count = to_mpz(c);
    for (const Length& l : lengths) {
      if (3 * j > l.bits || k > l.free_input) continue;
      mpz_class term = count;
      mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), input_cap - 3 * j - k - 2 * l.ell - 2);
      numerator += term;
    }
  }
  return Dyadic(numerator, input_cap);
}

Dyadic universal_R_bruteforce(const Bits& x, std::size_t input_cap, Budget budget) {
  if (input_cap > 22) throw std::invalid_argument("universal_R_bruteforce: input_cap > 22");
  mpz_class hits;
  for (const Bits& z : strings_of_length(input_cap)) {
    if (is_prefix(x, universal_process(z, budget).output)) ++hits;
  }
  return Dyadic(hits, input_cap);
}

// ---------------------------------------------------------------------------

namespace {

double neg_log(const Dyadic& r) {
  if (r.is_zero()) return std::numeric_limits<double>::infinity();
  return -log2_of(r);
}

}  // namespace

CodingGapReport coding_gap_report(std::size_t max_len, Budget budget, std::size_t input_cap,
                                  unsigned threads) {
  const std::vector<Bits> xs = strings_up_to(max_len);
  CodingGapReport report;
  report.rows = parallel_map(xs.size(), threads, [&](std::size_t i) {
    CodingGapRow row;
    row.x = xs[i];
    row.kr = kr(row.x, budget).value;
    row.r = universal_R(row.x, input_cap, budget);
    row.neg_log_r = neg_log(row.r);
    if (row.kr != kInfinite) {
      row.first_holds =
          row.r >= Dyadic::inverse_pow2(row.kr + 2 * ell(row.kr) + report.c1);
      row.second_gap = static_cast<double>(row.kr) - row.neg_log_r -
                       2 * std::log2(std::max(1.0, row.neg_log_r));
    } else {
      row.second_gap = std::numeric_limits<double>::infinity();
    }
    return row;
  });
  report.c2 = -std::numeric_limits<double>::infinity();
  for (const CodingGapRow& row : report.rows) {
    report.first_holds = report.first_holds && row.first_holds;
    report.c2 = std::max(report.c2, row.second_gap);
  }
  return report;
}

double prior_offset(const std::vector<PriorRow>& rows, double slope) {
  double c = -std::numeric_limits<double>::infinity();
  for (const PriorRow& r : rows) {
    const double n = static_cast<double>(r.n);
    c = std::max(c, r.neg_log_r - slope * std::log2(n) - 2 * std::log2(std::log2(n + 2)));
  }
  return c;
}

PriorReport prior_0n1_experiment(std::uint64_t n_max, Budget budget, std::size_t input_cap,
                                 unsigned threads) {
  if (n_max == 0 || n_max > 256) throw std::invalid_argument("prior_0n1: n_max must be in 1..256");
  PriorReport report;
  report.rows = parallel_map(static_cast<std::size_t>(n_max), threads, [&](std::size_t i) {
    PriorRow row;
    row.n = i + 1;
    const Bits x = Bits::repeat(false, row.n) + Bits("1");
    row.kr = kr(x, budget).value;
    row.neg_log_r = neg_log(universal_R(x, input_cap, budget));
    return row;
  });
  report.offset_at_7 = prior_offset(report.rows, 7.0);
  report.slope = 16.0;
  report.offset = prior_offset(report.rows, report.slope);
  for (int eighths = 0; eighths <= 128; ++eighths) {
    const double s = eighths / 8.0;
    const double c = prior_offset(report.rows, s);
    if (c <= report.offset_limit) {
      report.slope = s;
      report.offset = c;
      break;
    }
  }
  return report;
}

}  // namespace aitlab
