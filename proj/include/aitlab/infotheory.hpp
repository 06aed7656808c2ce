#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "aitlab/bits.hpp"
#include "aitlab/dyadic.hpp"
#include "aitlab/machine.hpp"
#include "aitlab/measure.hpp"

namespace aitlab {

struct InfoRecord {
  Bits x;
  Bits y;
  Budget budget{1};
  std::uint64_t k_x = 0;
  std::uint64_t k_y = 0;
  std::uint64_t k_pair = 0;  // K(x̄y)
  std::uint64_t k_x_given_y = 0;
  std::uint64_t k_y_given_x = 0;

  /// I(y:x) = K(x) - K(x|y).
  std::int64_t info_y_about_x() const;
  /// I(x:y) = K(y) - K(y|x).
  std::int64_t info_x_about_y() const;
  /// K(x) + K(y) - K(x̄y).
  std::int64_t symmetric_form() const;
};

/// All five budget-bounded complexities of the pair. Throws std::domain_error
/// when any of them is infinite at this budget.
InfoRecord info(const Bits& y, const Bits& x, Budget budget);

struct SymmetryRow {
  InfoRecord record;
  std::uint64_t delta_a = 0;  // |I(x:y) - I(y:x)|
  std::uint64_t delta_b = 0;  // |I(x:y) - (K(x)+K(y)-K(x̄y))|
  std::uint64_t scale = 0;    // 12·ℓ(K(x̄y))
};

struct SymmetryReport {
  std::vector<SymmetryRow> rows;
  /// Smallest c with Δ <= 12·ℓ(K(x̄y)) + c on every row.
  std::int64_t c_a = 0;
  std::int64_t c_b = 0;
  bool diagonal_zero = true;
  bool information_nonnegative = true;
  /// Rows with the largest Δ_a, most lopsided first.
  std::vector<std::size_t> widest_gaps;
};

SymmetryReport symmetry_report(const std::vector<std::pair<Bits, Bits>>& corpus, Budget budget,
                               unsigned threads = 1);

/// All pairs with l(x), l(y) <= full_len, then `random_pairs` pairs with
/// lengths up to random_len drawn from the seed.
std::vector<std::pair<Bits, Bits>> symmetry_corpus(std::size_t full_len, std::size_t random_pairs,
                                                   std::size_t random_len, std::uint64_t seed);

/// Pairs with K(y) <= b and K(x|y) <= c, l(x), l(y) <= max_len; each count
/// is compared with 2^(b+c+2). Returns the first (b, c) that breaks the bound.
struct PairCountResult {
  bool holds = true;
  std::uint64_t worst_b = 0;
  std::uint64_t worst_c = 0;
  std::uint64_t worst_count = 0;
  /// Largest count / 2^(b+c+2) over all (b, c).
  double worst_ratio = 0;
};
PairCountResult pair_counting_check(std::size_t max_len, Budget budget, unsigned threads = 1);

// ---------------------------------------------------------------------------

struct MarkovSourceSpec {
  Rational p01;  // P(next = 1 | last = 0)
  Rational p10;  // P(next = 0 | last = 1)
  /// P(first bit = 1); the stationary law when empty.
  std::optional<Rational> initial_one;
  std::uint64_t seed = 1;

  /// "P01 P10", e.g. "3/10 2/5".
  static MarkovSourceSpec parse(std::string_view text, std::uint64_t seed);
  MeasureOracle oracle() const;
  /// Stationary probability of state 1.
  Rational stationary_one() const;
  /// π0·h(p01) + π1·h(p10) in bits per symbol.
  double entropy_rate() const;
};

/// Seeded trajectory from mt19937_64; each bit compares a 64-bit draw with
/// the exact rational threshold.
Bits markov_generate(const MarkovSourceSpec& spec, std::size_t n);

struct EntropyCheckpoint {
  std::size_t k = 0;
  std::size_t codelength = 0;  // l(invert(P, (ω)_k))
  double neg_log_p = 0;        // -log2 P(Γ(ω)_k)
};

struct EntropyReport {
  double entropy_rate = 0;
  std::vector<EntropyCheckpoint> trace;
  double per_symbol = 0;  // final codelength / n
  /// Coder overhead over -log2 P at n; at most 2 bits by construction.
  double overhead = 0;
  double block_k_per_symbol = 0;
  double block_log_p_per_symbol = 0;
  std::size_t blocks = 0;
  double tolerance = 0;
  bool pass = false;
};

/// Tolerance: 0.02 absolute when H is 0 or 1, 5% of H otherwise.
EntropyReport entropy_experiment(const MarkovSourceSpec& spec, std::size_t n, std::size_t block,
                                 Budget budget, std::size_t checkpoints = 20);

double binary_entropy(double p);

}  // namespace aitlab
