#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aitlab/bits.hpp"
#include "aitlab/dyadic.hpp"
#include "aitlab/interval_set.hpp"
#include "aitlab/machine.hpp"
#include "aitlab/measure.hpp"

namespace aitlab {

struct TableViolation {
  Bits x;
  std::size_t t = 0;
  std::string rule;
};

class TableRejected : public std::runtime_error {
 public:
  explicit TableRejected(TableViolation v);
  const TableViolation& violation() const noexcept { return v_; }

 private:
  TableViolation v_;
};

/// Stage function β(x, t) for l(x) <= max_len and 0 <= t <= stages.
class SemimeasureTable {
 public:
  SemimeasureTable(std::size_t max_len, std::size_t stages);

  std::size_t max_len() const noexcept { return max_len_; }
  std::size_t stages() const noexcept { return stages_; }

  const Dyadic& beta(const Bits& x, std::size_t t) const;
  void set(const Bits& x, std::size_t t, Dyadic value);

  /// First break of: monotone in t, β(x0,t) + β(x1,t) <= β(x,t), β(Λ,t) <= 1.
  std::optional<TableViolation> first_violation() const;

 private:
  std::size_t slot(const Bits& x, std::size_t t) const;

  std::size_t max_len_;
  std::size_t stages_;
  std::vector<Dyadic> values_;
};

/// β(x, t) = floor(P(Γx)·2^t) / 2^t.
SemimeasureTable staged_table(const MeasureOracle& p, std::size_t max_len, std::size_t stages);

/// P-measure of the union of Γy over inputs y with l(y) <= input_len and
/// x ⊂ F(y), where F runs the program in Monotone mode for `steps` steps.
Rational beta_from_process(const Program& f, const MeasureOracle& p, const Bits& x,
                           std::size_t input_len, std::uint64_t steps);
/// The stage-t value: input_len = steps = t.
Rational beta_from_process(const Program& f, const MeasureOracle& p, const Bits& x, std::size_t t);

/// β(x, t) = beta_from_process(f, p, x, t) rounded down onto the 2^-t grid.
SemimeasureTable process_table(const Program& f, const MeasureOracle& p, std::size_t max_len,
                               std::size_t stages);

/// Delays growth so that every stage is a semimeasure: children's increments
/// are scaled down proportionally when they exceed what the parent has left,
/// then rounded down onto a dyadic grid. Throws TableRejected on a decrease
/// in t (negative increment) or a root above 1.
SemimeasureTable normalize(const SemimeasureTable& raw);

/// Interval allocation I(x, t) for a normalized table. New mass for x at
/// stage t is taken from the leftmost free part of I(parent, t).
class AllocationState {
 public:
  explicit AllocationState(const SemimeasureTable& normalized);

  const SemimeasureTable& table() const noexcept { return table_; }
  const IntervalSet& region(const Bits& x, std::size_t t) const;

  /// Exact check of every allocation invariant; the first break is returned.
  std::optional<TableViolation> first_violation() const;

  /// Longest x with the cylinder of z inside I(x, min(l(z), stages)).
  Bits transduce(const Bits& z) const;

 private:
  SemimeasureTable table_;
  std::vector<IntervalSet> regions_;
};

/// Normalizes, allocates and returns the transducer as a monotone process.
Process process_from_beta(const SemimeasureTable& table);

// ---------------------------------------------------------------------------
// The universal semimeasure.

/// Uniform measure of the inputs z with l(z) = input_cap whose output under
/// universal_process (within budget) extends x. Equals Σ 2^-l(z) over the
/// prefix-minimal such z. Exact dynamic program over opcode sequences.
Dyadic universal_R(const Bits& x, std::size_t input_cap, Budget budget);

/// The same value by running universal_process on every z in {0,1}^cap.
/// Requires input_cap <= 22.
Dyadic universal_R_bruteforce(const Bits& x, std::size_t input_cap, Budget budget);

struct CodingGapRow {
  Bits x;
  std::uint64_t kr = 0;
  Dyadic r;
  double neg_log_r = 0;
  /// KR - (-log R) - 2 log2(max(1, -log R)).
  double second_gap = 0;
  /// R >= 2^-(KR + 2ℓ(KR) + c1), checked exactly.
  bool first_holds = false;
};

struct CodingGapReport {
  std::uint64_t c1 = 2;
  bool first_holds = true;
  double c2 = 0;
  std::vector<CodingGapRow> rows;
};

CodingGapReport coding_gap_report(std::size_t max_len, Budget budget, std::size_t input_cap,
                                  unsigned threads = 1);

struct PriorRow {
  std::uint64_t n = 0;
  std::uint64_t kr = 0;
  double neg_log_r = 0;
};

struct PriorReport {
  std::vector<PriorRow> rows;
  /// Smallest slope on a 1/8 grid whose fitted offset is <= offset_limit.
  double slope = 0;
  double offset = 0;
  double offset_limit = 12;
  /// Offset fitted at the machine slope 7.
  double offset_at_7 = 0;
};

/// Offset c(s) = max over rows of -log R - s·log2 n - 2 log2 log2(n + 2).
double prior_offset(const std::vector<PriorRow>& rows, double slope);

PriorReport prior_0n1_experiment(std::uint64_t n_max, Budget budget, std::size_t input_cap,
                                 unsigned threads = 1);

}  // namespace aitlab
