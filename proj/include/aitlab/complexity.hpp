#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "aitlab/bits.hpp"
#include "aitlab/dyadic.hpp"
#include "aitlab/machine.hpp"

namespace aitlab {

// ---------------------------------------------------------------------------
// Resource-bounded complexities on the reference machine. All values are in
// raw program bits (multiples of 3 for minimal programs).

struct ComplexityRecord {
  Bits x;
  Bits condition;
  Mode mode = Mode::Plain;
  Budget budget{1};
  std::uint64_t value = kInfinite;
  std::optional<Program> witness;

  bool finite() const noexcept { return value != kInfinite; }
};

ComplexityRecord k_plain(const Bits& x, Budget budget);
ComplexityRecord k_cond(const Bits& x, const Bits& y, Budget budget);
ComplexityRecord kr(const Bits& x, Budget budget);

/// Re-runs the witness and checks it reproduces x within the budget with
/// l(witness) == value. Records without a witness must be infinite.
bool replay_matches(const ComplexityRecord& record);

/// Self-delimiting code length of a program of L bits: L + 2ℓ(L) + 2.
std::uint64_t self_delimited_length(std::uint64_t program_bits) noexcept;

/// Discrete semimeasure m_t(x): sum of 2^-sd(p) over halting Plain-mode
/// programs p with output x, l(p) <= max_program_bits, within budget.
/// Computed for every x with l(x) <= max_len at once.
std::map<Bits, Dyadic, ShortlexLess> m_discrete_table(std::size_t max_len, Budget budget,
                                                      std::uint64_t max_program_bits);
Dyadic m_discrete(const Bits& x, Budget budget, std::uint64_t max_program_bits);

/// p_t(x) = -log2 m_t(x); +inf when m_t(x) = 0.
double p_discrete(const Dyadic& m);

// ---------------------------------------------------------------------------
// Finitary functions and volume restrictions.

/// Finite table Bits -> N; every other point has value infinity.
class FinitaryFunction {
 public:
  using Table = std::map<Bits, std::uint64_t, ShortlexLess>;

  FinitaryFunction() = default;
  explicit FinitaryFunction(Table table) : table_(std::move(table)) {}

  std::uint64_t operator()(const Bits& x) const;
  void set(const Bits& x, std::uint64_t value) { table_[x] = value; }
  /// Pointwise min with a single point.
  void lower(const Bits& x, std::uint64_t value);

  const Table& table() const noexcept { return table_; }
  bool empty() const noexcept { return table_.empty(); }
  std::size_t size() const noexcept { return table_.size(); }

  friend bool operator==(const FinitaryFunction&, const FinitaryFunction&) = default;

 private:
  Table table_;
};

enum class Restriction { V1, V2, V3, Kraft };

/// V1: for every a, at most 2^a points with f(x) < a.
/// V2: the same count for each fixed y, keys being pair codes x̄y.
/// V3: for every a, the set {x : f(x) < a} has at most 2^a maximal
///     elements (leaves of its prefix tree).
/// Kraft: sum of 2^-f(x) <= 1.
bool in_restriction(const FinitaryFunction& f, Restriction r);

/// A finite enumeration of points (x, a) above the graph of some function.
using PointStream = std::vector<std::pair<Bits, std::uint64_t>>;

/// Dovetails the streams. Stream i (0-based) releases its next point only
/// if its lower boundary stays inside the restriction; the first refusal
/// freezes the stream. Returns min over i of (lower boundary of stream i)
/// + shift_c * (i + 1). `steps` bounds the number of release attempts.
FinitaryFunction universal_majorant(const std::vector<PointStream>& streams, Restriction r,
                                    std::uint64_t steps, std::uint64_t shift_c);

/// Raised by majorant_to_codes when a level has more points than codes.
class CountingViolation : public std::runtime_error {
 public:
  CountingViolation(std::uint64_t level, std::uint64_t points);
  std::uint64_t level() const noexcept { return level_; }
  std::uint64_t points() const noexcept { return points_; }

 private:
  std::uint64_t level_;
  std::uint64_t points_;
};

struct CodeAssignment {
  /// Shortest code per x; its length is f(x) + 1.
  std::map<Bits, Bits, ShortlexLess> shortest;
  /// Full decoding table (code, x), codes pairwise distinct.
  std::vector<std::pair<Bits, Bits>> table;
};

/// Maps every point (x, n) with f(x) < n <= max f + 1 to a distinct code of
/// length n, lexicographically smallest free code first, x in shortlex order.
/// Throws CountingViolation iff f is not in V1.
CodeAssignment majorant_to_codes(const FinitaryFunction& f);

}  // namespace aitlab
