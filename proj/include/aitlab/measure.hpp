#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aitlab/bits.hpp"
#include "aitlab/dyadic.hpp"
#include "aitlab/machine.hpp"

namespace aitlab {

/// Parses "3/10", "1", "0.25". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// A computable measure on infinite binary sequences with exact rational
/// parameters. P(Γx) is available exactly; approx() rounds it up onto the
/// 2^-n grid.
class MeasureOracle {
 public:
  enum class Kind { Uniform, Bernoulli, Markov, FiniteSupport };
  using Matrix = std::array<std::array<Rational, 2>, 2>;
  using Atom = std::pair<Bits, Rational>;

  static MeasureOracle uniform();
  /// i.i.d. bits with P(1) = p.
  static MeasureOracle bernoulli(const Rational& p);
  /// Two-state chain on the bit values: transition[a][b] = P(next = b | last = a),
  /// initial[b] = P(first bit = b).
  static MeasureOracle markov(const Matrix& transition, const std::array<Rational, 2>& initial);
  /// Chain with P(0→1) = p01, P(1→0) = p10 started in its stationary law.
  static MeasureOracle markov_stationary(const Rational& p01, const Rational& p10);
  /// Point masses on the sequences w·000…; masses must sum to 1.
  static MeasureOracle finite_support(std::vector<Atom> atoms);

  /// Text grammar:
  ///   uniform
  ///   bernoulli P
  ///   markov 2 [[P00,P01],[P10,P11]] [I0,I1]
  ///   finite W:M W:M ...        (W may be "-" for the empty word)
  static MeasureOracle parse(std::string_view text);
  std::string describe() const;

  Kind kind() const noexcept { return kind_; }

  /// Exact P(Γx).
  Rational measure(const Bits& x) const;
  /// Smallest multiple of 2^-n that is >= P(Γx).
  Dyadic approx(const Bits& x, std::uint64_t n) const;
  /// Σ P(Γy) over y of length l(x) that precede x lexicographically.
  Rational cdf_low(const Bits& x) const;

  /// Conditional split after prefix x: P(Γx0) : P(Γx1) = n0 : n1 over
  /// denominator d, where n0 + n1 = d whenever P(Γx) > 0.
  struct Split {
    mpz_class n0;
    mpz_class n1;
    mpz_class d;
  };
  Split split(const Bits& x) const;

 private:
  Kind kind_ = Kind::Uniform;
  Rational p_{1, 2};
  Matrix transition_{};
  std::array<Rational, 2> initial_{};
  mpz_class common_den_{2};
  std::vector<Atom> atoms_;
};

/// Exact interval [L/D, (L+W)/D) of the cylinder of a growing prefix, all
/// integers. Extending by one bit costs one small multiplication per field.
class CdfCursor {
 public:
  struct Interval {
    mpz_class lo;
    mpz_class width;
    mpz_class den;
    Rational lo_value() const;
    Rational width_value() const;
  };

  explicit CdfCursor(const MeasureOracle& q);

  const Bits& prefix() const noexcept { return prefix_; }
  const Interval& current() const noexcept { return iv_; }
  Interval child(bool bit) const;
  void push(bool bit);

 private:
  const MeasureOracle* q_;
  Bits prefix_;
  Interval iv_;
};

/// Whether the cylinder of input prefix z (as a subinterval of [0,1)) lies
/// inside the half-open interval.
bool input_inside(const Bits& z, const CdfCursor::Interval& iv);

struct SampleResult {
  Bits output;
  std::size_t consumed = 0;
  /// More input was needed but precision_cap input bits had been read.
  bool stalled = false;
};

/// Interval-refinement sampler. Emits the next output bit as soon as the
/// cylinder of the consumed input lies inside that child's CDF interval;
/// otherwise reads one more input bit. Stops at target_len output bits, at
/// the end of alpha, or after precision_cap input bits (stall).
SampleResult sample_fast(const MeasureOracle& q, const Bits& alpha, std::size_t target_len,
                         std::size_t precision_cap);

/// The textbook construction: with a = 0.α1…αn and A(y) = approx(q, y, 2n),
/// the longest common prefix of all z in {0,1}^n with
///   Σ_{y<=z} A(y) >= a >= 1 - 2^-n - Σ_{y>=z} A(y).
/// Requires l(alpha) >= n, n <= 16.
Bits sample_literal(const MeasureOracle& q, const Bits& alpha, std::size_t n);

struct InvertResult {
  /// Longest b whose cylinder contains the whole CDF interval of the prefix.
  Bits digits;
  /// Shortest b whose cylinder lies inside the CDF interval (arithmetic code).
  Bits codeword;
  bool zero_measure = false;
  /// Either result was cut at precision_cap.
  bool capped = false;
};

InvertResult invert(const MeasureOracle& q, const Bits& omega_prefix, std::size_t precision_cap);
InvertResult invert_interval(const CdfCursor::Interval& iv, std::size_t precision_cap);

/// A monotone map on finite input prefixes.
using Process = std::function<Bits(const Bits&)>;

/// Runs the program in Monotone mode on the input prefix.
Process program_process(const Program& program, Budget budget);
/// ω ↦ ω with its first bit removed.
Process drop_first_bit_process();

class RegularityError : public std::runtime_error {
 public:
  explicit RegularityError(std::uint64_t m_cap)
      : std::runtime_error("regularity not established up to input length " +
                           std::to_string(m_cap)) {}
};

/// Upper 2^-n approximation of P{ω : y ⊂ F(ω)} by the depth-scan of the
/// regular-process argument. Throws RegularityError when no depth m <= m_cap
/// has P{l(F((ω)_m)) > l(y)} > 1 - 2^-(n+1).
Dyadic pushforward(const MeasureOracle& p, const Process& f, const Bits& y, std::uint64_t n,
                   std::uint64_t m_cap);

/// Σ P(Γx) over x in {0,1}^m with y ⊂ F(x), exactly.
Rational pushforward_at_depth(const MeasureOracle& p, const Process& f, const Bits& y,
                              std::size_t m);

}  // namespace aitlab
