#pragma once

#include <cstddef>
#include <cstdint>

#include "aitlab/bits.hpp"

namespace aitlab {

// String/number bijection: Λ↔0, 0↔1, 1↔2, 00↔3, ...
// from_num(n) is the binary expansion of n+1 with its leading 1 removed.
Bits from_num(const BigNat& n);
Bits from_num(std::uint64_t n);
BigNat to_num(const Bits& x);
/// Requires l(x) <= 63.
std::uint64_t to_index(const Bits& x);

/// ℓ(n) = l(from_num(n)) = floor(log2(n + 1)).
std::size_t ell(std::uint64_t n) noexcept;

/// x̄ = x1 x1 x2 x2 ... xn xn 0 1, so l(x̄) = 2 l(x) + 2.
Bits self_delim(const Bits& x);

Bits pair_encode(const Bits& x, const Bits& y);

struct PairParts {
  Bits first;
  Bits second;
  /// False when z is not of the form x̄y; both parts are Λ then.
  bool well_formed = false;
};

/// π1/π2. Malformed input yields (Λ, Λ).
PairParts pair_decode(const Bits& z);

/// Incremental scan of a self-delimiting prefix x̄ at the head of a stream.
struct DelimScan {
  enum class Status { Complete, Incomplete, Malformed };
  Status status = Status::Incomplete;
  Bits value;             // x, when Complete
  std::size_t consumed = 0;  // l(x̄), when Complete
};

DelimScan scan_self_delim(const Bits& z);

}  // namespace aitlab
