#pragma once

#include <cstdint>
#include <vector>

#include "aitlab/bits.hpp"
#include "aitlab/dyadic.hpp"

namespace aitlab {

/// Half-open interval [lo, hi) with dyadic endpoints.
struct DyadicInterval {
  Dyadic lo;
  Dyadic hi;

  Dyadic length() const { return hi - lo; }
  bool empty() const { return !(lo < hi); }
  bool contains(const DyadicInterval& other) const {
    return other.empty() || (lo <= other.lo && other.hi <= hi);
  }
  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

/// The cylinder of input prefix z as a subinterval of [0, 1).
DyadicInterval cylinder_interval(const Bits& z);

/// Finite union of disjoint half-open dyadic intervals in [0, 1), kept
/// sorted with touching neighbours merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(DyadicInterval iv) { insert(std::move(iv)); }

  /// Union with [lo, hi).
  void insert(DyadicInterval iv);
  void insert(const IntervalSet& other);

  Dyadic measure() const;
  bool empty() const noexcept { return parts_.empty(); }
  const std::vector<DyadicInterval>& parts() const noexcept { return parts_; }

  bool contains(const DyadicInterval& iv) const;
  bool contains(const IntervalSet& other) const;
  bool intersects(const DyadicInterval& iv) const;
  bool intersects(const IntervalSet& other) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<DyadicInterval> parts_;
};

}  // namespace aitlab
