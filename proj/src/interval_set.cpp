#include "aitlab/interval_set.hpp"

#include <algorithm>

#include "aitlab/bits.hpp"

namespace aitlab {

DyadicInterval cylinder_interval(const Bits& z) {
  mpz_class a;
  if (!z.empty()) a.set_str(z.str(), 2);
  return {Dyadic(a, z.size()), Dyadic(a + 1, z.size())};
}

void IntervalSet::insert(DyadicInterval iv) {
  if (iv.empty()) return;
  std::vector<DyadicInterval> out;
  out.reserve(parts_.size() + 1);
  bool placed = false;
  for (DyadicInterval& p : parts_) {
    if (p.hi < iv.lo) {
      out.push_back(std::move(p));
    } else if (iv.hi < p.lo) {
      if (!placed) {
        out.push_back(iv);
        placed = true;
      }
      out.push_back(std::move(p));
    } else {
      iv.lo = std::min(iv.lo, p.lo);
      iv.hi = std::max(iv.hi, p.hi);
    }
  }
  if (!placed) out.push_back(std::move(iv));
  parts_ = std::move(out);
}

void IntervalSet::insert(const IntervalSet& other) {
  for (const DyadicInterval& iv : other.parts_) insert(iv);
}

Dyadic IntervalSet::measure() const {
  Dyadic total;
  for (const DyadicInterval& p : parts_) total += p.length();
  return total;
}

bool IntervalSet::contains(const DyadicInterval& iv) const {
  if (iv.empty()) return true;
  return std::any_of(parts_.begin(), parts_.end(),
                     [&](const DyadicInterval& p) { return p.contains(iv); });
}

bool IntervalSet::contains(const IntervalSet& other) const {
  return std::all_of(other.parts_.begin(), other.parts_.end(),
                     [&](const DyadicInterval& iv) { return contains(iv); });
}

bool IntervalSet::intersects(const DyadicInterval& iv) const {
  if (iv.empty()) return false;
  return std::any_of(parts_.begin(), parts_.end(), [&](const DyadicInterval& p) {
    return p.lo < iv.hi && iv.lo < p.hi;
  });
}

bool IntervalSet::intersects(const IntervalSet& other) const {
  return std::any_of(other.parts_.begin(), other.parts_.end(),
                     [&](const DyadicInterval& iv) { return intersects(iv); });
}

}  // namespace aitlab
