#include "aitlab/bitcodec.hpp"

#include <bit>
#include <stdexcept>

namespace aitlab {

Bits from_num(const BigNat& n) {
  if (n < 0) throw std::invalid_argument("from_num: negative argument");
  const BigNat m = n + 1;
  const std::string bin = m.get_str(2);
  return Bits(std::string_view(bin).substr(1));
}

Bits from_num(std::uint64_t n) {
  if (n == UINT64_MAX) return from_num(BigNat(static_cast<unsigned long>(n)));
  const std::uint64_t m = n + 1;
  const int width = std::bit_width(m);
  Bits out;
  out.reserve(static_cast<std::size_t>(width));
  for (int i = width - 2; i >= 0; --i) out.push_back((m >> i) & 1U);
  return out;
}

BigNat to_num(const Bits& x) {
  BigNat m(std::string("1") + x.str(), 2);
  return m - 1;
}

std::uint64_t to_index(const Bits& x) {
  if (x.size() > 63) throw std::out_of_range("to_index: string longer than 63 bits");
  std::uint64_t m = 1;
  for (std::size_t i = 0; i < x.size(); ++i) m = (m << 1) | (x[i] ? 1U : 0U);
  return m - 1;
}

std::size_t ell(std::uint64_t n) noexcept {
  if (n == UINT64_MAX) return 64;
  return static_cast<std::size_t>(std::bit_width(n + 1) - 1);
}

Bits self_delim(const Bits& x) {
  Bits out;
  out.reserve(2 * x.size() + 2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.push_back(x[i]);
    out.push_back(x[i]);
  }
  out.push_back(false);
  out.push_back(true);
  return out;
}

Bits pair_encode(const Bits& x, const Bits& y) { return self_delim(x) + y; }

DelimScan scan_self_delim(const Bits& z) {
  DelimScan scan;
  std::size_t i = 0;
  while (i + 1 < z.size()) {
    const bool a = z[i];
    const bool b = z[i + 1];
    if (a == b) {
      scan.value.push_back(a);
    } else if (!a && b) {
      scan.status = DelimScan::Status::Complete;
      scan.consumed = i + 2;
      return scan;
    } else {
      scan.status = DelimScan::Status::Malformed;
      scan.value = Bits();
      return scan;
    }
    i += 2;
  }
  scan.status = DelimScan::Status::Incomplete;
  scan.value = Bits();
  return scan;
}

PairParts pair_decode(const Bits& z) {
  const DelimScan scan = scan_self_delim(z);
  if (scan.status != DelimScan::Status::Complete) return {};
  return {scan.value, z.suffix(scan.consumed), true};
}

}  // namespace aitlab
