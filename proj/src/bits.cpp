#include "aitlab/bits.hpp"

#include <algorithm>
#include <stdexcept>

namespace aitlab {

Bits::Bits(std::string_view text) : digits_(text) {
  for (char c : digits_) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("Bits: expected only '0'/'1', got '" +
                                  std::string(text) + "'");
    }
  }
}

Bits Bits::repeat(bool bit, std::size_t count) {
  Bits out;
  out.digits_.assign(count, bit ? '1' : '0');
  return out;
}

Bits Bits::prefix(std::size_t n) const {
  Bits out;
  out.digits_ = digits_.substr(0, std::min(n, digits_.size()));
  return out;
}

Bits Bits::suffix(std::size_t from) const {
  Bits out;
  if (from < digits_.size()) out.digits_ = digits_.substr(from);
  return out;
}

bool shortlex_less(const Bits& a, const Bits& b) noexcept {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.str() < b.str();
}

bool is_prefix(const Bits& x, const Bits& y) noexcept {
  return x.size() <= y.size() &&
         std::equal(x.str().begin(), x.str().end(), y.str().begin());
}

Bits common_prefix(const Bits& a, const Bits& b) {
  std::size_t n = 0;
  const std::size_t m = std::min(a.size(), b.size());
  while (n < m && a[n] == b[n]) ++n;
  return a.prefix(n);
}

std::vector<Bits> strings_of_length(std::size_t length) {
  std::vector<Bits> out;
  out.reserve(std::size_t{1} << length);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << length); ++v) {
    Bits b;
    b.reserve(length);
    for (std::size_t i = length; i-- > 0;) b.push_back((v >> i) & 1U);
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<Bits> strings_up_to(std::size_t max_len) {
  std::vector<Bits> out;
  for (std::size_t len = 0; len <= max_len; ++len) {
    auto level = strings_of_length(len);
    out.insert(out.end(), std::make_move_iterator(level.begin()),
               std::make_move_iterator(level.end()));
  }
  return out;
}

}  // namespace aitlab
