#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace aitlab {

using BigNat = mpz_class;

/// Finite binary string. Rendered as ASCII '0'/'1', the empty string is Λ.
///
/// Digits are stored most-significant-first, the order used by the
/// string/number table, so `operator<=>` is plain lexicographic order.
/// Use `shortlex_less` for the numeric order of `to_num`.
class Bits {
 public:
  Bits() = default;

  /// Throws std::invalid_argument on any character other than '0'/'1'.
  explicit Bits(std::string_view text);

  static Bits repeat(bool bit, std::size_t count);

  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }
  bool operator[](std::size_t i) const noexcept { return digits_[i] == '1'; }

  void push_back(bool bit) { digits_.push_back(bit ? '1' : '0'); }
  void append(const Bits& other) { digits_ += other.digits_; }
  void truncate(std::size_t n) {
    if (n < digits_.size()) digits_.resize(n);
  }
  void reserve(std::size_t n) { digits_.reserve(n); }

  /// First n digits, (x)_n. Shorter strings are returned whole.
  Bits prefix(std::size_t n) const;
  /// Digits from position `from` to the end.
  Bits suffix(std::size_t from) const;

  const std::string& str() const noexcept { return digits_; }

  friend Bits operator+(Bits lhs, const Bits& rhs) {
    lhs.append(rhs);
    return lhs;
  }
  friend bool operator==(const Bits&, const Bits&) = default;
  friend auto operator<=>(const Bits&, const Bits&) = default;

 private:
  std::string digits_;
};

/// Order of the string/number bijection: shorter first, then lexicographic.
bool shortlex_less(const Bits& a, const Bits& b) noexcept;

/// x ⊂ y: x is a prefix of y (reflexive).
bool is_prefix(const Bits& x, const Bits& y) noexcept;

/// Longest common prefix.
Bits common_prefix(const Bits& a, const Bits& b);

/// All strings of exactly `length` digits, in lexicographic order.
std::vector<Bits> strings_of_length(std::size_t length);

/// All strings with l(x) <= max_len in shortlex (numeric) order.
std::vector<Bits> strings_up_to(std::size_t max_len);

}  // namespace aitlab

template <>
struct std::hash<aitlab::Bits> {
  std::size_t operator()(const aitlab::Bits& b) const noexcept {
    return std::hash<std::string>{}(b.str());
  }
};
