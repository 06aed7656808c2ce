#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace aitlab {

using Rational = mpq_class;

/// Exact k / 2^m, kept canonical (numerator odd, or zero with m = 0).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(mpz_class numerator, std::uint64_t exponent);
  explicit Dyadic(long value) : Dyadic(mpz_class(value), 0) {}

  /// 2^-k.
  static Dyadic inverse_pow2(std::uint64_t k);
  /// Smallest multiple of 2^-n that is >= q.
  static Dyadic ceil_to_grid(const Rational& q, std::uint64_t n);
  /// Largest multiple of 2^-n that is <= q.
  static Dyadic floor_to_grid(const Rational& q, std::uint64_t n);
  /// Exact conversion; throws std::domain_error if q is not dyadic.
  static Dyadic from_rational(const Rational& q);

  const mpz_class& numerator() const noexcept { return num_; }
  std::uint64_t exponent() const noexcept { return exp_; }
  bool is_zero() const noexcept { return num_ == 0; }

  Rational to_rational() const;
  /// The numerator over 2^n; requires n >= exponent().
  mpz_class scaled(std::uint64_t n) const;
  double to_double() const;
  /// "k/2^m", or "k" when m = 0.
  std::string str() const;

  Dyadic& operator+=(const Dyadic& rhs);
  Dyadic& operator-=(const Dyadic& rhs);
  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  /// Multiplication by 2^-k.
  Dyadic shifted_down(std::uint64_t k) const;

  friend bool operator==(const Dyadic& a, const Dyadic& b) noexcept {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void canonicalize();

  mpz_class num_{0};
  std::uint64_t exp_ = 0;
};

std::strong_ordering compare(const Dyadic& a, const Rational& q);

/// log2 of a positive rational, accurate to double precision for any size.
double log2_of(const Rational& q);
double log2_of(const Dyadic& d);

}  // namespace aitlab
