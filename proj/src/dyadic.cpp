#include "aitlab/dyadic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace aitlab {

Dyadic::Dyadic(mpz_class numerator, std::uint64_t exponent)
    : num_(std::move(numerator)), exp_(exponent) {
  canonicalize();
}

void Dyadic::canonicalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  const mp_bitcnt_t zeros = mpz_scan1(num_.get_mpz_t(), 0);
  const std::uint64_t shift = std::min<std::uint64_t>(zeros, exp_);
  if (shift > 0) {
    mpz_tdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), shift);
    exp_ -= shift;
  }
}

Dyadic Dyadic::inverse_pow2(std::uint64_t k) { return Dyadic(mpz_class(1), k); }

Dyadic Dyadic::ceil_to_grid(const Rational& q, std::uint64_t n) {
  mpz_class scaled = q.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), n);
  mpz_class quotient;
  mpz_cdiv_q(quotient.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  return Dyadic(quotient, n);
}

Dyadic Dyadic::floor_to_grid(const Rational& q, std::uint64_t n) {
  mpz_class scaled = q.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), n);
  mpz_class quotient;
  mpz_fdiv_q(quotient.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  return Dyadic(quotient, n);
}

Dyadic Dyadic::from_rational(const Rational& q) {
  const mpz_class& den = q.get_den();
  const mp_bitcnt_t zeros = mpz_scan1(den.get_mpz_t(), 0);
  if (mpz_sizeinbase(den.get_mpz_t(), 2) != zeros + 1) {
    throw std::domain_error("Dyadic::from_rational: denominator is not a power of two");
  }
  return Dyadic(q.get_num(), zeros);
}

Rational Dyadic::to_rational() const {
  mpz_class den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), exp_);
  Rational q(num_, den);
  q.canonicalize();
  return q;
}

mpz_class Dyadic::scaled(std::uint64_t n) const {
  if (n < exp_) throw std::invalid_argument("Dyadic::scaled: grid coarser than value");
  mpz_class out;
  mpz_mul_2exp(out.get_mpz_t(), num_.get_mpz_t(), n - exp_);
  return out;
}

double Dyadic::to_double() const {
  long e = 0;
  const double mant = mpz_get_d_2exp(&e, num_.get_mpz_t());
  return std::ldexp(mant, static_cast<int>(e - static_cast<long>(exp_)));
}

std::string Dyadic::str() const {
  if (exp_ == 0) return num_.get_str();
  return num_.get_str() + "/2^" + std::to_string(exp_);
}

Dyadic& Dyadic::operator+=(const Dyadic& rhs) {
  const std::uint64_t e = std::max(exp_, rhs.exp_);
  num_ = scaled(e) + rhs.scaled(e);
  exp_ = e;
  canonicalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& rhs) {
  const std::uint64_t e = std::max(exp_, rhs.exp_);
  num_ = scaled(e) - rhs.scaled(e);
  exp_ = e;
  canonicalize();
  return *this;
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
}

Dyadic Dyadic::shifted_down(std::uint64_t k) const { return Dyadic(num_, exp_ + k); }

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const std::uint64_t e = std::max(a.exp_, b.exp_);
  const int c = cmp(a.scaled(e), b.scaled(e));
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering compare(const Dyadic& a, const Rational& q) {
  const int c = cmp(a.to_rational(), q);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

namespace {
double log2_of_int(const mpz_class& z) {
  long e = 0;
  const double mant = mpz_get_d_2exp(&e, z.get_mpz_t());
  return static_cast<double>(e) + std::log2(mant);
}
}  // namespace

double log2_of(const Rational& q) {
  if (q <= 0) return -std::numeric_limits<double>::infinity();
  return log2_of_int(q.get_num()) - log2_of_int(q.get_den());
}

double log2_of(const Dyadic& d) {
  if (d.numerator() <= 0) return -std::numeric_limits<double>::infinity();
  return log2_of_int(d.numerator()) - static_cast<double>(d.exponent());
}

}  // namespace aitlab
