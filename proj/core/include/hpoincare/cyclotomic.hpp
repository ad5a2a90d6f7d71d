#pragma once

// Exact elements of Z[zeta_M], stored as coefficient vectors in
// Z[x]/(x^M - 1).  Equality is decided modulo the cyclotomic polynomial.

#include "hpoincare/interval.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hpoincare {

class CyclotomicInteger {
 public:
  CyclotomicInteger() : CyclotomicInteger(1) {}
  explicit CyclotomicInteger(std::uint64_t order);

  static CyclotomicInteger integer(const mpz_class& v, std::uint64_t order = 1);
  // zeta_M^t
  static CyclotomicInteger root(std::uint64_t order, std::int64_t t);
  static CyclotomicInteger from_counts(std::uint64_t order, const std::vector<std::int64_t>& counts);

  std::uint64_t order() const { return order_; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  void add_to(std::uint64_t j, const mpz_class& v) { coeffs_[j % order_] += v; }

  // Same value in Z[x]/(x^L - 1), L a multiple of order().
  CyclotomicInteger lift(std::uint64_t L) const;
  CyclotomicInteger conj() const;
  bool is_zero() const;
  bool is_real() const { return (*this - conj()).is_zero(); }
  // Rational integer value, if the element is one.
  std::optional<mpz_class> integer_value() const;

  Interval real_part(mpfr_prec_t prec = kDefaultPrecision) const;
  Interval imag_part(mpfr_prec_t prec = kDefaultPrecision) const;

  CyclotomicInteger& operator+=(const CyclotomicInteger& o);
  CyclotomicInteger& operator-=(const CyclotomicInteger& o);
  CyclotomicInteger& operator*=(const mpz_class& s);
  friend CyclotomicInteger operator+(CyclotomicInteger x, const CyclotomicInteger& y) { return x += y; }
  friend CyclotomicInteger operator-(CyclotomicInteger x, const CyclotomicInteger& y) { return x -= y; }
  friend CyclotomicInteger operator*(CyclotomicInteger x, const mpz_class& s) { return x *= s; }
  friend CyclotomicInteger operator*(const mpz_class& s, CyclotomicInteger x) { return x *= s; }
  // Product in the ring (orders lifted to their lcm).
  friend CyclotomicInteger operator*(const CyclotomicInteger& x, const CyclotomicInteger& y);

  // Value equality in C.
  bool equals(const CyclotomicInteger& o) const { return (*this - o).is_zero(); }

  std::string to_string() const;

 private:
  std::uint64_t order_;
  std::vector<mpz_class> coeffs_;
};

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

}  // namespace hpoincare
