#pragma once

// Real quadratic fields Q(sqrt d) and their elements.
//
// Elements of the ring of integers are written a + b*w in the integral basis
// (1, w) with w = sqrt(d) when d = 2,3 mod 4 and w = (1 + sqrt(d))/2 when
// d = 1 mod 4.  sigma_1 is the embedding with sqrt(d) > 0.

#include "hpoincare/interval.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hpoincare {

// The minimal polynomial data of w: w^2 = t*w + n.
struct QuadBasis {
  std::int64_t d = 0;
  bool half = false;

  long t() const { return half ? 1 : 0; }
  mpz_class n() const { return half ? mpz_class((d - 1) / 4) : mpz_class(d); }
  bool operator==(const QuadBasis& o) const { return d == o.d; }
};

class OElement {
 public:
  OElement() = default;
  OElement(mpz_class a, mpz_class b, QuadBasis basis) : a_(std::move(a)), b_(std::move(b)), basis_(basis) {}

  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  const QuadBasis& basis() const { return basis_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  OElement conj() const;
  mpz_class trace() const;
  mpz_class norm() const;

  OElement operator-() const { return {-a_, -b_, basis_}; }
  OElement& operator+=(const OElement& o);
  OElement& operator-=(const OElement& o);
  OElement& operator*=(const OElement& o);
  OElement& operator*=(const mpz_class& s);
  friend OElement operator+(OElement x, const OElement& y) { return x += y; }
  friend OElement operator-(OElement x, const OElement& y) { return x -= y; }
  friend OElement operator*(OElement x, const OElement& y) { return x *= y; }
  friend OElement operator*(OElement x, const mpz_class& s) { return x *= s; }
  friend OElement operator*(const mpz_class& s, OElement x) { return x *= s; }

  bool operator==(const OElement& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const OElement& o) const { return !(*this == o); }
  bool operator<(const OElement& o) const { return a_ != o.a_ ? a_ < o.a_ : b_ < o.b_; }

  // Exact quotient by a rational integer; nullopt if not divisible.
  std::optional<OElement> div_exact(const mpz_class& s) const;
  // Exact quotient x / y in O; nullopt if y does not divide x.
  std::optional<OElement> div_exact(const OElement& y) const;
  OElement pow(unsigned e) const;
  // gcd of the two coordinates (content).
  mpz_class content() const;

  std::string to_string() const;

 private:
  mpz_class a_ = 0;
  mpz_class b_ = 0;
  QuadBasis basis_{};
};

// Element of F as num / den with den > 0 and gcd(content(num), den) = 1.
class FElement {
 public:
  FElement() = default;
  FElement(const OElement& num);  // NOLINT(google-explicit-constructor)
  FElement(OElement num, mpz_class den);

  const OElement& num() const { return num_; }
  const mpz_class& den() const { return den_; }
  const QuadBasis& basis() const { return num_.basis(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_integral() const { return den_ == 1; }
  FElement conj() const { return FElement(num_.conj(), den_); }
  mpq_class trace() const;
  mpq_class norm() const;
  FElement inverse() const;

  FElement operator-() const { return FElement(-num_, den_); }
  friend FElement operator+(const FElement& x, const FElement& y);
  friend FElement operator-(const FElement& x, const FElement& y);
  friend FElement operator*(const FElement& x, const FElement& y);
  friend FElement operator/(const FElement& x, const FElement& y);

  bool operator==(const FElement& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const FElement& o) const { return !(*this == o); }
  bool operator<(const FElement& o) const { return den_ != o.den_ ? den_ < o.den_ : num_ < o.num_; }

  std::string to_string() const;

 private:
  void normalize();

  OElement num_;
  mpz_class den_ = 1;
};

struct FieldData;

class QuadraticField {
 public:
  // Throws NotSquarefree / PreconditionViolated.
  static QuadraticField make(std::int64_t d);

  std::int64_t d() const;
  const QuadBasis& basis() const;
  std::int64_t discriminant() const;
  const OElement& fundamental_unit() const;
  int fu_norm() const;
  const OElement& eps_plus() const;
  const std::optional<OElement>& delta() const;
  // A generator of the different (not necessarily totally positive).
  const OElement& different_generator() const;
  int f2() const;
  bool narrow_h1() const;
  // sqrt(sigma_1(eps_plus)).
  Interval A(mpfr_prec_t prec = kDefaultPrecision) const;
  std::string spec() const { return "Qsqrt:" + std::to_string(d()); }

  OElement elem(const mpz_class& a, const mpz_class& b) const { return {a, b, basis()}; }
  OElement integer(const mpz_class& a) const { return {a, 0, basis()}; }
  OElement omega() const { return {0, 1, basis()}; }
  OElement one() const { return {1, 0, basis()}; }

  // Representatives of the totally positive units modulo squares of units.
  std::vector<OElement> totally_positive_unit_reps() const;

  bool operator==(const QuadraticField& o) const { return d() == o.d(); }
  bool operator!=(const QuadraticField& o) const { return !(*this == o); }

 private:
  explicit QuadraticField(std::shared_ptr<const FieldData> data) : data_(std::move(data)) {}
  std::shared_ptr<const FieldData> data_;
};

// sigma_1(x), sigma_2(x).
std::pair<Interval, Interval> embed(const OElement& x, mpfr_prec_t prec = kDefaultPrecision);
std::pair<Interval, Interval> embed(const FElement& x, mpfr_prec_t prec = kDefaultPrecision);

// Exact; throws ZeroElement on zero input.
bool is_totally_positive(const OElement& x);
bool is_totally_positive(const FElement& x);
// sign of sigma_1(x) / sigma_2(x), exact; 0 only for x = 0.
int sign_sigma1(const OElement& x);
int sign_sigma2(const OElement& x);

// u^e for any integer e, u a unit.
OElement unit_pow(const OElement& u, long e);
FElement unit_pow(const FElement& u, long e);

struct Balanced {
  FElement y;
  long m = 0;
};

// y = x * eps_plus^m minimizing |log|sigma_1(y)/sigma_2(y)||; ties broken
// toward smaller |m|, then smaller m.
Balanced balanced_representative(const QuadraticField& F, const FElement& x);

// Unique representative of the orbit x * O^x: balanced over powers of the
// fundamental unit, |sigma_1| >= |sigma_2| on ties, sigma_1 > 0.
OElement canonical_generator(const QuadraticField& F, const OElement& x);

// 1 iff x / y is a totally positive unit.
bool same_tp_unit_orbit(const FElement& x, const FElement& y);

}  // namespace hpoincare
