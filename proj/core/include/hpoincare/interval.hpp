#pragma once

// Closed real intervals with MPFR endpoints and outward rounding.
//
// Every operation returns an interval that contains the exact result for all
// points of the inputs.  Lower endpoints are rounded toward -inf and upper
// endpoints toward +inf.

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hpoincare {

inline constexpr mpfr_prec_t kDefaultPrecision = 80;

// RAII owner of a single mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec = kDefaultPrecision);
  Mpfr(const Mpfr& other);
  Mpfr(Mpfr&& other) noexcept;
  Mpfr& operator=(const Mpfr& other);
  Mpfr& operator=(Mpfr&& other) noexcept;
  ~Mpfr();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(value_); }

 private:
  mpfr_t value_;
};

class Interval {
 public:
  Interval() : Interval(kDefaultPrecision) {}  // [0, 0]
  explicit Interval(mpfr_prec_t prec);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval from_int(long v, mpfr_prec_t prec = kDefaultPrecision);
  static Interval from_mpz(const mpz_class& v, mpfr_prec_t prec = kDefaultPrecision);
  static Interval from_mpq(const mpq_class& v, mpfr_prec_t prec = kDefaultPrecision);
  // Exact binary64 value (no widening).
  static Interval from_double(double v, mpfr_prec_t prec = kDefaultPrecision);
  static Interval hull(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec = kDefaultPrecision);
  static Interval hull(const Interval& a, const Interval& b);
  static Interval from_bounds(double lo, double hi, mpfr_prec_t prec = kDefaultPrecision);
  static Interval pi(mpfr_prec_t prec = kDefaultPrecision);
  static Interval euler_e(mpfr_prec_t prec = kDefaultPrecision);
  static Interval sqrt_of(const mpz_class& v, mpfr_prec_t prec = kDefaultPrecision);
  // cos(2*pi*t/m) and sin(2*pi*t/m) for integers t, m > 0.
  static Interval cos_2pi_ratio(std::int64_t t, std::int64_t m, mpfr_prec_t prec = kDefaultPrecision);
  static Interval sin_2pi_ratio(std::int64_t t, std::int64_t m, mpfr_prec_t prec = kDefaultPrecision);

  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }

  double lo_down() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_up() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_approx() const;
  // Upper bound on hi - lo.
  double width_up() const;
  Interval width() const;
  // Upper bound of |x| over the interval, as a degenerate interval [m, m].
  Interval mag() const;
  // Lower bound of |x| over the interval.
  Interval mig() const;
  // Exact midpoint (may be computed at elevated precision).
  Mpfr midpoint() const;
  // Half-width rounded up.
  Mpfr radius() const;

  bool contains(mpfr_srcptr x) const;
  bool contains(const Interval& other) const;
  bool contains_zero() const;
  bool intersects(const Interval& other) const;
  bool is_point() const;
  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }
  bool certainly_less(const Interval& other) const { return mpfr_less_p(hi_, other.lo_); }

  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }
  Interval operator-() const;

  Interval scaled(long factor) const;
  Interval widened(const Interval& radius) const;  // [lo - r, hi + r], r >= 0
  Interval intersect(const Interval& other) const;

  // Decimal endpoints rounded outward, `digits` significant digits.
  std::string lo_string(int digits = 20) const;
  std::string hi_string(int digits = 20) const;
  std::string to_string(int digits = 20) const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

Interval sqrt(const Interval& x);
Interval exp(const Interval& x);
Interval log(const Interval& x);
Interval abs(const Interval& x);
Interval square(const Interval& x);
// x^y for x > 0.
Interval pow(const Interval& x, const Interval& y);
Interval pow(const Interval& x, long n);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);

std::string mpfr_to_decimal(mpfr_srcptr x, int digits, mpfr_rnd_t rnd);

}  // namespace hpoincare
