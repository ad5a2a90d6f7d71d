#include "hpoincare/interval.hpp"

#include "hpoincare/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace hpoincare {

Mpfr::Mpfr(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}
Mpfr::Mpfr(const Mpfr& other) {
  mpfr_init2(value_, other.prec());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}
Mpfr::Mpfr(Mpfr&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}
Mpfr& Mpfr::operator=(const Mpfr& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.prec());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}
Mpfr& Mpfr::operator=(Mpfr&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}
Mpfr::~Mpfr() { mpfr_clear(value_); }

Interval::Interval(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, other.prec());
  mpfr_init2(hi_, other.prec());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept {
  mpfr_init2(lo_, other.prec());
  mpfr_init2(hi_, other.prec());
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.prec());
    mpfr_set_prec(hi_, other.prec());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::from_int(long v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::from_mpz(const mpz_class& v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_mpq(const mpq_class& v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_double(double v, mpfr_prec_t prec) {
  require(std::isfinite(v), Errc::PreconditionViolated, "non-finite double");
  Interval r(prec);
  mpfr_set_d(r.lo_, v, MPFR_RNDD);
  mpfr_set_d(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::from_bounds(double lo, double hi, mpfr_prec_t prec) {
  require(lo <= hi, Errc::PreconditionViolated, "interval bounds out of order");
  Interval r(prec);
  mpfr_set_d(r.lo_, lo, MPFR_RNDD);
  mpfr_set_d(r.hi_, hi, MPFR_RNDU);
  return r;
}

Interval Interval::hull(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set(r.lo_, lo, MPFR_RNDD);
  mpfr_set(r.hi_, hi, MPFR_RNDU);
  if (mpfr_greater_p(r.lo_, r.hi_)) mpfr_swap(r.lo_, r.hi_);
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec(), b.prec()));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::euler_e(mpfr_prec_t prec) {
  return exp(from_int(1, prec));
}

Interval Interval::sqrt_of(const mpz_class& v, mpfr_prec_t prec) {
  require(v >= 0, Errc::PreconditionViolated, "sqrt of negative integer");
  return sqrt(from_mpz(v, prec));
}

Interval Interval::cos_2pi_ratio(std::int64_t t, std::int64_t m, mpfr_prec_t prec) {
  require(m > 0, Errc::PreconditionViolated, "cos_2pi_ratio needs m > 0");
  t %= m;
  if (t < 0) t += m;
  if (2 * t > m) t = m - t;
  if (t == 0) return from_int(1, prec);
  if (2 * t == m) return from_int(-1, prec);
  if (4 * t == m) return from_int(0, prec);
  // Angle in (0, pi); cos is decreasing there.
  Interval angle = pi(prec + 10).scaled(2 * t) / from_int(m, prec + 10);
  Interval r(prec);
  Interval pi_iv = pi(prec + 10);
  if (mpfr_greaterequal_p(angle.hi_, pi_iv.lo_)) {
    mpfr_set_si(r.lo_, -1, MPFR_RNDD);
  } else {
    mpfr_cos(r.lo_, angle.hi_, MPFR_RNDD);
  }
  if (mpfr_sgn(angle.lo_) <= 0) {
    mpfr_set_si(r.hi_, 1, MPFR_RNDU);
  } else {
    mpfr_cos(r.hi_, angle.lo_, MPFR_RNDU);
  }
  return r;
}

Interval Interval::sin_2pi_ratio(std::int64_t t, std::int64_t m, mpfr_prec_t prec) {
  // sin(2 pi t/m) = cos(2 pi (m - 4t) / (4m))
  require(m > 0, Errc::PreconditionViolated, "sin_2pi_ratio needs m > 0");
  t %= m;
  if (t < 0) t += m;
  return cos_2pi_ratio(m - 4 * t, 4 * m, prec);
}

double Interval::mid_approx() const {
  Mpfr m = midpoint();
  return mpfr_get_d(m.get(), MPFR_RNDN);
}

double Interval::width_up() const {
  Mpfr w(prec());
  mpfr_sub(w.get(), hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(w.get(), MPFR_RNDU);
}

Interval Interval::width() const {
  Interval r(prec());
  mpfr_sub(r.lo_, hi_, lo_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, lo_, MPFR_RNDU);
  if (mpfr_sgn(r.lo_) < 0) mpfr_set_zero(r.lo_, 1);
  return r;
}

Interval Interval::mag() const {
  Interval r(prec());
  Mpfr a(prec()), b(prec());
  mpfr_abs(a.get(), lo_, MPFR_RNDU);
  mpfr_abs(b.get(), hi_, MPFR_RNDU);
  mpfr_max(r.hi_, a.get(), b.get(), MPFR_RNDU);
  mpfr_set(r.lo_, r.hi_, MPFR_RNDD);
  return r;
}

Interval Interval::mig() const {
  Interval r(prec());
  if (contains_zero()) return r;
  Mpfr a(prec()), b(prec());
  mpfr_abs(a.get(), lo_, MPFR_RNDD);
  mpfr_abs(b.get(), hi_, MPFR_RNDD);
  mpfr_min(r.lo_, a.get(), b.get(), MPFR_RNDD);
  mpfr_set(r.hi_, r.lo_, MPFR_RNDU);
  return r;
}

Mpfr Interval::midpoint() const {
  // lo + hi is exact with one extra bit beyond the larger exponent span; use
  // enough precision that the sum and halving are exact.
  mpfr_prec_t p = prec() + 2;
  if (mpfr_regular_p(lo_) && mpfr_regular_p(hi_)) {
    mpfr_exp_t span = std::abs(mpfr_get_exp(lo_) - mpfr_get_exp(hi_));
    p += static_cast<mpfr_prec_t>(std::min<mpfr_exp_t>(span, 4096));
  }
  Mpfr m(p);
  mpfr_add(m.get(), lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

Mpfr Interval::radius() const {
  Mpfr mid = midpoint();
  Mpfr r(prec());
  Mpfr a(prec()), b(prec());
  mpfr_sub(a.get(), hi_, mid.get(), MPFR_RNDU);
  mpfr_sub(b.get(), mid.get(), lo_, MPFR_RNDU);
  mpfr_max(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

bool Interval::contains(mpfr_srcptr x) const {
  return mpfr_lessequal_p(lo_, x) && mpfr_lessequal_p(x, hi_);
}

bool Interval::contains(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.lo_) && mpfr_lessequal_p(other.hi_, hi_);
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Interval::intersects(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.hi_) && mpfr_lessequal_p(other.lo_, hi_);
}

bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_); }

namespace {

void raise_prec(mpfr_t x, mpfr_prec_t p, mpfr_rnd_t rnd) {
  if (mpfr_get_prec(x) >= p) return;
  mpfr_t tmp;
  mpfr_init2(tmp, p);
  mpfr_set(tmp, x, rnd);
  mpfr_swap(tmp, x);
  mpfr_clear(tmp);
}

}  // namespace

Interval& Interval::operator+=(const Interval& o) {
  mpfr_prec_t p = std::max(prec(), o.prec());
  raise_prec(lo_, p, MPFR_RNDD);
  raise_prec(hi_, p, MPFR_RNDU);
  mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  mpfr_prec_t p = std::max(prec(), o.prec());
  raise_prec(lo_, p, MPFR_RNDD);
  raise_prec(hi_, p, MPFR_RNDU);
  // o may alias *this.
  Interval oc(o);
  mpfr_sub(lo_, lo_, oc.hi_, MPFR_RNDD);
  mpfr_sub(hi_, hi_, oc.lo_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  mpfr_prec_t p = std::max(prec(), o.prec());
  Interval r(p);
  Mpfr t(p);
  mpfr_srcptr xs[2] = {lo_, hi_};
  mpfr_srcptr ys[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_)) mpfr_set(r.lo_, t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_)) mpfr_set(r.hi_, t.get(), MPFR_RNDU);
      first = false;
    }
  }
  *this = std::move(r);
  return *this;
}

Interval& Interval::operator/=(const Interval& o) {
  require(!o.contains_zero(), Errc::PreconditionViolated, "interval division by an interval containing 0");
  mpfr_prec_t p = std::max(prec(), o.prec());
  Interval r(p);
  Mpfr t(p);
  mpfr_srcptr xs[2] = {lo_, hi_};
  mpfr_srcptr ys[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_)) mpfr_set(r.lo_, t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_)) mpfr_set(r.hi_, t.get(), MPFR_RNDU);
      first = false;
    }
  }
  *this = std::move(r);
  return *this;
}

Interval Interval::operator-() const {
  Interval r(prec());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::scaled(long factor) const {
  Interval r(prec());
  if (factor >= 0) {
    mpfr_mul_si(r.lo_, lo_, factor, MPFR_RNDD);
    mpfr_mul_si(r.hi_, hi_, factor, MPFR_RNDU);
  } else {
    mpfr_mul_si(r.lo_, hi_, factor, MPFR_RNDD);
    mpfr_mul_si(r.hi_, lo_, factor, MPFR_RNDU);
  }
  return r;
}

Interval Interval::widened(const Interval& radius) const {
  Interval r(*this);
  mpfr_sub(r.lo_, r.lo_, radius.hi_, MPFR_RNDD);
  mpfr_add(r.hi_, r.hi_, radius.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::intersect(const Interval& other) const {
  require(intersects(other), Errc::PreconditionViolated, "empty interval intersection");
  Interval r(std::max(prec(), other.prec()));
  mpfr_max(r.lo_, lo_, other.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, hi_, other.hi_, MPFR_RNDU);
  return r;
}

std::string mpfr_to_decimal(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
  if (mpfr_zero_p(x)) return "0";
  if (mpfr_inf_p(x)) return mpfr_sgn(x) > 0 ? "inf" : "-inf";
  if (mpfr_nan_p(x)) return "nan";
  char* buf = nullptr;
  const char* fmt = rnd == MPFR_RNDD ? "%.*RDe" : rnd == MPFR_RNDU ? "%.*RUe" : "%.*RNe";
  if (mpfr_asprintf(&buf, fmt, digits - 1, x) < 0) fail(Errc::PreconditionViolated, "mpfr_asprintf failed");
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string Interval::lo_string(int digits) const { return mpfr_to_decimal(lo_, digits, MPFR_RNDD); }
std::string Interval::hi_string(int digits) const { return mpfr_to_decimal(hi_, digits, MPFR_RNDU); }
std::string Interval::to_string(int digits) const {
  return "[" + lo_string(digits) + ", " + hi_string(digits) + "]";
}

Interval sqrt(const Interval& x) {
  require(mpfr_sgn(x.hi()) >= 0, Errc::PreconditionViolated, "sqrt of a negative interval");
  Interval r(x.prec());
  Mpfr lo(x.prec()), hi(x.prec());
  if (mpfr_sgn(x.lo()) <= 0) {
    mpfr_set_zero(lo.get(), 1);
  } else {
    mpfr_sqrt(lo.get(), x.lo(), MPFR_RNDD);
  }
  mpfr_sqrt(hi.get(), x.hi(), MPFR_RNDU);
  return Interval::hull(lo.get(), hi.get(), x.prec());
}

Interval exp(const Interval& x) {
  Mpfr lo(x.prec()), hi(x.prec());
  mpfr_exp(lo.get(), x.lo(), MPFR_RNDD);
  mpfr_exp(hi.get(), x.hi(), MPFR_RNDU);
  return Interval::hull(lo.get(), hi.get(), x.prec());
}

Interval log(const Interval& x) {
  require(x.certainly_positive(), Errc::PreconditionViolated, "log of a non-positive interval");
  Mpfr lo(x.prec()), hi(x.prec());
  mpfr_log(lo.get(), x.lo(), MPFR_RNDD);
  mpfr_log(hi.get(), x.hi(), MPFR_RNDU);
  return Interval::hull(lo.get(), hi.get(), x.prec());
}

Interval abs(const Interval& x) {
  if (mpfr_sgn(x.lo()) >= 0) return x;
  if (mpfr_sgn(x.hi()) <= 0) return -x;
  Interval m = x.mag();
  Mpfr zero(x.prec());
  return Interval::hull(zero.get(), m.hi(), x.prec());
}

Interval square(const Interval& x) {
  Interval a = abs(x);
  return a * a;
}

Interval pow(const Interval& x, const Interval& y) {
  return exp(y * log(x));
}

Interval pow(const Interval& x, long n) {
  if (n == 0) return Interval::from_int(1, x.prec());
  if (n < 0) return Interval::from_int(1, x.prec()) / pow(x, -n);
  Interval base = (n % 2 == 0) ? abs(x) : x;
  // For odd n on a sign-changing interval, monotonicity of t^n keeps the
  // endpoint formula valid; compute endpoint powers directly.
  if (n % 2 == 1) {
    Mpfr lo(x.prec()), hi(x.prec());
    mpfr_pow_ui(lo.get(), x.lo(), static_cast<unsigned long>(n), MPFR_RNDD);
    mpfr_pow_ui(hi.get(), x.hi(), static_cast<unsigned long>(n), MPFR_RNDU);
    return Interval::hull(lo.get(), hi.get(), x.prec());
  }
  Mpfr lo(x.prec()), hi(x.prec());
  mpfr_pow_ui(lo.get(), base.lo(), static_cast<unsigned long>(n), MPFR_RNDD);
  mpfr_pow_ui(hi.get(), base.hi(), static_cast<unsigned long>(n), MPFR_RNDU);
  return Interval::hull(lo.get(), hi.get(), x.prec());
}

Interval max(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec(), b.prec()));
  Mpfr lo(r.prec()), hi(r.prec());
  mpfr_max(lo.get(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_max(hi.get(), a.hi(), b.hi(), MPFR_RNDU);
  return Interval::hull(lo.get(), hi.get(), r.prec());
}

Interval min(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec(), b.prec()));
  Mpfr lo(r.prec()), hi(r.prec());
  mpfr_min(lo.get(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_min(hi.get(), a.hi(), b.hi(), MPFR_RNDU);
  return Interval::hull(lo.get(), hi.get(), r.prec());
}

}  // namespace hpoincare
