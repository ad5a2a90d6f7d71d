#include "hpoincare/bessel.hpp"

#include "hpoincare/errors.hpp"

#include <cmath>

namespace hpoincare {

namespace {

Interval unit_interval(mpfr_prec_t prec) { return Interval::from_bounds(-1.0, 1.0, prec); }

// Series for J_order at the exact point x0 >= 0 using working precision wp.
Interval series_at_point(long order, mpfr_srcptr x0, mpfr_prec_t prec, mpfr_prec_t wp) {
  if (mpfr_zero_p(x0)) return Interval(prec);
  Interval h = Interval::hull(x0, x0, wp) * Interval::from_mpq(mpq_class(1, 2), wp);
  Interval h2 = square(h);
  mpz_class fac;
  mpz_fac_ui(fac.get_mpz_t(), static_cast<unsigned long>(order));
  Interval t = pow(h, order) / Interval::from_mpz(fac, wp);
  Interval sum = t;
  Interval max_term = t.mag();
  Interval half_iv = Interval::from_mpq(mpq_class(1, 2), wp);

  for (long m = 0;; ++m) {
    Interval ratio = h2 / Interval::from_mpz(mpz_class(m + 1) * mpz_class(order + m + 1), wp);
    Interval next = -(t * ratio);
    if (ratio.certainly_less(half_iv)) {
      // Later ratios are smaller, so the tail is at most 2 |next|.
      Interval rem = next.mag().scaled(2);
      mpfr_t eps;
      mpfr_init2(eps, wp);
      mpfr_set_ui_2exp(eps, 1, -(prec + 8), MPFR_RNDD);
      Interval rel = Interval::hull(eps, eps, wp);
      mpfr_set_ui_2exp(eps, 1, -(wp - 4), MPFR_RNDD);
      Interval abs_floor = max_term * Interval::hull(eps, eps, wp);
      mpfr_clear(eps);
      bool small = rem.certainly_less(sum.mig() * rel) || rem.certainly_less(abs_floor);
      if (small) return sum.widened(rem);
    }
    sum += next;
    t = next;
    Interval tm = t.mag();
    if (max_term.certainly_less(tm)) max_term = tm;
  }
}

}  // namespace

BesselValue besselJ(long order, const Interval& x, mpfr_prec_t prec) {
  require(order >= 1, Errc::PreconditionViolated, "Bessel order must be >= 1");
  require(mpfr_sgn(x.lo()) >= 0, Errc::PreconditionViolated, "Bessel argument must be nonnegative");
  BesselValue out{Interval(prec), false};
  if (mpfr_zero_p(x.hi())) return out;
  Mpfr mid = x.midpoint();
  Mpfr rad = x.radius();
  // Terms peak near e^x, so cancellation costs about x log2(e) bits.
  double xd = mpfr_get_d(mid.get(), MPFR_RNDU);
  if (!std::isfinite(xd) || xd * 1.4427 + static_cast<double>(prec) + 40 > kBesselMaxWorkingPrecision) {
    out.value = unit_interval(prec);
    out.precision_exhausted = true;
    return out;
  }
  auto wp = static_cast<mpfr_prec_t>(prec + 40 + static_cast<mpfr_prec_t>(std::ceil(xd * 1.4427)));
  Interval v = series_at_point(order, mid.get(), prec, wp);
  // |J_n'| <= 1 for n >= 1.
  Interval r = Interval::hull(rad.get(), rad.get(), wp);
  v = v.widened(r.mag());
  Interval clipped = v.intersect(unit_interval(wp));
  out.value = Interval::hull(clipped.lo(), clipped.hi(), prec);
  return out;
}

Interval bessel_envelope(long k, const Interval& x, const Interval& eta) {
  require(k >= 4 && k % 2 == 0, Errc::PreconditionViolated, "weight must be even and >= 4");
  require(mpfr_sgn(x.lo()) >= 0, Errc::PreconditionViolated, "envelope argument must be nonnegative");
  mpfr_prec_t prec = x.prec();
  if (mpfr_zero_p(x.hi())) return Interval(prec);
  Interval base = Interval::euler_e(prec) * x / Interval::from_int(2 * k - 2, prec);
  Interval expo = Interval::from_int(k - 1, prec) - eta;
  if (mpfr_zero_p(x.lo())) {
    // Hull of 0 and the value at the upper endpoint (the map is increasing).
    Interval top = pow(Interval::hull(base.hi(), base.hi(), prec), expo);
    return Interval::hull(Interval(prec), top);
  }
  return pow(base, expo);
}

BesselValue NJ(long k, const Interval& x1, const Interval& x2, mpfr_prec_t prec) {
  BesselValue a = besselJ(k - 1, x1, prec);
  BesselValue b = besselJ(k - 1, x2, prec);
  return {a.value * b.value, a.precision_exhausted || b.precision_exhausted};
}

}  // namespace hpoincare
