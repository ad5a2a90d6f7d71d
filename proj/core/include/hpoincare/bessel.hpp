#pragma once

// Enclosures of J-Bessel values of integer order via the ascending series.

#include "hpoincare/interval.hpp"

namespace hpoincare {

// Working precision beyond which evaluation gives up and returns [-1, 1].
inline constexpr mpfr_prec_t kBesselMaxWorkingPrecision = 1 << 15;

struct BesselValue {
  Interval value;
  // Set when the series could not be evaluated to the requested precision;
  // `value` is still a valid enclosure.
  bool precision_exhausted = false;
};

// Encloses J_order(x) for every x in the argument interval.  order >= 1, x >= 0.
BesselValue besselJ(long order, const Interval& x, mpfr_prec_t prec = kDefaultPrecision);

// Upper bound (e x / (2k - 2))^(k - 1 - eta), returned as an interval whose
// upper endpoint is the bound.  k even >= 4, x >= 0, 0 <= eta < 1.
Interval bessel_envelope(long k, const Interval& x, const Interval& eta);

// J_{k-1}(x1) * J_{k-1}(x2).
BesselValue NJ(long k, const Interval& x1, const Interval& x2, mpfr_prec_t prec = kDefaultPrecision);

}  // namespace hpoincare
