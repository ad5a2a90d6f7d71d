#pragma once

// Effective constants behind the non-vanishing threshold and the helpers the
// coefficient tail bound shares with it.

#include "hpoincare/field.hpp"
#include "hpoincare/ideals.hpp"
#include "hpoincare/interval.hpp"

namespace hpoincare {

// Largest value of 2^{pr(m)} / N(m)^theta over integral ideals m.  theta > 0.
Interval pr_power_constant(const QuadraticField& F, const mpq_class& theta, mpfr_prec_t prec = kDefaultPrecision);

// Largest value of tau(m) / m^theta over positive integers m.  theta > 0.
Interval divisor_constant(const mpq_class& theta, mpfr_prec_t prec = kDefaultPrecision);

// Dedekind zeta of F at real s > 1 + 1/4, by partial sums with a divisor-bound tail.
Interval dedekind_zeta(const QuadraticField& F, const Interval& s, mpfr_prec_t prec = kDefaultPrecision);

// Sum over totally positive units eps of prod_{|eps_j| > 1} |eps_j|^{-eta}.
Interval unit_sum(const QuadraticField& F, const Interval& eta, mpfr_prec_t prec = kDefaultPrecision);

// Sum_{m >= m0} m^{-sigma} upper bound, sigma > 1, m0 >= 1.
Interval power_tail(std::uint64_t m0, const Interval& sigma);

struct ConstantsLedger {
  long k = 0;
  mpq_class eta;
  Interval A;
  Interval C1, C2, C3, C4, C5, C6, C7, C8, C9;
  Interval zeta;  // zeta_F(k - 1 - eta)
  // C in the displayed threshold |N(mu)| < C ((k-1)^{n-nk} N(cn)^{-k+1+eta})^{-1/(k-1/2)}.
  Interval C;
};

// k even >= 4, 0 < eta < 1.
ConstantsLedger effective_constants(const QuadraticField& F, long k, const mpq_class& eta,
                                    mpfr_prec_t prec = kDefaultPrecision);

// Norm bound below which every balanced mu in c^+ gives a nonzero series.
// c integral.
Interval threshold_thm32(const QuadraticField& F, long k, const Ideal& c, const Ideal& n, const mpq_class& eta,
                         mpfr_prec_t prec = kDefaultPrecision);

// Fractional c reduced to alpha c integral, eta = 1/2.  Throws NotIntegral.
Interval threshold_cor33(const QuadraticField& F, long k, const FractionalIdeal& c, const Ideal& n,
                         const FElement& alpha, mpfr_prec_t prec = kDefaultPrecision);

// Threshold shape for the series with mu in (d^{-1})^+ on Gamma_0(n).
Interval threshold_thm35(const QuadraticField& F, long k, const Ideal& n, mpfr_prec_t prec = kDefaultPrecision);

}  // namespace hpoincare
