#pragma once

// Generalized Kloosterman sums
//
//   S_m(nu, mu; c) = sum_{x in (O/m)^x} e((nu x + mu x^{-1}) / c),
//   e(a) = exp(2 pi i Tr(a)),
//
// for nu, mu in c (m d)^{-1}, computed exactly in Z[zeta_M] or as complex
// intervals.

#include "hpoincare/cyclotomic.hpp"
#include "hpoincare/ideals.hpp"
#include "hpoincare/interval.hpp"
#include "hpoincare/residues.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hpoincare {

inline constexpr std::uint64_t kDefaultOrderCap = 1000000;

struct KloostermanOptions {
  std::uint64_t residue_budget = kDefaultResidueBudget;
  std::uint64_t order_cap = kDefaultOrderCap;
  unsigned threads = 0;  // 0: hardware concurrency
  mpfr_prec_t prec = kDefaultPrecision;
};

struct KloostermanQuery {
  FElement nu;
  FElement mu;
  Ideal m;
  FElement c;
};

// Throws MembershipViolated unless nu, mu lie in c (m d)^{-1}, and
// ZeroElement if c = 0.
void validate(const QuadraticField& F, const KloostermanQuery& q);

// S(nu, mu; q) with m = (q), c = q.
KloostermanQuery principal_query(const FElement& nu, const FElement& mu, const OElement& q);

// e(alpha) as a root of unity.
CyclotomicInteger additive_character(const FElement& alpha);

// Order M of the root of unity group containing every term of the sum.
std::uint64_t kloosterman_order(const QuadraticField& F, const KloostermanQuery& q);

// Throws BudgetExceeded if N(m) or the order exceeds its cap.
CyclotomicInteger kloosterman_exact(const QuadraticField& F, const KloostermanQuery& q,
                                    const KloostermanOptions& opt = {});

struct ComplexInterval {
  Interval re;
  Interval im;
};

ComplexInterval kloosterman_float(const QuadraticField& F, const KloostermanQuery& q,
                                  const KloostermanOptions& opt = {});

// Exact when the order fits under the cap, otherwise interval only.
struct KloostermanValue {
  std::optional<CyclotomicInteger> exact;
  ComplexInterval approx;
};

using KloostermanEvaluator = std::function<KloostermanValue(const KloostermanQuery&)>;

KloostermanValue kloosterman_value(const QuadraticField& F, const KloostermanQuery& q,
                                   const KloostermanOptions& opt = {});

struct WeilBound {
  // bound = coefficient * sqrt(radicand)
  mpz_class coefficient;
  mpq_class radicand;
  Interval value;
};

// prod_{p | m} N(p)^{min(v_p(nu / c) + v_p(m), v_p(mu / c) + v_p(m), v_p(m) - v_p(d))}.
mpq_class N_nu_mu_scaled(const QuadraticField& F, const KloostermanQuery& q);
WeilBound weil_bound(const QuadraticField& F, const KloostermanQuery& q, mpfr_prec_t prec = kDefaultPrecision);

struct IdentityReport {
  bool holds = false;
  bool exact = true;  // false: decided by interval containment only
  bool within_hypotheses = true;
  std::string detail;
};

struct Lemma41Result {
  mpz_class value;
  int expected = 0;
  bool holds = false;
};

// S(delta^{-1} e1, delta^{-1} r; e2 p^e) against -1 (e = 1) / 0 (e > 1).
Lemma41Result lemma41_value(const QuadraticField& F, const OElement& p, const OElement& e1, const OElement& e2,
                            const OElement& r, unsigned e, const KloostermanOptions& opt = {});

// S(delta^{-1} nu, delta^{-1} mu; q) = sum_{(d) | (nu, mu, q)} N((d)) S(delta^{-1}, delta^{-1} nu mu / d^2; q / d).
IdentityReport selberg_check(const QuadraticField& F, const OElement& nu, const OElement& mu, const OElement& q,
                             const KloostermanOptions& opt = {});

// S(nu p^m, mu p^n; q) = S(nu, mu p^{m+n}; q) + N((p)) S(nu p^{m-1}, mu p^{n-1}; q / p).
// nu, mu in d^{-1} with p coprime to delta nu and delta mu (so both nonzero),
// p | q.  Throws PreconditionViolated.
IdentityReport cor43_check(const QuadraticField& F, const FElement& nu, const FElement& mu, const OElement& q,
                           const OElement& p, unsigned m, unsigned n, const KloostermanOptions& opt = {});

bool kloosterman_symmetry_check(const QuadraticField& F, const KloostermanQuery& q, const KloostermanOptions& opt = {});

// S_m(nu, mu eps^2; c) = S_m(nu, mu; c / eps).
bool unit_twist_check(const QuadraticField& F, const KloostermanQuery& q, const OElement& eps,
                      const KloostermanOptions& opt = {});

}  // namespace hpoincare
