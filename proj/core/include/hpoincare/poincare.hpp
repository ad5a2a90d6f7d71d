#pragma once

// Fourier coefficients of Hilbert Poincare series over real quadratic fields:
// truncated interval sums with rigorous tails, non-vanishing certificates and
// the coefficient recurrence checks.

#include "hpoincare/bessel.hpp"
#include "hpoincare/field.hpp"
#include "hpoincare/ideals.hpp"
#include "hpoincare/interval.hpp"
#include "hpoincare/kloosterman.hpp"
#include "hpoincare/ledger.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace hpoincare {

struct PoincareParams {
  QuadraticField F;
  long k = 4;      // even, >= 4
  FractionalIdeal c;
  Ideal n;         // integral level

  // Throws PreconditionViolated for bad k or a non-integral level.
  void validate() const;
  // N(c n d).
  mpq_class cnd_norm() const;
};

PoincareParams make_params(const QuadraticField& F, long k, const FractionalIdeal& c, const Ideal& n);

struct Cutoffs {
  std::uint64_t X = 0;  // keep moduli c with |N(c)| <= X
  long M = 0;           // keep units eps_plus^j with |j| <= M
  mpq_class eta{1, 2};  // envelope exponent used in the tail
};

struct CoefficientOptions {
  KloostermanOptions kloosterman;
  mpfr_prec_t prec = kDefaultPrecision;
  unsigned threads = 0;  // 0: hardware concurrency
  // Optional replacement for kloosterman_value (used for caching).
  KloostermanEvaluator evaluator;
};

struct TailBound {
  Interval modulus_tail;  // moduli beyond X, every unit
  Interval unit_tail;     // kept moduli, units beyond M
  Interval total() const { return modulus_tail + unit_tail; }
};

struct CoefficientValue {
  int chi = 0;
  mpq_class chi_weight = 1;  // N(mu)^{k-1} for the symmetric variant
  Interval finite_part;
  Interval tail;  // upper endpoint bounds the omitted terms
  Cutoffs cutoffs;
  std::size_t moduli = 0;
  bool precision_exhausted = false;

  // chi * chi_weight + finite_part +- tail.
  Interval enclosure() const;
};

// 1 iff nu / mu is a totally positive unit.
int chi_mu(const FElement& nu, const FElement& mu);

// One modulus of the truncated sum: c generates c n d b, m = n b.
struct ModulusRep {
  FElement c;
  Ideal m;
  mpz_class abs_norm_num;  // |N(c)| = abs_norm_num / abs_norm_den
  mpz_class abs_norm_den;
};

// Balanced generators c of c n d b for every integral b with |N(c)| <= X,
// ordered by norm.  Requires narrow class number one.
std::vector<ModulusRep> enumerate_moduli(const PoincareParams& P, std::uint64_t X);

CoefficientValue coefficient(const PoincareParams& P, const FElement& nu, const FElement& mu, const Cutoffs& cut,
                             const CoefficientOptions& opt = {});

TailBound tail_bound(const PoincareParams& P, const FElement& nu, const FElement& mu, const Cutoffs& cut,
                     mpfr_prec_t prec = kDefaultPrecision);

// N(mu)^{k-1} c_k(nu, mu).
CoefficientValue coefficient_tilde(const PoincareParams& P, const FElement& nu, const FElement& mu,
                                   const Cutoffs& cut, const CoefficientOptions& opt = {});

enum class Verdict { Nonzero, Inconclusive };
std::string verdict_name(Verdict v);

struct Certificate {
  PoincareParams params;
  FElement mu;
  Verdict verdict = Verdict::Inconclusive;
  CoefficientValue coefficient;
  Interval margin;             // 1 - |chi + finite - 1| - tail
  bool zero_excluded = false;  // 0 outside the enclosure (informational)
  std::vector<Cutoffs> ladder_tried;
};

struct CertifyBudget {
  // Absolute cutoffs tried in order; empty means default_ladder(P).
  std::vector<Cutoffs> ladder;
};

std::vector<Cutoffs> default_ladder(const PoincareParams& P, const mpq_class& eta = mpq_class(1, 2));

Certificate certify_nonvanishing(const PoincareParams& P, const FElement& mu, const CertifyBudget& budget = {},
                                 const CoefficientOptions& opt = {});

// Recomputes the NONZERO criterion from the stored numbers.
bool audit_certificate(const Certificate& cert);

enum class RecurrenceOutcome { Consistent, Inconsistent, Inconclusive };
std::string outcome_name(RecurrenceOutcome o);

struct RecurrenceReport {
  RecurrenceOutcome outcome = RecurrenceOutcome::Inconclusive;
  Interval lhs;
  Interval rhs;
  std::array<CoefficientValue, 3> terms;  // lhs, first and second rhs coefficients
};

// c~(nu p^m, mu p^n) = c~(nu, mu p^{m+n}) + N(p)^{k-1} c~(nu p^{m-1}, mu p^{n-1}).
// c must be (q) with q totally positive; p a totally positive prime element
// coprime to nu mu q^{-2} n.  Throws PreconditionViolated.
RecurrenceReport recurrence_check_cor45(const PoincareParams& P, const FElement& nu, const FElement& mu,
                                        const OElement& p, unsigned m, unsigned n, const Cutoffs& cut,
                                        const CoefficientOptions& opt = {});

struct RelationsReport {
  Certificate base;                    // mu
  std::vector<Certificate> around;     // mu p^{m-1}, mu p^m, mu p^{m+1}
  bool advisory = true;                // base not certified: hypothesis unmet
  bool dichotomy_certified = false;    // one branch holds with NONZERO certificates
};

RelationsReport nonvanishing_relations_report(const PoincareParams& P, const FElement& mu, const OElement& p,
                                              unsigned m, const CertifyBudget& budget = {},
                                              const CoefficientOptions& opt = {});

}  // namespace hpoincare
