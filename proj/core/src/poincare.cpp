#include "hpoincare/poincare.hpp"

#include "hpoincare/errors.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace hpoincare {

namespace {

const mpq_class kTheta(1, 4);

Interval iq(const mpq_class& q, mpfr_prec_t prec) { return Interval::from_mpq(q, prec); }
Interval iz(const mpz_class& z, mpfr_prec_t prec) { return Interval::from_mpz(z, prec); }
Interval ii(long v, mpfr_prec_t prec) { return Interval::from_int(v, prec); }

long valuation_of_fractional(const FractionalIdeal& c, const Ideal& P) {
  long v = valuation(c.num(), P);
  if (c.den() != 1) v -= valuation(Ideal::rational(c.den(), P.basis()), P);
  return v;
}

void require_element_in_c(const PoincareParams& P, const FElement& x, const char* what) {
  require(!x.is_zero() && is_totally_positive(x), Errc::PreconditionViolated,
          std::string(what) + " must be totally positive");
  require(P.c.contains(x), Errc::MembershipViolated, std::string(what) + " is not in c");
}

// (N(nu)/N(mu))^{(k-1)/2} (2 pi)^2 N(c d) / sqrt(D).  The sign (-1)^{nk/2} is +1.
Interval prefactor(const PoincareParams& P, const FElement& nu, const FElement& mu, mpfr_prec_t prec) {
  mpq_class ratio = nu.norm() / mu.norm();
  Interval r = pow(sqrt(iq(ratio, prec)), P.k - 1);
  Interval pi = Interval::pi(prec);
  return r * square(pi).scaled(4) * iq(P.c.norm(), prec) * Interval::sqrt_of(P.F.discriminant(), prec);
}

// Upper bound of sum_{j > M} min(1, G0 r^j), 0 < r < 1.
Interval unit_geometric_tail(const Interval& G0, const Interval& r, long M) {
  mpfr_prec_t prec = G0.prec();
  Interval one = ii(1, prec);
  Interval total = ii(0, prec);
  Interval t = G0 * pow(r, M + 1);
  for (int guard = 0; guard < 100000 && !t.certainly_less(one); ++guard) {
    total += one;
    t *= r;
  }
  return total + t / (one - r);
}

// Bound on N_{nu, eps mu}(m) valid for every modulus of the sum: the positive
// part of ((nu) + (mu)) (c d)^{-1}.
mpz_class N_bound(const PoincareParams& P, const FElement& nu, const FElement& mu) {
  const QuadBasis& B = P.F.basis();
  std::vector<Ideal> cand;
  for (const auto& [Q, e] : factor_ideal(Ideal::principal(nu.num()))) cand.push_back(Q);
  for (const auto& [Q, e] : factor_ideal(Ideal::principal(mu.num()))) cand.push_back(Q);
  if (P.c.den() != 1) {
    for (const auto& [Q, e] : factor_ideal(Ideal::rational(P.c.den(), B))) cand.push_back(Q);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  Ideal dif = different_ideal(P.F);
  mpz_class out = 1;
  for (const Ideal& Q : cand) {
    long e = std::min(*valuation(nu, Q), *valuation(mu, Q)) - valuation_of_fractional(P.c, Q) - valuation(dif, Q);
    if (e <= 0) continue;
    mpz_class pw;
    mpz_class nq = Q.norm();
    mpz_pow_ui(pw.get_mpz_t(), nq.get_mpz_t(), static_cast<unsigned long>(e));
    out *= pw;
  }
  return out;
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(std::max<std::size_t>(jobs, 1), t));
}

// Runs f(i) for i in [0, n) on a pool; rethrows the first failure.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F f) {
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
          next = n;
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

Interval abs_norm(const ModulusRep& r, mpfr_prec_t prec) {
  return iq(mpq_class(r.abs_norm_num, r.abs_norm_den), prec);
}

}  // namespace

void PoincareParams::validate() const {
  require(k >= 4 && k % 2 == 0, Errc::PreconditionViolated, "weight must be even and >= 4");
  require(n.basis() == F.basis() && c.num().basis() == F.basis(), Errc::FieldMismatch,
          "ideal belongs to a different field");
}

mpq_class PoincareParams::cnd_norm() const {
  mpq_class out = c.norm() * mpq_class(n.norm()) * mpq_class(F.discriminant());
  out.canonicalize();
  return out;
}

PoincareParams make_params(const QuadraticField& F, long k, const FractionalIdeal& c, const Ideal& n) {
  PoincareParams P{F, k, c, n};
  P.validate();
  return P;
}

Interval CoefficientValue::enclosure() const {
  mpfr_prec_t prec = finite_part.prec();
  Interval base = iq(mpq_class(chi) * chi_weight, prec) + finite_part;
  return base.widened(tail.mag());
}

int chi_mu(const FElement& nu, const FElement& mu) {
  require(!nu.is_zero() && !mu.is_zero(), Errc::ZeroElement, "chi_mu needs nonzero arguments");
  FElement r = nu / mu;
  if (!r.is_integral()) return 0;
  mpq_class n = r.norm();
  return (n == 1 && is_totally_positive(r)) ? 1 : 0;
}

std::vector<ModulusRep> enumerate_moduli(const PoincareParams& P, std::uint64_t X) {
  P.validate();
  require(P.F.narrow_h1(), Errc::NarrowClassNumber,
          "coefficient evaluation needs narrow class number one");
  mpq_class N0 = P.cnd_norm();
  mpz_class Y;
  mpq_class lim = mpq_class(mpz_class(std::to_string(X))) / N0;
  mpz_fdiv_q(Y.get_mpz_t(), lim.get_num().get_mpz_t(), lim.get_den().get_mpz_t());
  Ideal base = P.c.num() * P.n * different_ideal(P.F);
  std::vector<ModulusRep> out;
  for (std::uint64_t m = 1; mpz_class(std::to_string(m)) <= Y; ++m) {
    for (const Ideal& b : ideals_of_norm(P.F.basis(), m)) {
      auto g = is_principal(P.F, base * b);
      require(g.has_value(), Errc::NarrowClassNumber, "modulus ideal is not principal");
      FElement c = FElement(canonical_generator(P.F, *g)) / FElement(P.F.integer(P.c.den()));
      mpq_class nc = abs(c.norm());
      out.push_back({c, P.n * b, nc.get_num(), nc.get_den()});
    }
  }
  return out;
}

TailBound tail_bound(const PoincareParams& P, const FElement& nu, const FElement& mu, const Cutoffs& cut,
                     mpfr_prec_t prec) {
  P.validate();
  require(P.F.narrow_h1(), Errc::NarrowClassNumber, "coefficient evaluation needs narrow class number one");
  require_element_in_c(P, nu, "nu");
  require_element_in_c(P, mu, "mu");
  require(cut.eta > 0 && cut.eta < 1, Errc::PreconditionViolated, "eta must lie in (0, 1)");
  const QuadraticField& F = P.F;
  const long a = P.k - 1;
  Interval one = ii(1, prec);
  Interval pi = Interval::pi(prec);
  Interval eta = iq(cut.eta, prec);
  Interval A = F.A(prec);
  Interval lambda = square(A);
  require(one.certainly_less(lambda), Errc::PreconditionViolated, "sigma_1(eps_plus) must exceed 1");

  // |J_a(x)| <= min(1, g x^a) with g = 1 / (a! 2^a).
  mpz_class fac;
  mpz_fac_ui(fac.get_mpz_t(), static_cast<unsigned long>(a));
  mpz_class g_den = fac << static_cast<mp_bitcnt_t>(a);
  Interval g = one / iz(g_den, prec);

  auto rho = embed(nu * mu, prec);
  Interval pref = prefactor(P, nu, mu, prec);
  Interval four_pi = pi.scaled(4);

  TailBound out{Interval(prec), Interval(prec)};

  // Moduli with |N(c)| > X.  Every term is at most
  //   pref |S| / n * NJ,  |S| <= W0 2^{pr(n b)} sqrt(B N(n b)),
  //   2^{pr(b)} <= C_theta N(b)^theta,  #{b : N(b) = m} <= C'_theta m^theta,
  // and NJ summed over units is g^2 (x1 x2)^a [1 + H n^{eta/2}].
  {
    Interval W0 = ii(4, prec) * sqrt(ii(1L << F.f2(), prec)) * Interval::sqrt_of(F.discriminant(), prec);
    Interval Ct = pr_power_constant(F, kTheta, prec);
    Interval Cd = divisor_constant(kTheta, prec);
    mpz_class BN = N_bound(P, nu, mu);
    mpq_class N0q = P.cnd_norm();
    Interval N0 = iq(N0q, prec);
    Interval two_pr = ii(1L << pr_count(P.n), prec);
    Interval x1x2_num = square(pi).scaled(16) * sqrt(iq((nu * mu).norm(), prec));  // x1 x2 = this / n
    Interval q = pow(lambda, -(eta / ii(2, prec)));
    Interval H = pow(g, -(eta / ii(a, prec))) * pow(A / four_pi, eta) *
                 (pow(rho.first, -(eta / ii(2, prec))) + pow(rho.second, -(eta / ii(2, prec)))) * q / (one - q);
    Interval K = pref * W0 * two_pr * Ct * sqrt(iz(BN * P.n.norm(), prec)) / N0 * square(g) * pow(x1x2_num, a) * Cd;

    mpq_class lim = mpq_class(mpz_class(std::to_string(cut.X))) / N0q;
    mpz_class Y;
    mpz_fdiv_q(Y.get_mpz_t(), lim.get_num().get_mpz_t(), lim.get_den().get_mpz_t());
    std::uint64_t m0 = static_cast<std::uint64_t>(Y.get_ui()) + 1;
    Interval sigma0 = ii(a, prec);
    Interval sigma1 = ii(a, prec) - eta / ii(2, prec);
    Interval s0 = pow(N0, -a) * power_tail(m0, sigma0);
    Interval s1 = H * pow(N0, eta / ii(2, prec) - ii(a, prec)) * power_tail(m0, sigma1);
    out.modulus_tail = K * (s0 + s1);
  }

  // Kept moduli, units eps_plus^j with |j| > M: the factor with eps_i > 1 is
  // bounded by 1 and the other decays like lambda^{-|j| a / 2}.
  {
    Interval r = pow(lambda, -a);
    r = sqrt(r);
    KloostermanOptions kopt;
    kopt.prec = prec;
    for (const ModulusRep& rep : enumerate_moduli(P, cut.X)) {
      KloostermanQuery qy{nu, mu, rep.m, rep.c};
      Interval S = weil_bound(F, qy, prec).value;
      Interval phi = iz(euler_phi(rep.m), prec);
      if (phi.certainly_less(S)) S = phi;
      auto cabs = embed(rep.c, prec);
      Interval x1 = four_pi * sqrt(rho.first) / abs(cabs.first);
      Interval x2 = four_pi * sqrt(rho.second) / abs(cabs.second);
      Interval units = unit_geometric_tail(g * pow(x2, a), r, cut.M) + unit_geometric_tail(g * pow(x1, a), r, cut.M);
      out.unit_tail += pref * S / abs_norm(rep, prec) * units;
    }
  }
  return out;
}

CoefficientValue coefficient(const PoincareParams& P, const FElement& nu, const FElement& mu, const Cutoffs& cut,
                             const CoefficientOptions& opt) {
  const mpfr_prec_t prec = opt.prec;
  TailBound tb = tail_bound(P, nu, mu, cut, prec);
  const QuadraticField& F = P.F;
  const long a = P.k - 1;

  CoefficientValue out;
  out.chi = chi_mu(nu, mu);
  out.cutoffs = cut;
  out.tail = tb.total();

  std::vector<ModulusRep> reps = enumerate_moduli(P, cut.X);
  out.moduli = reps.size();

  struct UnitData {
    FElement eps_mu;
    std::pair<Interval, Interval> rho;  // embeddings of nu eps mu
  };
  std::vector<UnitData> units;
  FElement eps(F.eps_plus());
  for (long j = -cut.M; j <= cut.M; ++j) {
    FElement em = mu * unit_pow(eps, j);
    units.push_back({em, embed(nu * em, prec)});
  }

  unsigned threads = worker_count(opt.threads, reps.size());
  KloostermanOptions kopt = opt.kloosterman;
  kopt.prec = prec;
  if (threads > 1) kopt.threads = 1;
  Interval four_pi = Interval::pi(prec).scaled(4);

  std::vector<Interval> partial(reps.size(), Interval(prec));
  std::vector<char> exhausted(reps.size(), 0);
  parallel_for(reps.size(), threads, [&](std::size_t i) {
    const ModulusRep& rep = reps[i];
    auto cabs = embed(rep.c, prec);
    Interval c1 = abs(cabs.first), c2 = abs(cabs.second);
    Interval acc(prec);
    for (const UnitData& u : units) {
      KloostermanQuery qy{nu, u.eps_mu, rep.m, rep.c};
      KloostermanValue S = opt.evaluator ? opt.evaluator(qy) : kloosterman_value(F, qy, kopt);
      bool vanishes = S.approx.re.is_point() && S.approx.re.contains_zero();
      if (!vanishes) {
        Interval x1 = four_pi * sqrt(u.rho.first) / c1;
        Interval x2 = four_pi * sqrt(u.rho.second) / c2;
        BesselValue nj = NJ(a + 1, x1, x2, prec);
        if (nj.precision_exhausted) exhausted[i] = 1;
        acc += S.approx.re * nj.value;
      }
    }
    partial[i] = acc / abs_norm(rep, prec);
  });

  Interval sum(prec);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    sum += partial[i];
    if (exhausted[i]) out.precision_exhausted = true;
  }
  out.finite_part = prefactor(P, nu, mu, prec) * sum;
  return out;
}

CoefficientValue coefficient_tilde(const PoincareParams& P, const FElement& nu, const FElement& mu,
                                   const Cutoffs& cut, const CoefficientOptions& opt) {
  CoefficientValue v = coefficient(P, nu, mu, cut, opt);
  mpq_class scale;
  mpq_class nm = mu.norm();
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), nm.get_num().get_mpz_t(), static_cast<unsigned long>(P.k - 1));
  mpz_pow_ui(den.get_mpz_t(), nm.get_den().get_mpz_t(), static_cast<unsigned long>(P.k - 1));
  scale = mpq_class(num, den);
  scale.canonicalize();
  Interval s = iq(scale, opt.prec);
  v.chi_weight = scale;
  v.finite_part = v.finite_part * s;
  v.tail = v.tail * s;
  return v;
}

std::string verdict_name(Verdict v) { return v == Verdict::Nonzero ? "NONZERO" : "INCONCLUSIVE"; }

std::vector<Cutoffs> default_ladder(const PoincareParams& P, const mpq_class& eta) {
  mpq_class N0 = P.cnd_norm();
  std::vector<Cutoffs> out;
  const std::pair<long, long> steps[] = {{50, 2}, {200, 3}, {800, 4}, {3200, 6}};
  for (auto [mult, M] : steps) {
    mpq_class x = N0 * mult;
    mpz_class X;
    mpz_cdiv_q(X.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    out.push_back({static_cast<std::uint64_t>(X.get_ui()), M, eta});
  }
  return out;
}

namespace {

// 1 - |chi + finite - 1| - tail
Interval certificate_margin(const CoefficientValue& v) {
  mpfr_prec_t prec = v.finite_part.prec();
  Interval one = ii(1, prec);
  Interval center = iq(mpq_class(v.chi) * v.chi_weight, prec) + v.finite_part;
  return one - abs(center - one) - v.tail.mag();
}

}  // namespace

Certificate certify_nonvanishing(const PoincareParams& P, const FElement& mu, const CertifyBudget& budget,
                                 const CoefficientOptions& opt) {
  std::vector<Cutoffs> ladder = budget.ladder.empty() ? default_ladder(P) : budget.ladder;
  Certificate cert{P, mu, Verdict::Inconclusive, {}, Interval(opt.prec), false, {}};
  for (const Cutoffs& cut : ladder) {
    cert.ladder_tried.push_back(cut);
    cert.coefficient = coefficient(P, mu, mu, cut, opt);
    cert.margin = certificate_margin(cert.coefficient);
    cert.zero_excluded = !cert.coefficient.enclosure().contains_zero();
    if (cert.margin.certainly_positive()) {
      cert.verdict = Verdict::Nonzero;
      break;
    }
  }
  return cert;
}

bool audit_certificate(const Certificate& cert) {
  const CoefficientValue& v = cert.coefficient;
  // Independent restatement: chi + finite lies strictly inside (tail, 2 - tail).
  mpfr_prec_t prec = v.finite_part.prec() + 32;
  Interval center = iq(mpq_class(v.chi) * v.chi_weight, prec) + v.finite_part;
  Interval t = v.tail.mag();
  bool inside = t.certainly_less(center) && center.certainly_less(ii(2, prec) - t);
  if (cert.verdict == Verdict::Nonzero) return inside;
  return !cert.margin.certainly_positive();
}

std::string outcome_name(RecurrenceOutcome o) {
  switch (o) {
    case RecurrenceOutcome::Consistent:
      return "consistent";
    case RecurrenceOutcome::Inconsistent:
      return "inconsistent";
    default:
      return "inconclusive";
  }
}

namespace {

OElement totally_positive_generator(const PoincareParams& P) {
  auto g = is_principal(P.F, P.c.num());
  require(g.has_value(), Errc::PreconditionViolated, "c is not principal");
  OElement q = *g;
  if (q.norm() < 0) {
    require(P.F.fu_norm() == -1, Errc::PreconditionViolated, "c has no totally positive generator");
    q = q * P.F.fundamental_unit();
  }
  if (q.trace() < 0) q = -q;
  return q;
}

void require_tp_prime(const PoincareParams& P, const OElement& p) {
  require(P.F.narrow_h1(), Errc::NarrowClassNumber, "recurrences need narrow class number one");
  require(!p.is_zero() && is_totally_positive(p), Errc::PreconditionViolated, "p must be totally positive");
  auto f = factor_ideal(Ideal::principal(p));
  require(f.size() == 1 && f.front().second == 1, Errc::PreconditionViolated, "p must be a prime element");
}

FElement times_power(const FElement& x, const OElement& p, unsigned e) { return x * FElement(p.pow(e)); }

}  // namespace

RecurrenceReport recurrence_check_cor45(const PoincareParams& P, const FElement& nu, const FElement& mu,
                                        const OElement& p, unsigned m, unsigned n, const Cutoffs& cut,
                                        const CoefficientOptions& opt) {
  P.validate();
  require(m >= 1 && n >= 1, Errc::PreconditionViolated, "m and n must be >= 1");
  require_tp_prime(P, p);
  require_element_in_c(P, nu, "nu");
  require_element_in_c(P, mu, "mu");
  FElement q(totally_positive_generator(P));
  q = q / FElement(P.F.integer(P.c.den()));
  Ideal Pp = Ideal::principal(p);
  auto v = valuation(nu * mu / (q * q), Pp);
  require(v.has_value() && *v == 0, Errc::PreconditionViolated, "p is not coprime to nu mu q^-2");
  require(valuation(P.n, Pp) == 0, Errc::PreconditionViolated, "p divides the level");

  RecurrenceReport rep;
  rep.terms[0] = coefficient_tilde(P, times_power(nu, p, m), times_power(mu, p, n), cut, opt);
  rep.terms[1] = coefficient_tilde(P, nu, times_power(mu, p, m + n), cut, opt);
  rep.terms[2] = coefficient_tilde(P, times_power(nu, p, m - 1), times_power(mu, p, n - 1), cut, opt);
  mpz_class Np = abs(p.norm());
  mpz_class w;
  mpz_pow_ui(w.get_mpz_t(), Np.get_mpz_t(), static_cast<unsigned long>(P.k - 1));
  rep.lhs = rep.terms[0].enclosure();
  rep.rhs = rep.terms[1].enclosure() + iz(w, opt.prec) * rep.terms[2].enclosure();
  if (!rep.lhs.intersects(rep.rhs)) {
    rep.outcome = RecurrenceOutcome::Inconsistent;
  } else {
    Interval scale = max(ii(1, opt.prec), rep.lhs.mag());
    Interval width = rep.lhs.width() + rep.rhs.width();
    bool tight = width.certainly_less(scale * iq(mpq_class(1, 1000), opt.prec));
    rep.outcome = tight ? RecurrenceOutcome::Consistent : RecurrenceOutcome::Inconclusive;
  }
  return rep;
}

RelationsReport nonvanishing_relations_report(const PoincareParams& P, const FElement& mu, const OElement& p,
                                              unsigned m, const CertifyBudget& budget,
                                              const CoefficientOptions& opt) {
  P.validate();
  require(m >= 1, Errc::PreconditionViolated, "m must be >= 1");
  require_tp_prime(P, p);
  require_element_in_c(P, mu, "mu");
  FElement q(totally_positive_generator(P));
  q = q / FElement(P.F.integer(P.c.den()));
  Ideal Pp = Ideal::principal(p);
  auto v = valuation(mu / q, Pp);
  require(v.has_value() && *v == 0, Errc::PreconditionViolated, "p is not coprime to mu q^-1");
  require(valuation(P.n, Pp) == 0, Errc::PreconditionViolated, "p divides the level");

  RelationsReport rep{certify_nonvanishing(P, mu, budget, opt), {}, true, false};
  for (unsigned e : {m - 1, m, m + 1}) rep.around.push_back(certify_nonvanishing(P, times_power(mu, p, e), budget, opt));
  rep.advisory = rep.base.verdict != Verdict::Nonzero;
  auto nz = [&](std::size_t i) { return rep.around[i].verdict == Verdict::Nonzero; };
  rep.dichotomy_certified = nz(1) || (nz(0) && nz(2));
  return rep;
}

}  // namespace hpoincare
