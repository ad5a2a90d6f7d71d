#include "hpoincare/ledger.hpp"

#include "hpoincare/errors.hpp"
#include "hpoincare/intfactor.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace hpoincare {

namespace {

std::vector<std::uint64_t> primes_below(double bound) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; static_cast<double>(p) < bound; ++p) {
    if (is_prime_u64(p)) out.push_back(p);
  }
  return out;
}

Interval interval_q(const mpq_class& q, mpfr_prec_t prec) { return Interval::from_mpq(q, prec); }

void check_eta(const mpq_class& eta) {
  require(eta > 0 && eta < 1, Errc::PreconditionViolated, "eta must lie in (0, 1)");
}

void check_weight(long k) {
  require(k >= 4 && k % 2 == 0, Errc::PreconditionViolated, "weight must be even and >= 4");
}

// Coefficients a_F(m) = #{ideals of norm m} for m <= n, via a_F = 1 * chi_D.
std::vector<std::int64_t> ideal_counts(const QuadraticField& F, std::uint64_t n) {
  std::vector<std::uint64_t> spf(n + 1, 0);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (spf[i]) continue;
    for (std::uint64_t j = i; j <= n; j += i) {
      if (!spf[j]) spf[j] = i;
    }
  }
  mpz_class D = F.discriminant();
  std::vector<std::int64_t> a(n + 1, 0);
  if (n >= 1) a[1] = 1;
  for (std::uint64_t m = 2; m <= n; ++m) {
    std::uint64_t p = spf[m], r = m;
    int e = 0;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    int chi = mpz_kronecker_ui(D.get_mpz_t(), static_cast<unsigned long>(p));
    std::int64_t ape = 0, pw = 1;
    for (int i = 0; i <= e; ++i) {
      ape += pw;
      pw *= chi;
    }
    a[m] = a[r] * ape;
  }
  return a;
}

}  // namespace

Interval pr_power_constant(const QuadraticField& F, const mpq_class& theta, mpfr_prec_t prec) {
  require(theta > 0, Errc::PreconditionViolated, "theta must be positive");
  Interval out = Interval::from_int(1, prec);
  Interval th = interval_q(theta, prec);
  Interval two = Interval::from_int(2, prec);
  for (std::uint64_t p : primes_below(std::pow(2.0, 1.0 / theta.get_d()) + 1)) {
    for (const Ideal& P : prime_splitting(F.basis(), p).primes) {
      Interval ratio = two / pow(Interval::from_mpz(P.norm(), prec), th);
      if (!ratio.certainly_less(Interval::from_int(1, prec))) out *= max(ratio, Interval::from_int(1, prec));
    }
  }
  return out;
}

Interval divisor_constant(const mpq_class& theta, mpfr_prec_t prec) {
  require(theta > 0, Errc::PreconditionViolated, "theta must be positive");
  Interval out = Interval::from_int(1, prec);
  Interval th = interval_q(theta, prec);
  for (std::uint64_t p : primes_below(std::pow(2.0, 1.0 / theta.get_d()) + 1)) {
    Interval step = pow(Interval::from_int(static_cast<long>(p), prec), -th);  // p^{-theta}
    Interval best = Interval::from_int(1, prec);
    Interval pw = Interval::from_int(1, prec);
    // (e+1) p^{-e theta} is unimodal in e.
    for (long e = 1;; ++e) {
      pw *= step;
      Interval v = Interval::from_int(e + 1, prec) * pw;
      bool falling = v.certainly_less(best);
      best = max(best, v);
      if (falling) break;
    }
    out *= best;
  }
  return out;
}

Interval power_tail(std::uint64_t m0, const Interval& sigma) {
  require(m0 >= 1, Errc::PreconditionViolated, "power tail starts at m0 >= 1");
  Interval one = Interval::from_int(1, sigma.prec());
  require(one.certainly_less(sigma), Errc::PreconditionViolated, "power tail needs sigma > 1");
  Interval m = Interval::from_mpz(mpz_class(std::to_string(m0)), sigma.prec());
  // m0^{-sigma} + integral_{m0}^inf t^{-sigma} dt
  return pow(m, -sigma) + pow(m, one - sigma) / (sigma - one);
}

Interval dedekind_zeta(const QuadraticField& F, const Interval& s, mpfr_prec_t prec) {
  const mpq_class theta(1, 4);
  Interval th = interval_q(theta, prec);
  Interval one = Interval::from_int(1, prec);
  require((one + th).certainly_less(s), Errc::PreconditionViolated, "zeta_F needs s > 5/4 here");

  static std::mutex mu;
  static std::map<std::tuple<std::int64_t, std::string, std::string, mpfr_prec_t>, Interval> cache;
  auto key = std::make_tuple(F.d(), s.lo_string(40), s.hi_string(40), prec);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  // Tail after N terms: sum_{m>N} tau(m) m^{-s} <= C' power_tail(N+1, s - theta).
  Interval Cp = divisor_constant(theta, prec);
  Interval sigma = s - th;
  std::uint64_t N = 16;
  mpfr_t eps;
  mpfr_init2(eps, prec);
  mpfr_set_ui_2exp(eps, 1, -(prec - 4), MPFR_RNDD);
  Interval target = Interval::hull(eps, eps, prec);
  mpfr_clear(eps);
  while (N < 100000 && !(Cp * power_tail(N + 1, sigma)).certainly_less(target)) N *= 2;
  N = std::min<std::uint64_t>(N, 100000);

  std::vector<std::int64_t> a = ideal_counts(F, N);
  Interval sum = Interval::from_int(0, prec);
  for (std::uint64_t m = 1; m <= N; ++m) {
    if (a[m] == 0) continue;
    Interval lm = log(Interval::from_int(static_cast<long>(m), prec));
    sum += Interval::from_int(a[m], prec) * exp(-(s * lm));
  }
  Interval tail = Cp * power_tail(N + 1, sigma);
  Interval out = sum + Interval::hull(Interval::from_int(0, prec), tail.mag());
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, out);
  return out;
}

Interval unit_sum(const QuadraticField& F, const Interval& eta, mpfr_prec_t prec) {
  // eps = eps_plus^j contributes sigma_1(eps_plus)^{-|j| eta}.
  Interval lambda = square(F.A(prec));
  Interval q = pow(lambda, -eta);
  Interval one = Interval::from_int(1, prec);
  return one + q.scaled(2) / (one - q);
}

ConstantsLedger effective_constants(const QuadraticField& F, long k, const mpq_class& eta, mpfr_prec_t prec) {
  check_weight(k);
  check_eta(eta);
  ConstantsLedger L;
  L.k = k;
  L.eta = eta;
  Interval et = interval_q(eta, prec);
  Interval pi = Interval::pi(prec);
  Interval e = Interval::euler_e(prec);
  Interval sqrtD = Interval::sqrt_of(F.discriminant(), prec);
  const long a = k - 1;

  L.A = F.A(prec);
  Interval A2 = square(L.A);
  // The balanced-embedding factor is (a A^2 / (2 pi e))^{2 eta}; A^n covers it
  // for moderate k and the maximum keeps it valid for every k.
  Interval balance = pow(Interval::from_int(a, prec) * A2 / (pi * e).scaled(2), et.scaled(2));
  L.C1 = max(A2, balance);
  L.C2 = pr_power_constant(F, mpq_class(1, 2), prec);
  Interval two_f = Interval::from_int(1L << F.f2(), prec);
  L.C3 = Interval::from_int(4, prec) * sqrt(two_f) * sqrtD * L.C2;
  L.C4 = square(pi).scaled(4) * L.C3 / sqrtD;
  L.C5 = L.C4 * L.C1;
  L.C6 = L.C5;
  L.zeta = dedekind_zeta(F, Interval::from_int(a, prec) - et, prec);
  L.C7 = L.C6 * L.zeta;
  L.C8 = unit_sum(F, et, prec);
  L.C9 = L.C7 * L.C8;
  // |c - 1| <= C9 (2 pi e)^{2a} a^{-2a} N(mu)^{k-1/2} (D N(cn))^{-a+eta}
  Interval inner = L.C9 * pow((pi * e).scaled(2), 2 * a) * pow(Interval::from_int(F.discriminant(), prec),
                                                                   et - Interval::from_int(a, prec));
  Interval expo = -(Interval::from_int(1, prec) / (Interval::from_int(k, prec) - Interval::from_mpq(mpq_class(1, 2), prec)));
  L.C = pow(inner, expo);
  return L;
}

Interval threshold_thm32(const QuadraticField& F, long k, const Ideal& c, const Ideal& n, const mpq_class& eta,
                         mpfr_prec_t prec) {
  ConstantsLedger L = effective_constants(F, k, eta, prec);
  const long a = k - 1;
  Interval et = interval_q(eta, prec);
  Interval Ncn = Interval::from_mpz(c.norm() * n.norm(), prec);
  Interval km1 = Interval::from_int(a, prec);
  // ((k-1)^{n-nk} N(cn)^{-k+1+eta})^{-1/(k-1/2)} with n = 2
  Interval inner = pow(km1, -2 * a) * pow(Ncn, et - km1);
  Interval expo = -(Interval::from_int(1, prec) / (Interval::from_int(k, prec) - Interval::from_mpq(mpq_class(1, 2), prec)));
  return L.C * pow(inner, expo);
}

Interval threshold_cor33(const QuadraticField& F, long k, const FractionalIdeal& c, const Ideal& n,
                         const FElement& alpha, mpfr_prec_t prec) {
  require(is_totally_positive(alpha), Errc::PreconditionViolated, "alpha must be totally positive");
  FractionalIdeal ac = FractionalIdeal::principal(alpha) * c;
  require(ac.is_integral(), Errc::NotIntegral, "alpha c is not integral");
  // N(alpha mu) below the integral threshold for alpha c.
  Interval t = threshold_thm32(F, k, ac.num(), n, mpq_class(1, 2), prec);
  return t / Interval::from_mpq(abs(alpha.norm()), prec);
}

Interval threshold_thm35(const QuadraticField& F, long k, const Ideal& n, mpfr_prec_t prec) {
  ConstantsLedger L = effective_constants(F, k, mpq_class(1, 2), prec);
  Interval kk = Interval::from_int(k, prec);
  Interval one = Interval::from_int(1, prec);
  Interval km1 = kk - one;
  // C (k-1)^{n - 3n/(2k-1)} N(n)^{(k-3/4)/(k-1/2)}
  Interval e1 = Interval::from_int(2, prec) - Interval::from_int(6, prec) / (kk.scaled(2) - one);
  Interval e2 = (kk - Interval::from_mpq(mpq_class(3, 4), prec)) / (kk - Interval::from_mpq(mpq_class(1, 2), prec));
  return L.C * pow(km1, e1) * pow(Interval::from_mpz(n.norm(), prec), e2);
}

}  // namespace hpoincare
