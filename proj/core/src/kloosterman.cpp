#include "hpoincare/kloosterman.hpp"

#include "hpoincare/errors.hpp"
#include "hpoincare/intfactor.hpp"

#include <algorithm>
#include <map>
#include <thread>
#include <unordered_map>

namespace hpoincare {

namespace {

mpz_class lcm_mpz(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

bool integral(const mpq_class& q) { return q.get_den() == 1; }

struct TraceData {
  std::uint64_t M = 1;
  std::int64_t t[4] = {0, 0, 0, 0};  // Tr(alpha), Tr(alpha w), Tr(beta), Tr(beta w), times M, mod M
};

TraceData trace_data(const QuadraticField& F, const KloostermanQuery& q) {
  FElement alpha = q.nu / q.c;
  FElement beta = q.mu / q.c;
  FElement w(F.omega());
  mpq_class T[4] = {alpha.trace(), (alpha * w).trace(), beta.trace(), (beta * w).trace()};
  mpz_class M = 1;
  for (auto& x : T) M = lcm_mpz(M, x.get_den());
  TraceData out;
  out.M = to_u64(M);
  for (int i = 0; i < 4; ++i) {
    mpz_class v = T[i].get_num() * (M / T[i].get_den());
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), M.get_mpz_t());
    out.t[i] = static_cast<std::int64_t>(to_u64(r));
  }
  return out;
}

unsigned thread_count(const KloostermanOptions& opt, std::uint64_t work) {
  if (work < 20000) return 1;
  unsigned t = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  return std::min<unsigned>(t, 64);
}

// Runs body(begin, end, slot) over [0, n) split in contiguous chunks.
template <class Body>
void parallel_chunks(std::uint64_t n, unsigned threads, Body body) {
  if (threads <= 1) {
    body(0, n, 0u);
    return;
  }
  std::vector<std::thread> pool;
  std::uint64_t chunk = (n + threads - 1) / threads;
  for (unsigned i = 0; i < threads; ++i) {
    std::uint64_t b = i * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back(body, b, e, i);
  }
  for (auto& th : pool) th.join();
}

template <class Sink>
void enumerate_exponents(const ResidueRing& R, const TraceData& td, std::uint64_t begin, std::uint64_t end,
                         Sink&& sink) {
  const auto a = static_cast<std::int64_t>(R.modulus().a().get_si());
  const __int128 M = td.M;
  for (std::uint64_t i = begin; i < end; ++i) {
    Residue x{static_cast<std::int64_t>(i % static_cast<std::uint64_t>(a)),
              static_cast<std::int64_t>(i / static_cast<std::uint64_t>(a))};
    if (!R.is_unit(x)) continue;
    Residue xi = R.inverse(x);
    __int128 e = static_cast<__int128>(x.x) * td.t[0] + static_cast<__int128>(x.y) * td.t[1] +
                 static_cast<__int128>(xi.x) * td.t[2] + static_cast<__int128>(xi.y) * td.t[3];
    sink(static_cast<std::uint64_t>(e % M));
  }
}

}  // namespace

void validate(const QuadraticField& F, const KloostermanQuery& q) {
  require(!q.c.is_zero(), Errc::ZeroElement, "Kloosterman modulus element c is zero");
  require(q.nu.basis() == F.basis() && q.mu.basis() == F.basis() && q.c.basis() == F.basis() &&
              q.m.basis() == F.basis(),
          Errc::FieldMismatch, "query elements belong to a different field");
  // x in (m d)^{-1}  <=>  Tr(x m) in Z
  for (const FElement* v : {&q.nu, &q.mu}) {
    FElement x = *v / q.c;
    bool ok = integral((x * FElement(q.m.basis1())).trace()) && integral((x * FElement(q.m.basis2())).trace());
    require(ok, Errc::MembershipViolated,
            "element " + v->to_string() + " is not in c (m d)^{-1} for c = " + q.c.to_string() + ", m = " +
                q.m.to_string());
  }
}

KloostermanQuery principal_query(const FElement& nu, const FElement& mu, const OElement& q) {
  require(!q.is_zero(), Errc::ZeroElement, "Kloosterman modulus q is zero");
  return {nu, mu, Ideal::principal(q), FElement(q)};
}

CyclotomicInteger additive_character(const FElement& alpha) {
  mpq_class t = alpha.trace();
  std::uint64_t M = to_u64(t.get_den());
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
  return CyclotomicInteger::root(M, static_cast<std::int64_t>(to_u64(r)));
}

std::uint64_t kloosterman_order(const QuadraticField& F, const KloostermanQuery& q) {
  validate(F, q);
  return trace_data(F, q).M;
}

CyclotomicInteger kloosterman_exact(const QuadraticField& F, const KloostermanQuery& q, const KloostermanOptions& opt) {
  validate(F, q);
  if (q.m.is_unit()) return CyclotomicInteger::integer(1);
  TraceData td = trace_data(F, q);
  require(td.M <= opt.order_cap, Errc::BudgetExceeded,
          "cyclotomic order " + std::to_string(td.M) + " exceeds cap " + std::to_string(opt.order_cap));
  ResidueRing R(q.m, opt.residue_budget);
  const std::uint64_t n = R.size();
  unsigned threads = thread_count(opt, n);
  std::vector<std::vector<std::int64_t>> hists(threads);
  parallel_chunks(n, threads, [&](std::uint64_t b, std::uint64_t e, unsigned slot) {
    auto& h = hists[slot];
    h.assign(td.M, 0);
    enumerate_exponents(R, td, b, e, [&](std::uint64_t j) { ++h[j]; });
  });
  std::vector<std::int64_t> total(td.M, 0);
  for (const auto& h : hists) {
    for (std::size_t j = 0; j < h.size(); ++j) total[j] += h[j];
  }
  return CyclotomicInteger::from_counts(td.M, total);
}

ComplexInterval kloosterman_float(const QuadraticField& F, const KloostermanQuery& q, const KloostermanOptions& opt) {
  validate(F, q);
  const mpfr_prec_t prec = opt.prec;
  if (q.m.is_unit()) return {Interval::from_int(1, prec), Interval::from_int(0, prec)};
  TraceData td = trace_data(F, q);
  if (td.M <= opt.order_cap) {
    CyclotomicInteger v = kloosterman_exact(F, q, opt);
    return {v.real_part(prec), v.imag_part(prec)};
  }
  ResidueRing R(q.m, opt.residue_budget);
  const std::uint64_t n = R.size();
  unsigned threads = thread_count(opt, n);
  std::vector<std::unordered_map<std::uint64_t, std::int64_t>> hists(threads);
  parallel_chunks(n, threads, [&](std::uint64_t b, std::uint64_t e, unsigned slot) {
    auto& h = hists[slot];
    enumerate_exponents(R, td, b, e, [&](std::uint64_t j) { ++h[j]; });
  });
  std::map<std::uint64_t, std::int64_t> merged;
  for (const auto& h : hists) {
    for (auto [j, c] : h) merged[j] += c;
  }
  Interval re(prec), im(prec);
  const auto M = static_cast<std::int64_t>(td.M);
  for (auto [j, cnt] : merged) {
    Interval w = Interval::from_int(cnt, prec);
    re += w * Interval::cos_2pi_ratio(static_cast<std::int64_t>(j), M, prec);
    im += w * Interval::sin_2pi_ratio(static_cast<std::int64_t>(j), M, prec);
  }
  return {re, im};
}

KloostermanValue kloosterman_value(const QuadraticField& F, const KloostermanQuery& q, const KloostermanOptions& opt) {
  validate(F, q);
  KloostermanValue out;
  if (q.m.is_unit() || trace_data(F, q).M <= opt.order_cap) {
    CyclotomicInteger v = kloosterman_exact(F, q, opt);
    out.approx = {v.real_part(opt.prec), v.imag_part(opt.prec)};
    out.exact = std::move(v);
  } else {
    out.approx = kloosterman_float(F, q, opt);
  }
  return out;
}

mpq_class N_nu_mu_scaled(const QuadraticField& F, const KloostermanQuery& q) {
  mpq_class out = 1;
  Ideal dif = different_ideal(F);
  FElement alpha = q.nu / q.c;
  FElement beta = q.mu / q.c;
  for (const auto& [P, e] : factor_ideal(q.m)) {
    long ex = e - valuation(dif, P);
    if (auto v = valuation(alpha, P)) ex = std::min(ex, *v + e);
    if (auto v = valuation(beta, P)) ex = std::min(ex, *v + e);
    mpz_class pw;
    mpz_class np = P.norm();
    mpz_pow_ui(pw.get_mpz_t(), np.get_mpz_t(), static_cast<unsigned long>(std::labs(ex)));
    if (ex >= 0) {
      out *= pw;
    } else {
      out /= pw;
    }
  }
  out.canonicalize();
  return out;
}

WeilBound weil_bound(const QuadraticField& F, const KloostermanQuery& q, mpfr_prec_t prec) {
  validate(F, q);
  WeilBound out;
  int pr = pr_count(q.m);
  mpz_class coef = 1;
  mpz_mul_2exp(coef.get_mpz_t(), coef.get_mpz_t(), static_cast<unsigned long>(2 + pr));
  out.coefficient = coef;
  mpz_class two_f = 1;
  mpz_mul_2exp(two_f.get_mpz_t(), two_f.get_mpz_t(), static_cast<unsigned long>(F.f2()));
  out.radicand = mpq_class(two_f * F.discriminant() * q.m.norm()) * N_nu_mu_scaled(F, q);
  out.radicand.canonicalize();
  out.value = Interval::from_mpz(coef, prec) * sqrt(Interval::from_mpq(out.radicand, prec));
  return out;
}

namespace {

FElement delta_inverse(const QuadraticField& F) {
  require(F.delta().has_value(), Errc::PreconditionViolated, "the different has no totally positive generator");
  return FElement(F.one()) / FElement(*F.delta());
}

bool values_equal(const KloostermanValue& x, const KloostermanValue& y, bool& exact) {
  if (x.exact && y.exact) return x.exact->equals(*y.exact);
  exact = false;
  return x.approx.re.intersects(y.approx.re) && x.approx.im.intersects(y.approx.im);
}

struct Accum {
  std::optional<CyclotomicInteger> exact = CyclotomicInteger::integer(0);
  Interval re = Interval::from_int(0);
  Interval im = Interval::from_int(0);

  void add(const KloostermanValue& v, const mpz_class& w) {
    if (exact && v.exact) {
      *exact += *v.exact * w;
    } else {
      exact.reset();
    }
    Interval wi = Interval::from_mpz(w, re.prec());
    re += v.approx.re * wi;
    im += v.approx.im * wi;
  }
  KloostermanValue value() const { return {exact, {re, im}}; }
};

std::string describe(const KloostermanValue& v) {
  if (v.exact) return v.exact->to_string();
  return v.approx.re.to_string(10) + " + i" + v.approx.im.to_string(10);
}

OElement prefer_totally_positive(const QuadraticField& F, OElement g) {
  if (g.norm() < 0 && F.fu_norm() == -1) g = g * F.fundamental_unit();
  if (g.norm() > 0 && g.trace() < 0) g = -g;
  return g;
}

}  // namespace

Lemma41Result lemma41_value(const QuadraticField& F, const OElement& p, const OElement& e1, const OElement& e2,
                            const OElement& r, unsigned e, const KloostermanOptions& opt) {
  require(e >= 1, Errc::PreconditionViolated, "exponent e must be >= 1");
  require(r.is_zero() || r.div_exact(p).has_value(), Errc::PreconditionViolated, "p does not divide r");
  for (const OElement* u : {&e1, &e2}) {
    mpz_class n = u->norm();
    require(n == 1 || n == -1, Errc::PreconditionViolated, "epsilon must be a unit");
  }
  FElement di = delta_inverse(F);
  OElement q = e2 * p.pow(e);
  CyclotomicInteger v = kloosterman_exact(F, principal_query(di * FElement(e1), di * FElement(r), q), opt);
  Lemma41Result out;
  out.expected = e == 1 ? -1 : 0;
  auto iv = v.integer_value();
  out.holds = iv.has_value() && *iv == out.expected;
  out.value = iv ? *iv : mpz_class(0);
  return out;
}

IdentityReport selberg_check(const QuadraticField& F, const OElement& nu, const OElement& mu, const OElement& q,
                             const KloostermanOptions& opt) {
  FElement di = delta_inverse(F);
  IdentityReport rep;
  rep.within_hypotheses = F.narrow_h1();
  KloostermanValue lhs = kloosterman_value(F, principal_query(di * FElement(nu), di * FElement(mu), q), opt);
  std::vector<OElement> gens{q};
  if (!nu.is_zero()) gens.push_back(nu);
  if (!mu.is_zero()) gens.push_back(mu);
  Ideal G = Ideal::from_generators(gens);
  Accum rhs;
  bool gen_independent = true;
  for (const Ideal& D : divisors(G)) {
    auto g0 = is_principal(F, D);
    if (!g0) fail(Errc::NonPrincipalDivisor, "divisor " + D.to_string() + " is not principal");
    OElement g = prefer_totally_positive(F, *g0);
    auto nq = q.div_exact(g);
    auto numu = (nu * mu).div_exact(g * g);
    require(nq && numu, Errc::PreconditionViolated, "divisor generator does not divide the data");
    KloostermanValue term = kloosterman_value(F, principal_query(di, di * FElement(*numu), *nq), opt);
    rhs.add(term, abs(g.norm()));
    // A second generator must give the same term.
    OElement g2 = g * F.fundamental_unit();
    KloostermanValue term2 = kloosterman_value(
        F, principal_query(di, di * FElement(*(nu * mu).div_exact(g2 * g2)), *q.div_exact(g2)), opt);
    if (!values_equal(term, term2, rep.exact)) gen_independent = false;
  }
  KloostermanValue r = rhs.value();
  rep.holds = values_equal(lhs, r, rep.exact) && gen_independent;
  rep.detail = "lhs=" + describe(lhs) + " rhs=" + describe(r);
  if (!gen_independent) rep.detail += " (generator dependence detected)";
  return rep;
}

IdentityReport cor43_check(const QuadraticField& F, const FElement& nu, const FElement& mu, const OElement& q,
                           const OElement& p, unsigned m, unsigned n, const KloostermanOptions& opt) {
  require(m >= 1 && n >= 1, Errc::PreconditionViolated, "m and n must be >= 1");
  require(F.delta().has_value(), Errc::PreconditionViolated, "the different has no totally positive generator");
  auto qp = q.div_exact(p);
  require(qp.has_value(), Errc::PreconditionViolated, "p does not divide q");
  FElement dl(*F.delta());
  for (const FElement* v : {&nu, &mu}) {
    FElement dv = dl * *v;
    require(dv.is_integral(), Errc::PreconditionViolated, "element not in the inverse different");
    require(!dv.is_zero() && !dv.num().div_exact(p).has_value(), Errc::PreconditionViolated,
            "p must be coprime to delta * element (in particular nonzero)");
  }
  IdentityReport rep;
  rep.within_hypotheses = F.narrow_h1();
  FElement P(p);
  auto pw = [&](unsigned e) { return FElement(p.pow(e)); };
  KloostermanValue lhs = kloosterman_value(F, principal_query(nu * pw(m), mu * pw(n), q), opt);
  KloostermanValue t1 = kloosterman_value(F, principal_query(nu, mu * pw(m + n), q), opt);
  KloostermanValue t2 = kloosterman_value(F, principal_query(nu * pw(m - 1), mu * pw(n - 1), *qp), opt);
  Accum rhs;
  rhs.add(t1, 1);
  rhs.add(t2, abs(p.norm()));
  KloostermanValue r = rhs.value();
  rep.holds = values_equal(lhs, r, rep.exact);
  rep.detail = "lhs=" + describe(lhs) + " rhs=" + describe(r);
  return rep;
}

bool kloosterman_symmetry_check(const QuadraticField& F, const KloostermanQuery& q, const KloostermanOptions& opt) {
  KloostermanQuery sw{q.mu, q.nu, q.m, q.c};
  bool exact = true;
  return values_equal(kloosterman_value(F, q, opt), kloosterman_value(F, sw, opt), exact);
}

bool unit_twist_check(const QuadraticField& F, const KloostermanQuery& q, const OElement& eps,
                      const KloostermanOptions& opt) {
  FElement e(eps);
  KloostermanQuery a{q.nu, q.mu * e * e, q.m, q.c};
  KloostermanQuery b{q.nu, q.mu, q.m, q.c / e};
  bool exact = true;
  return values_equal(kloosterman_value(F, a, opt), kloosterman_value(F, b, opt), exact);
}

}  // namespace hpoincare
