#include "hpoincare/ideals.hpp"

#include "hpoincare/errors.hpp"
#include "hpoincare/intfactor.hpp"

#include <algorithm>
#include <cmath>

namespace hpoincare {

namespace {

// Incremental HNF of a rank-2 sublattice of Z^2 spanned by (x, y) vectors.
struct LatticeHnf {
  mpz_class A = 0;  // (A, 0)
  mpz_class B = 0;  // (B, C)
  mpz_class C = 0;

  void add(mpz_class x, mpz_class y) {
    if (y == 0) {
      mpz_gcd(A.get_mpz_t(), A.get_mpz_t(), x.get_mpz_t());
      return;
    }
    if (C == 0) {
      if (y < 0) {
        x = -x;
        y = -y;
      }
      B = x;
      C = y;
      return;
    }
    mpz_class g, s, u;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), C.get_mpz_t(), y.get_mpz_t());
    mpz_class rem = (y * B - C * x) / g;
    B = s * B + u * x;
    C = g;
    mpz_gcd(A.get_mpz_t(), A.get_mpz_t(), rem.get_mpz_t());
  }
};

}  // namespace

Ideal Ideal::unit(const QuadBasis& basis) {
  Ideal r;
  r.basis_ = basis;
  r.gen_ = OElement(1, 0, basis);
  return r;
}

Ideal Ideal::from_z_span(const std::vector<OElement>& vecs) {
  require(!vecs.empty(), Errc::ZeroIdeal, "empty generator list");
  LatticeHnf h;
  for (const auto& v : vecs) h.add(v.a(), v.b());
  require(h.A != 0 && h.C != 0, Errc::ZeroIdeal, "generators span a degenerate lattice");
  Ideal r;
  r.basis_ = vecs.front().basis();
  r.a_ = abs(h.A);
  r.c_ = h.C;
  mpz_fdiv_r(r.b_.get_mpz_t(), h.B.get_mpz_t(), r.a_.get_mpz_t());
  return r;
}

Ideal Ideal::from_generators(const std::vector<OElement>& gens) {
  std::vector<OElement> vecs;
  bool any = false;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    any = true;
    vecs.push_back(g);
    vecs.push_back(g * OElement(0, 1, g.basis()));
  }
  require(any, Errc::ZeroIdeal, "all generators are zero");
  Ideal r = from_z_span(vecs);
  if (gens.size() == 1) r.gen_ = gens.front();
  return r;
}

Ideal Ideal::principal(const OElement& g) { return from_generators({g}); }

Ideal Ideal::rational(const mpz_class& n, const QuadBasis& basis) {
  return principal(OElement(n, 0, basis));
}

Ideal Ideal::from_hnf(const QuadBasis& basis, const mpz_class& a, const mpz_class& b, const mpz_class& c) {
  require(a > 0 && c > 0 && b >= 0 && b < a, Errc::PreconditionViolated, "HNF triple out of range");
  Ideal r;
  r.basis_ = basis;
  r.a_ = a;
  r.b_ = b;
  r.c_ = c;
  OElement w(0, 1, basis);
  require(r.contains(r.basis1() * w) && r.contains(r.basis2() * w), Errc::PreconditionViolated,
          "HNF triple is not closed under multiplication by w");
  return r;
}

bool Ideal::contains(const OElement& x) const {
  if (!mpz_divisible_p(x.b().get_mpz_t(), c_.get_mpz_t())) return false;
  mpz_class v = x.b() / c_;
  mpz_class rest = x.a() - v * b_;
  return mpz_divisible_p(rest.get_mpz_t(), a_.get_mpz_t()) != 0;
}

bool Ideal::divisible_by_integer(const mpz_class& n) const {
  return mpz_divisible_p(a_.get_mpz_t(), n.get_mpz_t()) && mpz_divisible_p(b_.get_mpz_t(), n.get_mpz_t()) &&
         mpz_divisible_p(c_.get_mpz_t(), n.get_mpz_t());
}

Ideal Ideal::conj() const {
  Ideal r = from_z_span({basis1(), basis2().conj()});
  if (gen_) r.gen_ = gen_->conj();
  return r;
}

Ideal operator*(const Ideal& x, const Ideal& y) {
  Ideal r = Ideal::from_z_span({x.basis1() * y.basis1(), x.basis1() * y.basis2(), x.basis2() * y.basis1(),
                                x.basis2() * y.basis2()});
  if (x.gen_ && y.gen_) r.gen_ = *x.gen_ * *y.gen_;
  return r;
}

Ideal operator+(const Ideal& x, const Ideal& y) {
  return Ideal::from_z_span({x.basis1(), x.basis2(), y.basis1(), y.basis2()});
}

bool Ideal::operator<(const Ideal& o) const {
  mpz_class n1 = norm(), n2 = o.norm();
  if (n1 != n2) return n1 < n2;
  if (a_ != o.a_) return a_ < o.a_;
  if (b_ != o.b_) return b_ < o.b_;
  return c_ < o.c_;
}

std::string Ideal::to_string() const {
  return "{" + a_.get_str() + "," + b_.get_str() + "," + c_.get_str() + "}";
}

Ideal ideal_sum(const Ideal& x, const Ideal& y) { return x + y; }
Ideal ideal_product(const Ideal& x, const Ideal& y) { return x * y; }

Ideal ideal_exact_divide(const Ideal& x, const Ideal& y) {
  require(y.divides(x), Errc::NotDivisible, "ideal " + y.to_string() + " does not divide " + x.to_string());
  Ideal p = x * y.conj();
  mpz_class n = y.norm();
  require(p.divisible_by_integer(n), Errc::NotDivisible, "ideal quotient not integral");
  std::optional<OElement> g;
  if (x.stored_generator() && y.stored_generator()) g = x.stored_generator()->div_exact(*y.stored_generator());
  Ideal r = Ideal::from_z_span({OElement(p.a() / n, 0, p.basis()), OElement(p.b() / n, p.c() / n, p.basis())});
  if (g) {
    // Re-derive to attach the generator.
    Ideal rg = Ideal::principal(*g);
    if (rg == r) return rg;
  }
  return r;
}

Ideal ideal_intersection(const Ideal& x, const Ideal& y) { return ideal_exact_divide(x * y, x + y); }

Ideal ideal_pow(const Ideal& x, unsigned e) {
  Ideal r = Ideal::unit(x.basis());
  for (unsigned i = 0; i < e; ++i) r = r * x;
  return r;
}

PrimeSplitting prime_splitting(const QuadBasis& basis, std::uint64_t p) {
  require(is_prime_u64(p), Errc::PreconditionViolated, std::to_string(p) + " is not prime");
  const long t = basis.t();
  const mpz_class n = basis.n();
  const std::int64_t D = basis.half ? basis.d : 4 * basis.d;
  // roots of x^2 - t x - n mod p
  std::vector<std::uint64_t> roots;
  if (p == 2) {
    for (std::uint64_t r = 0; r < 2; ++r) {
      mpz_class v = mpz_class(static_cast<unsigned long>(r * r)) - t * static_cast<long>(r) - n;
      if (mpz_divisible_ui_p(v.get_mpz_t(), 2)) roots.push_back(r);
    }
  } else {
    auto s = sqrt_mod_prime(mpz_class(D), p);
    if (s) {
      std::uint64_t inv2 = (p + 1) / 2;
      std::uint64_t tt = static_cast<std::uint64_t>(t) % p;
      std::uint64_t r1 = mulmod_u64((tt + *s) % p, inv2, p);
      std::uint64_t r2 = mulmod_u64((tt + p - *s) % p, inv2, p);
      roots.push_back(r1);
      if (r2 != r1) roots.push_back(r2);
    }
  }
  PrimeSplitting out;
  mpz_class pz(std::to_string(p));
  if (roots.empty()) {
    out.kind = SplitKind::Inert;
    out.primes.push_back(Ideal::rational(pz, basis));
    return out;
  }
  out.kind = roots.size() == 2 ? SplitKind::Split : SplitKind::Ramified;
  for (auto r : roots) {
    OElement g(-mpz_class(std::to_string(r)), 1, basis);
    out.primes.push_back(Ideal::from_generators({OElement(pz, 0, basis), g}));
  }
  std::sort(out.primes.begin(), out.primes.end());
  return out;
}

IdealFactorization factor_ideal(const Ideal& x) {
  IdealFactorization out;
  if (x.is_unit()) return out;
  Ideal cur = x;
  for (auto [p, e] : factor_mpz(x.norm())) {
    (void)e;
    for (const auto& P : prime_splitting(x.basis(), p).primes) {
      int v = 0;
      while (P.divides(cur)) {
        cur = ideal_exact_divide(cur, P);
        ++v;
      }
      if (v > 0) out.emplace_back(P, v);
    }
  }
  require(cur.is_unit(), Errc::PreconditionViolated, "ideal factorization did not terminate at O");
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  return out;
}

std::vector<Ideal> divisors(const Ideal& x) {
  std::vector<Ideal> out{Ideal::unit(x.basis())};
  for (const auto& [P, e] : factor_ideal(x)) {
    std::size_t n = out.size();
    Ideal pk = Ideal::unit(x.basis());
    for (int i = 1; i <= e; ++i) {
      pk = pk * P;
      for (std::size_t j = 0; j < n; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Ideal> ideals_of_norm(const QuadBasis& basis, std::uint64_t n) {
  std::vector<Ideal> out{Ideal::unit(basis)};
  if (n == 1) return out;
  for (auto [p, e] : factor_u64(n)) {
    PrimeSplitting s = prime_splitting(basis, p);
    std::vector<Ideal> local;
    switch (s.kind) {
      case SplitKind::Inert:
        if (e % 2 == 0) local.push_back(ideal_pow(s.primes[0], static_cast<unsigned>(e / 2)));
        break;
      case SplitKind::Ramified:
        local.push_back(ideal_pow(s.primes[0], static_cast<unsigned>(e)));
        break;
      case SplitKind::Split:
        for (int i = 0; i <= e; ++i) {
          local.push_back(ideal_pow(s.primes[0], static_cast<unsigned>(i)) *
                          ideal_pow(s.primes[1], static_cast<unsigned>(e - i)));
        }
        break;
    }
    std::vector<Ideal> next;
    for (const auto& a : out) {
      for (const auto& b : local) next.push_back(a * b);
    }
    out = std::move(next);
    if (out.empty()) return out;
  }
  std::sort(out.begin(), out.end());
  return out;
}

int chi0(const Ideal& r, const Ideal& level) { return (r + level).is_unit() ? 1 : 0; }

long valuation(const Ideal& x, const Ideal& p) {
  require(!p.is_unit(), Errc::PreconditionViolated, "valuation at the unit ideal");
  long v = 0;
  Ideal cur = x;
  while (p.divides(cur)) {
    cur = ideal_exact_divide(cur, p);
    ++v;
  }
  return v;
}

std::optional<long> valuation(const OElement& x, const Ideal& p) {
  if (x.is_zero()) return std::nullopt;
  return valuation(Ideal::principal(x), p);
}

std::optional<long> valuation(const FElement& x, const Ideal& p) {
  if (x.is_zero()) return std::nullopt;
  long v = *valuation(x.num(), p);
  if (x.den() != 1) v -= valuation(Ideal::rational(x.den(), x.basis()), p);
  return v;
}

int pr_count(const Ideal& m) { return static_cast<int>(factor_ideal(m).size()); }

Ideal different_ideal(const QuadraticField& F) { return Ideal::principal(F.different_generator()); }

mpq_class N_nu_mu(const QuadraticField& F, const Ideal& m, const FElement& nu, const FElement& mu) {
  mpq_class out = 1;
  Ideal dif = different_ideal(F);
  for (const auto& [P, e] : factor_ideal(m)) {
    long ex = e - valuation(dif, P);
    if (auto v = valuation(nu, P)) ex = std::min(ex, *v);
    if (auto v = valuation(mu, P)) ex = std::min(ex, *v);
    mpz_class np = P.norm();
    mpz_class pw;
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

mpz_class euler_phi(const Ideal& m) {
  mpz_class r = 1;
  for (const auto& [P, e] : factor_ideal(m)) {
    mpz_class np = P.norm();
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), np.get_mpz_t(), static_cast<unsigned long>(e - 1));
    r *= pw * (np - 1);
  }
  return r;
}

std::optional<OElement> is_principal(const QuadraticField& F, const Ideal& x, std::uint64_t budget) {
  if (x.stored_generator()) return x.stored_generator();
  if (x.is_unit()) return F.one();
  // A generator balanced over powers of the fundamental unit satisfies
  // |sigma_i| <= sqrt(lambda * N) with lambda = sigma_1(fu).
  const double N = x.norm().get_d();
  const double lambda = embed(F.fundamental_unit(), 64).first.hi_up();
  const double bound = std::sqrt(lambda * N) * (1 + 1e-9) + 1e-6;
  const double sd = std::sqrt(static_cast<double>(F.d()));
  const double w1 = F.basis().half ? (1 + sd) / 2 : sd;
  const double w2 = F.basis().half ? (1 - sd) / 2 : -sd;
  const double cz = x.c().get_d();
  const double az = x.a().get_d();
  const double bz = x.b().get_d();
  // y = v c with |y| (w1 - w2) <= 2 bound
  const long vmax = static_cast<long>(std::floor(2 * bound / ((w1 - w2) * cz))) + 1;
  // Count candidates first.
  double total = 0;
  std::vector<std::pair<long, long>> ranges;
  for (long v = -vmax; v <= vmax; ++v) {
    double y = v * cz;
    double lo = std::max(-bound - y * w1, -bound - y * w2);
    double hi = std::min(bound - y * w1, bound - y * w2);
    if (lo > hi + 2) {
      ranges.emplace_back(1, 0);
      continue;
    }
    // x = u a + v b
    long ulo = static_cast<long>(std::floor((lo - v * bz) / az)) - 1;
    long uhi = static_cast<long>(std::ceil((hi - v * bz) / az)) + 1;
    ranges.emplace_back(ulo, uhi);
    total += static_cast<double>(uhi - ulo + 1);
  }
  if (total > static_cast<double>(budget)) {
    fail(Errc::SearchBudgetExceeded, "principality search needs " + std::to_string(static_cast<long long>(total)) +
                                         " candidates, budget " + std::to_string(budget));
  }
  const mpz_class target = x.norm();
  for (long v = -vmax; v <= vmax; ++v) {
    auto [ulo, uhi] = ranges[static_cast<std::size_t>(v + vmax)];
    for (long u = ulo; u <= uhi; ++u) {
      OElement g = x.basis1() * mpz_class(u) + x.basis2() * mpz_class(v);
      if (g.is_zero()) continue;
      mpz_class nm = abs(g.norm());
      if (nm == target) return canonical_generator(F, g);
    }
  }
  return std::nullopt;
}

bool narrow_class_number_is_one(const QuadraticField& F) {
  // h+ = h when some unit has norm -1, else h+ = 2h.
  if (F.fu_norm() != -1) return false;
  const double minkowski = std::sqrt(static_cast<double>(F.discriminant())) / 2;
  for (std::uint64_t p = 2; static_cast<double>(p) <= minkowski; ++p) {
    if (!is_prime_u64(p)) continue;
    for (const auto& P : prime_splitting(F.basis(), p).primes) {
      if (P.norm().get_d() > minkowski) continue;
      if (!is_principal(F, P)) return false;
    }
  }
  return true;
}

FractionalIdeal::FractionalIdeal(Ideal num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
  require(den_ > 0, Errc::PreconditionViolated, "fractional ideal denominator must be positive");
  reduce();
}

void FractionalIdeal::reduce() {
  if (den_ == 1) return;
  for (auto [p, e] : factor_mpz(den_)) {
    mpz_class pz(std::to_string(p));
    for (int i = 0; i < e && num_.divisible_by_integer(pz); ++i) {
      num_ = ideal_exact_divide(num_, Ideal::rational(pz, num_.basis()));
      den_ /= pz;
    }
  }
}

FractionalIdeal FractionalIdeal::principal(const FElement& x) {
  require(!x.is_zero(), Errc::ZeroIdeal, "principal fractional ideal of zero");
  return FractionalIdeal(Ideal::principal(x.num()), x.den());
}

mpq_class FractionalIdeal::norm() const {
  mpq_class q(num_.norm(), den_ * den_);
  q.canonicalize();
  return q;
}

FractionalIdeal FractionalIdeal::inverse() const {
  // (I/d)^{-1} = d * conj(I) / N(I)
  return FractionalIdeal(num_.conj() * Ideal::rational(den_, num_.basis()), num_.norm());
}

bool FractionalIdeal::contains(const FElement& x) const {
  if (x.is_zero()) return true;
  // x = y / e in I / d  <=>  d y in e I
  OElement lhs = x.num() * den_;
  Ideal rhs = num_ * Ideal::rational(x.den(), num_.basis());
  return rhs.contains(lhs);
}

FractionalIdeal operator*(const FractionalIdeal& x, const FractionalIdeal& y) {
  return FractionalIdeal(x.num_ * y.num_, x.den_ * y.den_);
}

std::string FractionalIdeal::to_string() const {
  if (den_ == 1) return num_.to_string();
  return num_.to_string() + "/" + den_.get_str();
}

}  // namespace hpoincare
