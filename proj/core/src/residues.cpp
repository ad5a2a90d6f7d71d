#include "hpoincare/residues.hpp"

#include "hpoincare/errors.hpp"
#include "hpoincare/intfactor.hpp"

#include <numeric>

namespace hpoincare {

namespace {

std::int64_t floor_mod(__int128 v, std::int64_t m) {
  __int128 r = v % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

__int128 floor_div(__int128 v, std::int64_t m) {
  __int128 q = v / m;
  if ((v % m != 0) && ((v < 0) != (m < 0))) --q;
  return q;
}

std::int64_t modinv(std::int64_t v, std::int64_t m) {
  // v is coprime to m
  if (m == 1) return 0;
  __int128 r0 = m, r1 = floor_mod(v, m), s0 = 0, s1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return floor_mod(s0, m);
}

}  // namespace

ResidueRing::ResidueRing(const Ideal& m, std::uint64_t budget) : m_(m) {
  require(m.norm() <= mpz_class(std::to_string(budget)), Errc::BudgetExceeded,
          "residue ring of norm " + m.norm().get_str() + " exceeds enumeration budget " + std::to_string(budget));
  a_ = m.a().get_si();
  b_ = m.b().get_si();
  c_ = m.c().get_si();
  t_ = m.basis().t();
  mpz_class n = m.basis().n();
  require(mpz_sizeinbase(n.get_mpz_t(), 2) < 40, Errc::BudgetExceeded, "field too large for residue arithmetic");
  n_ = n.get_si();
  for (const auto& [P, e] : factor_ideal(m)) {
    (void)e;
    primes_.push_back({P.a().get_si(), P.b().get_si(), P.c().get_si()});
  }
}

Residue ResidueRing::reduce(__int128 x, __int128 y) const {
  __int128 v = floor_div(y, c_);
  y -= v * c_;
  x -= v * b_;
  return {floor_mod(x, a_), static_cast<std::int64_t>(y)};
}

Residue ResidueRing::reduce(const OElement& x) const {
  // Reduce the mpz coordinates first so the 128-bit path cannot overflow.
  mpz_class y = x.b(), xx = x.a();
  mpz_class v;
  mpz_fdiv_q(v.get_mpz_t(), y.get_mpz_t(), m_.c().get_mpz_t());
  y -= v * m_.c();
  xx -= v * m_.b();
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), xx.get_mpz_t(), m_.a().get_mpz_t());
  return {r.get_si(), y.get_si()};
}

Residue ResidueRing::mul(const Residue& u, const Residue& v) const {
  __int128 yy = static_cast<__int128>(u.y) * v.y;
  __int128 x = static_cast<__int128>(u.x) * v.x + yy * n_;
  __int128 y = static_cast<__int128>(u.x) * v.y + static_cast<__int128>(u.y) * v.x + yy * t_;
  return reduce(x, y);
}

bool ResidueRing::in_prime(const PrimeBox& p, std::int64_t x, std::int64_t y) const {
  if (y % p.c != 0) return false;
  __int128 rest = static_cast<__int128>(x) - static_cast<__int128>(y / p.c) * p.b;
  return rest % p.a == 0;
}

bool ResidueRing::is_unit(const Residue& r) const {
  for (const auto& p : primes_) {
    if (in_prime(p, r.x, r.y)) return false;
  }
  return true;
}

Residue ResidueRing::inverse(const Residue& r) const {
  if (!is_unit(r)) fail(Errc::NotInvertible, "element is not invertible modulo " + m_.to_string());
  if (a_ == 1 && c_ == 1) return {0, 0};
  __int128 x = r.x, y = r.y;
  __int128 nx = x * x + t_ * x * y - static_cast<__int128>(n_) * y * y;
  std::int64_t nm = floor_mod(nx, a_);
  if (std::gcd(nm, a_) == 1) {
    std::int64_t inv = modinv(nm, a_);
    // conj(x) * N(x)^{-1}
    __int128 cx = (x + t_ * y) % a_ * inv;
    __int128 cy = (-y) % a_ * inv;
    return reduce(cx, cy);
  }
  return inverse_lattice(r);
}

Residue ResidueRing::inverse_lattice(const Residue& r) const {
  // Find integers (u, v, s, q) with u*X + v*X*w + s*a + q*(b + c w) = 1.
  OElement X(r.x, r.y, m_.basis());
  OElement Xw = X * OElement(0, 1, m_.basis());
  struct Row {
    mpz_class vx, vy;
    mpz_class co[4];
  };
  std::vector<Row> rows(4);
  OElement vecs[4] = {X, Xw, m_.basis1(), m_.basis2()};
  for (int i = 0; i < 4; ++i) {
    rows[i].vx = vecs[i].a();
    rows[i].vy = vecs[i].b();
    for (int j = 0; j < 4; ++j) rows[i].co[j] = (i == j) ? 1 : 0;
  }
  auto combine = [](Row& p, Row& q, bool use_y) {
    // Euclid on the chosen coordinate of p and q; afterwards q has 0 there.
    while (true) {
      mpz_class& pv = use_y ? p.vy : p.vx;
      mpz_class& qv = use_y ? q.vy : q.vx;
      if (qv == 0) return;
      mpz_class k;
      mpz_fdiv_q(k.get_mpz_t(), pv.get_mpz_t(), qv.get_mpz_t());
      p.vx -= k * q.vx;
      p.vy -= k * q.vy;
      for (int j = 0; j < 4; ++j) p.co[j] -= k * q.co[j];
      std::swap(p, q);
    }
  };
  for (int i = 1; i < 4; ++i) combine(rows[0], rows[i], true);
  for (int i = 2; i < 4; ++i) combine(rows[1], rows[i], false);
  // rows[0] = (B, g), rows[1] = (h, 0)
  Row& top = rows[0];
  Row& low = rows[1];
  if (abs(top.vy) != 1 || abs(low.vx) != 1) fail(Errc::NotInvertible, "element is not invertible");
  // (1, 0) = sign * low
  mpz_class sgn_low = low.vx;
  mpz_class u = low.co[0] * sgn_low;
  mpz_class v = low.co[1] * sgn_low;
  OElement inv(u, v, m_.basis());
  Residue res = reduce(inv);
  return res;
}

std::vector<OElement> ResidueRing::reps() const {
  std::vector<OElement> out;
  out.reserve(size());
  for (std::int64_t y = 0; y < c_; ++y) {
    for (std::int64_t x = 0; x < a_; ++x) out.push_back(to_element({x, y}));
  }
  return out;
}

std::vector<OElement> ResidueRing::unit_reps() const {
  std::vector<OElement> out;
  for (std::int64_t y = 0; y < c_; ++y) {
    for (std::int64_t x = 0; x < a_; ++x) {
      if (is_unit(Residue{x, y})) out.push_back(to_element({x, y}));
    }
  }
  return out;
}

std::uint64_t ResidueRing::unit_count() const { return to_u64(euler_phi(m_)); }

OElement inverse_by_scan(const ResidueRing& R, const OElement& x) {
  Residue r = R.reduce(x);
  Residue one = R.reduce(OElement(1, 0, x.basis()));
  for (const auto& cand : R.reps()) {
    Residue c = R.reduce(cand);
    if (R.mul(r, c) == one) return cand;
  }
  fail(Errc::NotInvertible, "no inverse found by scan");
}

}  // namespace hpoincare
