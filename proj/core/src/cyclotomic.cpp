#include "hpoincare/cyclotomic.hpp"

#include "hpoincare/errors.hpp"
#include "hpoincare/intfactor.hpp"

#include <cmath>
#include <numeric>

namespace hpoincare {

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

CyclotomicInteger::CyclotomicInteger(std::uint64_t order) : order_(order), coeffs_(order) {
  require(order >= 1, Errc::PreconditionViolated, "cyclotomic order must be positive");
}

CyclotomicInteger CyclotomicInteger::integer(const mpz_class& v, std::uint64_t order) {
  CyclotomicInteger r(order);
  r.coeffs_[0] = v;
  return r;
}

CyclotomicInteger CyclotomicInteger::root(std::uint64_t order, std::int64_t t) {
  CyclotomicInteger r(order);
  std::int64_t m = static_cast<std::int64_t>(order);
  r.coeffs_[static_cast<std::size_t>(((t % m) + m) % m)] = 1;
  return r;
}

CyclotomicInteger CyclotomicInteger::from_counts(std::uint64_t order, const std::vector<std::int64_t>& counts) {
  require(counts.size() == order, Errc::PreconditionViolated, "count vector length differs from order");
  CyclotomicInteger r(order);
  for (std::size_t j = 0; j < order; ++j) {
    if (counts[j] != 0) r.coeffs_[j] = static_cast<long>(counts[j]);
  }
  return r;
}

CyclotomicInteger CyclotomicInteger::lift(std::uint64_t L) const {
  require(L % order_ == 0, Errc::PreconditionViolated, "lift target is not a multiple of the order");
  if (L == order_) return *this;
  CyclotomicInteger r(L);
  std::uint64_t f = L / order_;
  for (std::uint64_t j = 0; j < order_; ++j) {
    if (coeffs_[j] != 0) r.coeffs_[j * f] = coeffs_[j];
  }
  return r;
}

CyclotomicInteger CyclotomicInteger::conj() const {
  CyclotomicInteger r(order_);
  for (std::uint64_t j = 0; j < order_; ++j) r.coeffs_[(order_ - j) % order_] = coeffs_[j];
  return r;
}

namespace {

// Zero test in Z[zeta_r] for squarefree r; v[k] is the coefficient of
// zeta_r^k.  primes lists the prime factors of r.
bool zero_squarefree(const std::vector<mpz_class>& v, std::uint64_t r, const std::vector<std::uint64_t>& primes,
                     std::size_t idx) {
  if (r == 1) return v[0] == 0;
  const std::uint64_t p = primes[idx];
  const std::uint64_t rp = r / p;
  // zeta_r^k = zeta_p^u zeta_rp^w with u = k * rp^{-1} mod p, w = k * p^{-1} mod rp.
  const std::uint64_t inv_rp = rp % p == 0 ? 0 : powmod_u64(rp % p, p - 2, p);
  std::uint64_t inv_p = 0;
  if (rp > 1) {
    mpz_class ip, pz(static_cast<unsigned long>(p)), mz(static_cast<unsigned long>(rp));
    mpz_invert(ip.get_mpz_t(), pz.get_mpz_t(), mz.get_mpz_t());
    inv_p = ip.get_ui();
  }
  std::vector<std::vector<mpz_class>> B(p, std::vector<mpz_class>(rp));
  for (std::uint64_t k = 0; k < r; ++k) {
    if (v[k] == 0) continue;
    std::uint64_t u = mulmod_u64(k % p, inv_rp, p);
    std::uint64_t w = rp > 1 ? mulmod_u64(k % rp, inv_p, rp) : 0;
    B[u][w] += v[k];
  }
  // Basis 1..zeta_p^{p-2}: coefficient of zeta_p^u is B_u - B_{p-1}.
  for (std::uint64_t u = 0; u + 1 < p; ++u) {
    std::vector<mpz_class> diff(rp);
    for (std::uint64_t w = 0; w < rp; ++w) diff[w] = B[u][w] - B[p - 1][w];
    if (!zero_squarefree(diff, rp, primes, idx + 1)) return false;
  }
  return true;
}

}  // namespace

bool CyclotomicInteger::is_zero() const {
  bool all_zero = true;
  for (const auto& c : coeffs_) {
    if (c != 0) {
      all_zero = false;
      break;
    }
  }
  if (all_zero) return true;
  std::vector<std::uint64_t> primes;
  std::uint64_t rad = 1;
  for (auto [p, e] : factor_u64(order_)) {
    (void)e;
    primes.push_back(p);
    rad *= p;
  }
  const std::uint64_t s = order_ / rad;
  // zeta_M^s is a primitive rad-th root and {zeta_M^i : i < s} is a basis
  // of Q(zeta_M) over Q(zeta_rad).
  for (std::uint64_t i = 0; i < s; ++i) {
    std::vector<mpz_class> slice(rad);
    for (std::uint64_t k = 0; k < rad; ++k) slice[k] = coeffs_[i + s * k];
    if (!zero_squarefree(slice, rad, primes, 0)) return false;
  }
  return true;
}

std::optional<mpz_class> CyclotomicInteger::integer_value() const {
  Interval re = real_part(128);
  Interval im = imag_part(128);
  if (!im.contains_zero()) return std::nullopt;
  double mid = re.mid_approx();
  if (!std::isfinite(mid)) return std::nullopt;
  mpz_class cand;
  Mpfr m = re.midpoint();
  mpfr_get_z(cand.get_mpz_t(), m.get(), MPFR_RNDN);
  if ((*this - integer(cand, order_)).is_zero()) return cand;
  return std::nullopt;
}

Interval CyclotomicInteger::real_part(mpfr_prec_t prec) const {
  Interval acc = Interval::from_mpz(coeffs_[0], prec);
  const std::uint64_t M = order_;
  for (std::uint64_t j = 1; 2 * j <= M; ++j) {
    mpz_class w = coeffs_[j];
    if (2 * j != M) w += coeffs_[M - j];
    if (w == 0) continue;
    acc += Interval::from_mpz(w, prec) * Interval::cos_2pi_ratio(static_cast<std::int64_t>(j),
                                                                 static_cast<std::int64_t>(M), prec);
  }
  return acc;
}

Interval CyclotomicInteger::imag_part(mpfr_prec_t prec) const {
  Interval acc(prec);
  const std::uint64_t M = order_;
  for (std::uint64_t j = 1; 2 * j < M; ++j) {
    mpz_class w = coeffs_[j] - coeffs_[M - j];
    if (w == 0) continue;
    acc += Interval::from_mpz(w, prec) * Interval::sin_2pi_ratio(static_cast<std::int64_t>(j),
                                                                 static_cast<std::int64_t>(M), prec);
  }
  return acc;
}

CyclotomicInteger& CyclotomicInteger::operator+=(const CyclotomicInteger& o) {
  std::uint64_t L = lcm_u64(order_, o.order_);
  if (L != order_) *this = lift(L);
  CyclotomicInteger ol = o.lift(L);
  for (std::uint64_t j = 0; j < L; ++j) coeffs_[j] += ol.coeffs_[j];
  return *this;
}

CyclotomicInteger& CyclotomicInteger::operator-=(const CyclotomicInteger& o) {
  std::uint64_t L = lcm_u64(order_, o.order_);
  if (L != order_) *this = lift(L);
  CyclotomicInteger ol = o.lift(L);
  for (std::uint64_t j = 0; j < L; ++j) coeffs_[j] -= ol.coeffs_[j];
  return *this;
}

CyclotomicInteger& CyclotomicInteger::operator*=(const mpz_class& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

CyclotomicInteger operator*(const CyclotomicInteger& x, const CyclotomicInteger& y) {
  std::uint64_t L = lcm_u64(x.order_, y.order_);
  CyclotomicInteger xl = x.lift(L), yl = y.lift(L);
  CyclotomicInteger r(L);
  for (std::uint64_t i = 0; i < L; ++i) {
    if (xl.coeffs_[i] == 0) continue;
    for (std::uint64_t j = 0; j < L; ++j) {
      if (yl.coeffs_[j] == 0) continue;
      r.coeffs_[(i + j) % L] += xl.coeffs_[i] * yl.coeffs_[j];
    }
  }
  return r;
}

std::string CyclotomicInteger::to_string() const {
  if (auto v = integer_value()) return v->get_str();
  std::string s;
  for (std::uint64_t j = 0; j < order_; ++j) {
    if (coeffs_[j] == 0) continue;
    if (!s.empty()) s += " + ";
    s += coeffs_[j].get_str() + "*z" + std::to_string(order_) + "^" + std::to_string(j);
  }
  return s.empty() ? "0" : s;
}

}  // namespace hpoincare
