#include "hpoincare/intfactor.hpp"

#include "hpoincare/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace hpoincare {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for 64-bit integers.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

std::uint64_t rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod_u64(x, x, n) + c) % n; };
    std::uint64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(std::uint64_t n, std::map<std::uint64_t, int>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  std::uint64_t d = rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

std::mutex cache_mutex;
std::map<std::uint64_t, PrimePowers> cache;

}  // namespace

PrimePowers factor_u64(std::uint64_t n) {
  require(n >= 1, Errc::PreconditionViolated, "factor_u64 needs n >= 1");
  require(n <= kFactorLimit, Errc::FactorizationTooLarge,
          "integer " + std::to_string(n) + " exceeds factorization limit 10^12");
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  std::map<std::uint64_t, int> acc;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p < 1000 && p * p <= m; ++p) {
    while (m % p == 0) {
      ++acc[p];
      m /= p;
    }
  }
  factor_rec(m, acc);
  PrimePowers result(acc.begin(), acc.end());
  std::lock_guard<std::mutex> lock(cache_mutex);
  if (cache.size() > 200000) cache.clear();
  cache.emplace(n, result);
  return result;
}

std::uint64_t to_u64(const mpz_class& n) {
  require(n >= 0, Errc::PreconditionViolated, "negative value where unsigned expected");
  require(mpz_sizeinbase(n.get_mpz_t(), 2) <= 64, Errc::FactorizationTooLarge, "integer exceeds 64 bits");
  std::uint64_t r = 0;
  mpz_export(&r, nullptr, -1, sizeof(r), 0, 0, n.get_mpz_t());
  return r;
}

std::int64_t to_i64(const mpz_class& n) {
  require(mpz_sizeinbase(n.get_mpz_t(), 2) <= 62, Errc::PreconditionViolated, "integer exceeds 62 bits");
  mpz_class a = abs(n);
  auto v = static_cast<std::int64_t>(to_u64(a));
  return n < 0 ? -v : v;
}

PrimePowers factor_mpz(const mpz_class& n) {
  mpz_class a = abs(n);
  require(a != 0, Errc::PreconditionViolated, "cannot factor 0");
  require(a <= mpz_class(std::to_string(kFactorLimit)), Errc::FactorizationTooLarge,
          "integer " + a.get_str() + " exceeds factorization limit 10^12");
  return factor_u64(to_u64(a));
}

std::vector<std::uint64_t> divisors_from(const PrimePowers& f) {
  std::vector<std::uint64_t> out{1};
  for (auto [p, e] : f) {
    std::size_t n = out.size();
    std::uint64_t pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < n; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int legendre(const mpz_class& a, std::uint64_t p) {
  mpz_class pp(std::to_string(p));
  return mpz_legendre(mpz_class(a % pp + pp).get_mpz_t(), pp.get_mpz_t());
}

std::optional<std::uint64_t> sqrt_mod_prime(const mpz_class& a, std::uint64_t p) {
  mpz_class pp(std::to_string(p));
  mpz_class r = a % pp;
  if (r < 0) r += pp;
  std::uint64_t n = to_u64(r);
  if (p == 2) return n;
  if (n == 0) return 0;
  if (powmod_u64(n, (p - 1) / 2, p) != 1) return std::nullopt;
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod_u64(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t c = powmod_u64(z, q, p);
  std::uint64_t x = powmod_u64(n, (q + 1) / 2, p);
  std::uint64_t t = powmod_u64(n, q, p);
  int m = s;
  while (t != 1) {
    int i = 0;
    std::uint64_t tt = t;
    while (tt != 1) {
      tt = mulmod_u64(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mulmod_u64(b, b, p);
    x = mulmod_u64(x, b, p);
    c = mulmod_u64(b, b, p);
    t = mulmod_u64(t, c, p);
    m = i;
  }
  return x;
}

bool is_squarefree(std::int64_t d) {
  std::uint64_t a = static_cast<std::uint64_t>(d < 0 ? -d : d);
  if (a == 0) return false;
  for (auto [p, e] : factor_u64(a)) {
    if (e > 1) return false;
  }
  return true;
}

}  // namespace hpoincare
