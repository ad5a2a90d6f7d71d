#pragma once

// Rational integer helpers: primality, factorization and square roots mod p.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace hpoincare {

using PrimePowers = std::vector<std::pair<std::uint64_t, int>>;

inline constexpr std::uint64_t kFactorLimit = 1000000000000ULL;  // 10^12

bool is_prime_u64(std::uint64_t n);

// Sorted prime factorization.  Results are memoized in a process-wide cache.
// Throws FactorizationTooLarge above kFactorLimit.
PrimePowers factor_u64(std::uint64_t n);
PrimePowers factor_mpz(const mpz_class& n);

std::vector<std::uint64_t> divisors_from(const PrimePowers& f);

std::uint64_t to_u64(const mpz_class& n);
std::int64_t to_i64(const mpz_class& n);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);

// Legendre symbol (a/p) for odd prime p.
int legendre(const mpz_class& a, std::uint64_t p);
// Some r with r^2 = a mod p, p prime (p = 2 allowed); nullopt if none.
std::optional<std::uint64_t> sqrt_mod_prime(const mpz_class& a, std::uint64_t p);

bool is_squarefree(std::int64_t d);

}  // namespace hpoincare
