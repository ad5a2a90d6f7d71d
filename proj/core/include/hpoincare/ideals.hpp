#pragma once

// Integral and fractional ideals of the ring of integers, stored as the
// Hermite normal form Z-basis {a, b + c*w} with 0 <= b < a and c | a, c | b.

#include "hpoincare/field.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hpoincare {

class Ideal {
 public:
  Ideal() = default;

  static Ideal unit(const QuadBasis& basis);
  static Ideal principal(const OElement& g);
  static Ideal rational(const mpz_class& n, const QuadBasis& basis);
  // O-module generated by gens.  Throws ZeroIdeal if all are zero.
  static Ideal from_generators(const std::vector<OElement>& gens);
  // Z-module spanned by vecs, which must already be an ideal.
  static Ideal from_z_span(const std::vector<OElement>& vecs);
  // Validates the HNF triple.
  static Ideal from_hnf(const QuadBasis& basis, const mpz_class& a, const mpz_class& b, const mpz_class& c);

  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  const mpz_class& c() const { return c_; }
  const QuadBasis& basis() const { return basis_; }
  mpz_class norm() const { return a_ * c_; }
  bool is_unit() const { return a_ == 1 && c_ == 1; }
  OElement basis1() const { return {a_, 0, basis_}; }
  OElement basis2() const { return {b_, c_, basis_}; }
  // A generator recorded at construction time, if any.
  const std::optional<OElement>& stored_generator() const { return gen_; }

  bool contains(const OElement& x) const;
  // this | other, i.e. other is contained in this.
  bool divides(const Ideal& other) const { return contains(other.basis1()) && contains(other.basis2()); }
  bool divisible_by_integer(const mpz_class& n) const;
  Ideal conj() const;

  friend Ideal operator*(const Ideal& x, const Ideal& y);
  friend Ideal operator+(const Ideal& x, const Ideal& y);

  bool operator==(const Ideal& o) const { return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && basis_ == o.basis_; }
  bool operator!=(const Ideal& o) const { return !(*this == o); }
  // Norm first, then (a, b, c).
  bool operator<(const Ideal& o) const;

  std::string to_string() const;

 private:
  QuadBasis basis_{};
  mpz_class a_ = 1;
  mpz_class b_ = 0;
  mpz_class c_ = 1;
  std::optional<OElement> gen_;
};

Ideal ideal_sum(const Ideal& x, const Ideal& y);
Ideal ideal_product(const Ideal& x, const Ideal& y);
Ideal ideal_intersection(const Ideal& x, const Ideal& y);
// x * y^{-1}; throws NotDivisible unless y | x.
Ideal ideal_exact_divide(const Ideal& x, const Ideal& y);
Ideal ideal_pow(const Ideal& x, unsigned e);

enum class SplitKind { Split, Inert, Ramified };

struct PrimeSplitting {
  SplitKind kind;
  std::vector<Ideal> primes;  // sorted
};

PrimeSplitting prime_splitting(const QuadBasis& basis, std::uint64_t p);

using IdealFactorization = std::vector<std::pair<Ideal, int>>;

IdealFactorization factor_ideal(const Ideal& x);
std::vector<Ideal> divisors(const Ideal& x);
// All integral ideals of norm exactly n, sorted.
std::vector<Ideal> ideals_of_norm(const QuadBasis& basis, std::uint64_t n);

int chi0(const Ideal& r, const Ideal& level);

// nullopt stands for +infinity (x = 0).
std::optional<long> valuation(const OElement& x, const Ideal& p);
std::optional<long> valuation(const FElement& x, const Ideal& p);
long valuation(const Ideal& x, const Ideal& p);

int pr_count(const Ideal& m);
// prod_{p | m} N(p)^{min(v_p(nu), v_p(mu), v_p(m) - v_p(different))}.
mpq_class N_nu_mu(const QuadraticField& F, const Ideal& m, const FElement& nu, const FElement& mu);
Ideal different_ideal(const QuadraticField& F);

// Number of units of O / m.
mpz_class euler_phi(const Ideal& m);

inline constexpr std::uint64_t kPrincipalSearchBudget = 10000000;

// Some generator, or nullopt if the ideal is not principal.  Throws
// SearchBudgetExceeded if the bounded search would exceed the budget.
std::optional<OElement> is_principal(const QuadraticField& F, const Ideal& x,
                                     std::uint64_t budget = kPrincipalSearchBudget);
bool narrow_class_number_is_one(const QuadraticField& F);

class FractionalIdeal {
 public:
  FractionalIdeal() = default;
  FractionalIdeal(Ideal num, mpz_class den = 1);  // NOLINT(google-explicit-constructor)
  static FractionalIdeal principal(const FElement& x);

  const Ideal& num() const { return num_; }
  const mpz_class& den() const { return den_; }
  bool is_integral() const { return den_ == 1; }
  mpq_class norm() const;
  FractionalIdeal inverse() const;
  bool contains(const FElement& x) const;

  friend FractionalIdeal operator*(const FractionalIdeal& x, const FractionalIdeal& y);
  bool operator==(const FractionalIdeal& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const FractionalIdeal& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void reduce();

  Ideal num_;
  mpz_class den_ = 1;
};

}  // namespace hpoincare
