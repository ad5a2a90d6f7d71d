#include "hpoincare/errors.hpp"
#include "hpoincare/ideals.hpp"

#include <doctest.h>

#include <random>

using namespace hpoincare;

namespace {

Ideal random_ideal(const QuadraticField& F, std::mt19937_64& rng, long range = 30) {
  std::uniform_int_distribution<long> coord(-range, range);
  for (;;) {
    auto g = F.elem(coord(rng), coord(rng));
    if (!g.is_zero()) return Ideal::principal(g);
  }
}

// HNF oracle: the index of the lattice spanned by gens and w*gens equals a*c.
mpz_class lattice_index(const std::vector<OElement>& vs) {
  mpz_class g = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) g = gcd(g, vs[i].a() * vs[j].b() - vs[i].b() * vs[j].a());
  }
  return g;
}

}  // namespace

TEST_CASE("ideals from generators") {
  auto F = QuadraticField::make(5);
  Ideal p5 = Ideal::from_generators({F.elem(2, 1)});
  CHECK(p5.norm() == 5);
  Ideal two = Ideal::from_generators({F.elem(2, 0)});
  CHECK(two.norm() == 4);
  CHECK(two == Ideal::rational(2, F.basis()));
  Ideal one = Ideal::from_generators({F.elem(2, 0), F.elem(0, 1)});
  CHECK(one.is_unit());
  std::vector<OElement> z{F.elem(2, 0), F.elem(0, 2), F.elem(0, 1), F.elem(1, 1)};
  CHECK(lattice_index(z) == 1);
  CHECK_THROWS_AS(Ideal::from_generators({F.elem(0, 0)}), Error);
}

TEST_CASE("sum, product and exact division") {
  auto F = QuadraticField::make(5);
  Ideal two = Ideal::principal(F.integer(2));
  Ideal p5 = Ideal::principal(F.elem(2, 1));
  CHECK((two + p5).is_unit());
  CHECK((p5 * p5).norm() == 25);
  CHECK(p5 * p5 == Ideal::principal(F.integer(5)));
  CHECK(ideal_exact_divide(Ideal::principal(F.integer(10)), two) == Ideal::principal(F.integer(5)));
  CHECK_THROWS_AS(ideal_exact_divide(two, p5), Error);
}

TEST_CASE("prime splitting") {
  auto F = QuadraticField::make(5);
  auto s11 = prime_splitting(F.basis(), 11);
  CHECK(s11.kind == SplitKind::Split);
  REQUIRE(s11.primes.size() == 2);
  CHECK(s11.primes[0].norm() == 11);
  CHECK(prime_splitting(F.basis(), 2).kind == SplitKind::Inert);
  auto s5 = prime_splitting(F.basis(), 5);
  CHECK(s5.kind == SplitKind::Ramified);
  CHECK(s5.primes[0] * s5.primes[0] == Ideal::principal(F.integer(5)));
  CHECK(s5.primes[0] == Ideal::principal(F.elem(2, 1)));
}

TEST_CASE("factorization and divisors") {
  auto F = QuadraticField::make(5);
  auto f10 = factor_ideal(Ideal::principal(F.integer(10)));
  REQUIRE(f10.size() == 2);
  CHECK(f10[0].first == Ideal::principal(F.integer(2)));
  CHECK(f10[0].second == 1);
  CHECK(f10[1].first.norm() == 5);
  CHECK(f10[1].second == 2);
  CHECK(factor_ideal(Ideal::unit(F.basis())).empty());
  auto f11 = factor_ideal(Ideal::principal(F.integer(11)));
  REQUIRE(f11.size() == 2);
  CHECK(f11[0].first.norm() == 11);
  CHECK(f11[1].first.norm() == 11);
  CHECK(f11[0].first != f11[1].first);

  auto d4 = divisors(Ideal::principal(F.integer(4)));
  REQUIRE(d4.size() == 3);
  CHECK(d4[0].is_unit());
  CHECK(d4[1] == Ideal::principal(F.integer(2)));
  CHECK(d4[2] == Ideal::principal(F.integer(4)));
  CHECK(divisors(Ideal::principal(F.integer(11))).size() == 4);
  CHECK(divisors(Ideal::unit(F.basis())).size() == 1);
}

TEST_CASE("chi0") {
  auto F = QuadraticField::make(5);
  Ideal p5 = Ideal::principal(F.elem(2, 1));
  CHECK(chi0(Ideal::principal(F.integer(2)), p5) == 1);
  CHECK(chi0(p5, Ideal::principal(F.integer(5))) == 0);
  CHECK(chi0(Ideal::unit(F.basis()), Ideal::principal(F.integer(12))) == 1);
}

TEST_CASE("valuations, pr and N_nu_mu") {
  auto F = QuadraticField::make(5);
  FElement dinv = FElement(F.one()) / FElement(*F.delta());
  Ideal unit = Ideal::unit(F.basis());
  CHECK(N_nu_mu(F, unit, dinv, dinv) == 1);
  CHECK(pr_count(unit) == 0);
  Ideal two = Ideal::principal(F.integer(2));
  CHECK(N_nu_mu(F, two, dinv, dinv) == 1);
  CHECK(pr_count(two) == 1);
  FElement two_dinv = FElement(F.integer(2)) * dinv;
  CHECK(N_nu_mu(F, Ideal::principal(F.integer(4)), two_dinv, two_dinv) == 4);
  Ideal p5 = Ideal::principal(F.elem(2, 1));
  CHECK(*valuation(dinv, p5) == -1);
  CHECK(!valuation(FElement(F.integer(0)), p5).has_value());
}

TEST_CASE("principality and narrow class number") {
  auto F5 = QuadraticField::make(5);
  CHECK(narrow_class_number_is_one(F5));
  CHECK(narrow_class_number_is_one(QuadraticField::make(2)));
  CHECK_FALSE(narrow_class_number_is_one(QuadraticField::make(3)));
  auto p5 = prime_splitting(F5.basis(), 5).primes[0];
  auto g = is_principal(F5, p5);
  REQUIRE(g.has_value());
  CHECK(abs(g->norm()) == 5);
  CHECK(Ideal::principal(*g) == p5);
  // Q(sqrt 10) has class number 2: the primes above 2 are not principal.
  auto F10 = QuadraticField::make(10);
  CHECK_FALSE(is_principal(F10, prime_splitting(F10.basis(), 2).primes[0]).has_value());
}

TEST_CASE("ideal arithmetic properties on random inputs") {
  std::mt19937_64 rng(5);
  for (long d : {2, 5, 13, 3}) {
    auto F = QuadraticField::make(d);
    for (int i = 0; i < 200; ++i) {
      Ideal x = random_ideal(F, rng), y = random_ideal(F, rng);
      CHECK((x * y).norm() == x.norm() * y.norm());
      if (i % 4 != 0) continue;
      Ideal s = x + y;
      CHECK(s.divides(x));
      CHECK(s.divides(y));
      CHECK(s * ideal_intersection(x, y) == x * y);
      auto fac = factor_ideal(x);
      Ideal prod = Ideal::unit(F.basis());
      std::size_t count = 1;
      for (const auto& [P, e] : fac) {
        prod = prod * ideal_pow(P, static_cast<unsigned>(e));
        count *= static_cast<std::size_t>(e + 1);
        CHECK(valuation(x * y, P) == valuation(x, P) + valuation(y, P));
      }
      CHECK(prod == x);
      CHECK(divisors(x).size() == count);
    }
  }
}

TEST_CASE("fractional ideals") {
  auto F = QuadraticField::make(5);
  Ideal p5 = Ideal::principal(F.elem(2, 1));
  FractionalIdeal inv = FractionalIdeal(p5).inverse();
  CHECK(inv.norm() == mpq_class(1, 5));
  CHECK(FractionalIdeal(p5) * inv == FractionalIdeal(Ideal::unit(F.basis())));
  FElement dinv = FElement(F.one()) / FElement(*F.delta());
  CHECK(inv.contains(dinv));
  CHECK_FALSE(FractionalIdeal(Ideal::unit(F.basis())).contains(dinv));
  CHECK(FractionalIdeal::principal(dinv) == inv);
}
