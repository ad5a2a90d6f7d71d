#include "hpoincare/errors.hpp"
#include "hpoincare/hecke.hpp"

#include <doctest.h>

#include <random>

using namespace hpoincare;

namespace {

// Every integral ideal of norm <= bound, by scanning Hermite normal forms.
std::vector<Ideal> all_ideals(const QuadBasis& basis, long bound) {
  std::vector<Ideal> out;
  for (long n = 1; n <= bound; ++n) {
    for (long c = 1; c <= n; ++c) {
      if (n % c) continue;
      long a = n / c;
      for (long b = 0; b < a; ++b) {
        try {
          out.push_back(Ideal::from_hnf(basis, a, b, c));
        } catch (const Error&) {
        }
      }
    }
  }
  return out;
}

// Direct evaluation of the divisor sum over the candidate list.
CoeffFunction brute_action(const HeckeContext& ctx, const Ideal& m, const CoeffFunction& f,
                           const std::vector<Ideal>& ideals) {
  CoeffFunction out;
  for (const Ideal& a : ideals) {
    Ideal g = ideal_sum(a, m);
    mpq_class total = 0;
    for (const Ideal& r : ideals) {
      if (r.norm() > g.norm() || ideal_sum(r, g) != r) continue;
      if (!chi0(r, ctx.n)) continue;
      Ideal am = ideal_product(a, m), r2 = ideal_product(r, r);
      if (ideal_sum(am, r2) != r2) continue;
      mpz_class w;
      mpz_class nr = r.norm();
      mpz_pow_ui(w.get_mpz_t(), nr.get_mpz_t(), static_cast<unsigned long>(ctx.k - 1));
      total += mpq_class(w) * f.at(ideal_exact_divide(am, r2));
    }
    if (total != 0) out.add(a, total);
  }
  return out;
}

CoeffFunction random_function(std::mt19937_64& rng, const std::vector<Ideal>& pool, std::size_t max_support) {
  CoeffFunction f;
  std::size_t n = 1 + rng() % max_support;
  for (std::size_t i = 0; i < n; ++i) f.add(pool[rng() % pool.size()], mpq_class(static_cast<long>(rng() % 19) - 9, 1 + rng() % 4));
  return f;
}

}  // namespace

TEST_CASE("worked examples") {
  auto F = QuadraticField::make(5);
  Ideal O = Ideal::unit(F.basis());
  Ideal two = Ideal::principal(F.integer(2));
  HeckeContext ctx{8, O};

  auto out = hecke_action(ctx, two, CoeffFunction::indicator(O));
  CHECK(out == CoeffFunction::indicator(two, 16384));

  HeckeContext lvl2{8, two};
  CHECK(hecke_action(lvl2, two, CoeffFunction::indicator(two)) == CoeffFunction::indicator(O));

  CoeffFunction f = CoeffFunction::indicator(O) + CoeffFunction::indicator(Ideal::principal(F.integer(4)));
  CHECK(pairing(ctx, two, two, f) == 16385);

  Ideal p5 = Ideal::principal(F.elem(2, 1));
  CHECK(pairing(ctx, two, p5, f) == f.at(ideal_product(two, p5)));
}

TEST_CASE("action agrees with direct enumeration") {
  std::mt19937_64 rng(5);
  for (long d : {5, 2, 10}) {
    auto F = QuadraticField::make(d);
    auto pool = all_ideals(F.basis(), 20);
    auto big = all_ideals(F.basis(), 20 * 12);
    for (int i = 0; i < 15; ++i) {
      Ideal level = pool[rng() % 6];
      HeckeContext ctx{4 + 2 * static_cast<long>(rng() % 3), level};
      auto f = random_function(rng, pool, 5);
      Ideal m = pool[rng() % pool.size()];
      if (m.norm() > 12) continue;
      CHECK(hecke_action(ctx, m, f) == brute_action(ctx, m, f, big));
    }
  }
}

TEST_CASE("algebraic properties") {
  std::mt19937_64 rng(11);
  auto F = QuadraticField::make(5);
  auto pool = all_ideals(F.basis(), 60);
  Ideal O = Ideal::unit(F.basis());
  for (int i = 0; i < 60; ++i) {
    HeckeContext ctx{8, pool[rng() % 8]};
    auto f = random_function(rng, pool, 6);
    auto g = random_function(rng, pool, 6);
    Ideal m = pool[rng() % pool.size()], q = pool[rng() % pool.size()];
    CHECK(pairing(ctx, m, q, f) == pairing(ctx, q, m, f));
    CHECK(hecke_action(ctx, O, f) == f);
    CHECK(hecke_action(ctx, m, f + g) == hecke_action(ctx, m, f) + hecke_action(ctx, m, g));
    CHECK(hecke_action(ctx, m, mpq_class(3, 7) * f) == mpq_class(3, 7) * hecke_action(ctx, m, f));
    if (m.norm() * q.norm() <= 400) CHECK(check_commutativity(ctx, m, q, f));
    if (ideal_sum(m, q).is_unit()) {
      CHECK(check_multiplicativity(ctx, m, q, f));
    } else {
      CHECK_THROWS_AS(check_multiplicativity(ctx, m, q, f), Error);
    }
  }
}

TEST_CASE("linear relations on a grid") {
  auto F = QuadraticField::make(5);
  auto pool = all_ideals(F.basis(), 30);
  HeckeContext ctx{8, Ideal::unit(F.basis())};
  std::vector<CoeffFunction> fs;
  for (const Ideal& a : pool) fs.push_back(CoeffFunction::indicator(a));
  Ideal two = Ideal::principal(F.integer(2));
  auto zero = check_linear_relation(ctx, {{two, 1}, {two, -1}}, pool, fs);
  CHECK(zero.vanishes_on_grid);
  CHECK(zero.grid_points == pool.size() * fs.size());
  auto single = check_linear_relation(ctx, {{two, 1}}, pool, fs);
  CHECK_FALSE(single.vanishes_on_grid);
  REQUIRE(single.witness_q.has_value());
  CHECK(single.witness_value != 0);
}
