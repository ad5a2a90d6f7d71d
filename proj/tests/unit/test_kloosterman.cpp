#include "hpoincare/errors.hpp"
#include "hpoincare/kloosterman.hpp"

#include "oracle/oracle.hpp"

#include <doctest.h>

#include <random>

using namespace hpoincare;

namespace {

oracle::Elt to_oracle(const oracle::Field& O, const OElement& x) { return O.basis(x.a(), x.b()); }

oracle::Elt to_oracle(const oracle::Field& O, const FElement& x) {
  oracle::Elt n = to_oracle(O, x.num());
  return {n.p / x.den(), n.q / x.den()};
}

FElement delta_inv(const QuadraticField& F) { return FElement(F.one()) / FElement(*F.delta()); }

bool encloses(const Interval& I, const oracle::Real& v) {
  return oracle::Real(I.lo_down()) <= v + 1e-12 && v - 1e-12 <= oracle::Real(I.hi_up());
}

}  // namespace

TEST_CASE("hand-checked sums") {
  auto F = QuadraticField::make(5);
  FElement di = delta_inv(F);
  auto two = F.integer(2);
  auto s1 = kloosterman_exact(F, principal_query(di, FElement(F.integer(0)), two));
  CHECK(s1.integer_value() == mpz_class(-1));
  auto s2 = kloosterman_exact(F, principal_query(di, di, two));
  CHECK(s2.integer_value() == mpz_class(-1));
  // Unit modulus: a single term e(Tr(nu + mu)) = 1 for integral nu + mu.
  auto s3 = kloosterman_exact(F, principal_query(FElement(F.one()), FElement(F.elem(2, 3)), F.one()));
  CHECK(s3.integer_value() == mpz_class(1));
}

TEST_CASE("Weil bound example") {
  auto F = QuadraticField::make(5);
  FElement di = delta_inv(F);
  WeilBound w = weil_bound(F, principal_query(di, di, F.integer(2)));
  CHECK(w.coefficient == 8);
  CHECK(w.radicand == 80);
  // 8 sqrt(80) = 32 sqrt(5) = 71.5541...
  CHECK(w.value.lo_down() < 71.55418);
  CHECK(w.value.hi_up() > 71.55417);
  CHECK(w.value.width_up() < 1e-15);
}

TEST_CASE("membership validation") {
  auto F = QuadraticField::make(5);
  auto q = principal_query(FElement(F.one(), 3), FElement(F.one()), F.integer(2));
  CHECK_THROWS_AS(validate(F, q), Error);
  CHECK_THROWS_AS(principal_query(FElement(F.one()), FElement(F.one()), F.integer(0)), Error);
}

TEST_CASE("prime power sums") {
  auto F = QuadraticField::make(5);
  const OElement eps = F.eps_plus();
  for (const OElement& p : {F.integer(2), F.elem(2, 1), F.elem(3, 2)}) {
    for (const OElement& e2 : {F.one(), eps}) {
      for (unsigned e = 1; e <= 3; ++e) {
        for (long r : {0, 1, 2}) {
          auto res = lemma41_value(F, p, F.one(), e2, p * mpz_class(r), e);
          CHECK_MESSAGE(res.holds, "p=" << p.to_string() << " e=" << e << " r=" << r << " got " << res.value);
        }
      }
    }
  }
  CHECK_THROWS_AS(lemma41_value(F, F.integer(2), F.one(), F.one(), F.one(), 1), Error);
}

TEST_CASE("Selberg identity on small moduli") {
  for (long d : {5, 2}) {
    auto F = QuadraticField::make(d);
    std::vector<OElement> grid{F.integer(0), F.one(), F.elem(1, 1), F.integer(2), F.elem(0, 2)};
    for (const OElement& q : {F.integer(2), F.integer(4), F.elem(3, 1), F.integer(6)}) {
      for (const auto& nu : grid) {
        for (const auto& mu : grid) {
          auto rep = selberg_check(F, nu, mu, q);
          CHECK_MESSAGE(rep.holds, "d=" << d << " q=" << q.to_string() << " " << rep.detail);
          CHECK(rep.within_hypotheses);
        }
      }
    }
  }
}

TEST_CASE("Hecke-type Kloosterman recursion") {
  auto F = QuadraticField::make(5);
  FElement di = delta_inv(F);
  const OElement p = F.elem(2, 1);
  for (const OElement& q : {p, p * p, p * F.integer(2)}) {
    for (unsigned m = 1; m <= 2; ++m) {
      for (unsigned n = 1; n <= 2; ++n) {
        auto rep = cor43_check(F, di, di * FElement(F.elem(1, 1)), q, p, m, n);
        CHECK_MESSAGE(rep.holds, rep.detail);
      }
    }
  }
  // p must be coprime to delta nu and delta mu; zero is not.
  CHECK_THROWS_AS(cor43_check(F, FElement(F.integer(0)), di, p, p, 1, 1), Error);
  CHECK_THROWS_AS(cor43_check(F, di * FElement(p), di, p, p, 1, 1), Error);
}

TEST_CASE("symmetry, reality and unit twist") {
  std::mt19937_64 rng(17);
  auto F = QuadraticField::make(5);
  FElement di = delta_inv(F);
  std::uniform_int_distribution<long> c(-6, 6);
  for (int i = 0; i < 40; ++i) {
    OElement q;
    do {
      q = F.elem(c(rng), c(rng));
    } while (q.is_zero() || abs(q.norm()) > 200);
    auto query = principal_query(di * FElement(F.elem(c(rng), c(rng))), di * FElement(F.elem(c(rng), c(rng))), q);
    CHECK(kloosterman_symmetry_check(F, query));
    CHECK(unit_twist_check(F, query, F.fundamental_unit()));
    auto v = kloosterman_value(F, query);
    REQUIRE(v.exact.has_value());
    CHECK(v.exact->is_real());
    CHECK(v.approx.im.contains_zero());
    CHECK(v.exact->real_part().intersects(v.approx.re));
    // Weil bound.
    CHECK(abs(v.approx.re).lo_down() <= weil_bound(F, query).value.hi_up());
  }
}

TEST_CASE("order cap falls back to intervals") {
  auto F = QuadraticField::make(5);
  FElement di = delta_inv(F);
  auto query = principal_query(di, di * FElement(F.elem(1, 1)), F.elem(7, 3));
  KloostermanOptions tight;
  tight.order_cap = 2;
  auto v = kloosterman_value(F, query, tight);
  CHECK_FALSE(v.exact.has_value());
  CHECK_THROWS_AS(kloosterman_exact(F, query, tight), Error);
  auto full = kloosterman_value(F, query);
  REQUIRE(full.exact.has_value());
  CHECK(full.exact->real_part().intersects(v.approx.re));
}

TEST_CASE("agreement with the independent enumeration") {
  std::mt19937_64 rng(41);
  for (long d : {5, 2, 13}) {
    auto F = QuadraticField::make(d);
    oracle::Field O(d);
    FElement dinv = FElement(F.one()) / FElement(F.different_generator());
    std::uniform_int_distribution<long> c(-5, 5);
    for (int i = 0; i < 30; ++i) {
      OElement q;
      do {
        q = F.elem(c(rng), c(rng));
      } while (q.is_zero() || abs(q.norm()) > 150);
      FElement nu = dinv * FElement(F.elem(c(rng), c(rng)));
      FElement mu = dinv * FElement(F.elem(c(rng), c(rng)));
      auto v = kloosterman_float(F, principal_query(nu, mu, q));
      oracle::ResidueSystem R(O, to_oracle(O, q));
      auto w = oracle::kloosterman(O, R, to_oracle(O, nu), to_oracle(O, mu), to_oracle(O, q));
      CHECK(encloses(v.re, w.re));
      CHECK(encloses(v.im, w.im));
    }
  }
}
