#include "hpoincare/errors.hpp"
#include "hpoincare/serialize.hpp"

#include <doctest.h>

#include <random>

using namespace hpoincare;

TEST_CASE("element grammar") {
  auto F = QuadraticField::make(5);
  CHECK(parse_element(F, "(3,2)") == FElement(F.elem(3, 2)));
  CHECK(parse_element(F, "3+2*w") == FElement(F.elem(3, 2)));
  CHECK(parse_element(F, " 3 + 2*w ") == FElement(F.elem(3, 2)));
  CHECK(parse_element(F, "w-1") == FElement(F.elem(-1, 1)));
  CHECK(parse_element(F, "-w") == FElement(F.elem(0, -1)));
  CHECK(parse_element(F, "7") == FElement(F.integer(7)));
  CHECK(parse_element(F, "delta") == FElement(*F.delta()));
  CHECK(parse_element(F, "1/delta") == FElement(F.one()) / FElement(*F.delta()));
  CHECK(parse_element(F, "(1,1)/2") == FElement(F.elem(1, 1), 2));
  CHECK(parse_element(F, "4/6") == FElement(F.integer(2), 3));
  for (const char* bad : {"", "3+", "(1,2", "x", "1/0", "1/", "2**w", "(1,2,3)"}) {
    CHECK_THROWS_AS(parse_element(F, bad), Error);
  }
  CHECK_THROWS_AS(parse_integral(F, "1/2"), Error);
  CHECK(parse_integral(F, "(2,1)") == F.elem(2, 1));
}

TEST_CASE("ideal grammar") {
  auto F = QuadraticField::make(5);
  CHECK(parse_ideal(F, "2") == Ideal::principal(F.integer(2)));
  CHECK(parse_ideal(F, "(2,1)") == Ideal::principal(F.elem(2, 1)));
  CHECK(parse_ideal(F, "5,2,1") == Ideal::principal(F.elem(2, 1)));
  CHECK(parse_ideal(F, "{5,2,1}") == Ideal::principal(F.elem(2, 1)));
  CHECK_THROWS_AS(parse_ideal(F, "0"), Error);
  CHECK_THROWS_AS(parse_ideal(F, "5,1,1"), Error);
}

TEST_CASE("round trips") {
  std::mt19937_64 rng(21);
  for (long d : {5, 2, 10}) {
    auto F = QuadraticField::make(d);
    for (int i = 0; i < 100; ++i) {
      OElement x = F.elem(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 2001) - 1000);
      mpz_class den = 1 + rng() % 30;
      FElement y(x, den);
      CHECK(oelement_from_json(F, to_json(x)) == x);
      CHECK(felement_from_json(F, to_json(y)) == y);
      CHECK(parse_element(F, y.to_string()) == y);
      if (!x.is_zero()) {
        Ideal I = Ideal::principal(x);
        CHECK(ideal_from_json(F, to_json(I)) == I);
      }
      mpq_class q(static_cast<long>(rng() % 999) - 500, 1 + rng() % 77);
      q.canonicalize();
      CHECK(mpq_from_json(to_json(q)) == q);
    }
  }
  mpz_class huge("123456789012345678901234567890");
  CHECK(mpz_from_json(to_json(huge)) == huge);
}

TEST_CASE("interval and cyclotomic round trips") {
  Interval pi = Interval::pi();
  Interval back = interval_from_json(to_json(pi));
  CHECK(back.contains(pi));
  CHECK(back.width_up() < 1e-18);

  auto z = CyclotomicInteger::root(12, 5) * mpz_class(-3) + CyclotomicInteger::integer(7, 12);
  CHECK(cyclotomic_from_json(to_json(z)).equals(z));
}

TEST_CASE("coefficient functions") {
  auto F = QuadraticField::make(5);
  CoeffFunction f = CoeffFunction::indicator(Ideal::principal(F.integer(2)), mpq_class(3, 4)) +
                    CoeffFunction::indicator(Ideal::principal(F.elem(2, 1)), -5);
  CHECK(coeff_function_from_json(F, to_json(f)) == f);
}

TEST_CASE("Kloosterman document and cache key") {
  auto F = QuadraticField::make(5);
  FElement di = FElement(F.one()) / FElement(*F.delta());
  auto q = principal_query(di, di, F.integer(2));
  auto doc = kloosterman_json(F, q, kloosterman_value(F, q));
  CHECK(doc["version"] == "v1");
  CHECK(doc["exact"]["value_as_rational_if_real"] == "-1");
  CHECK(doc["weil_bound"]["coefficient"] == "8");
  // The key does not depend on which generator of m is stored.
  auto q2 = q;
  q2.m = Ideal::from_hnf(F.basis(), 2, 0, 2);
  CHECK(canonical_key(F, q) == canonical_key(F, q2));
  auto q3 = principal_query(di, di * FElement(F.elem(1, 1)), F.integer(2));
  CHECK(canonical_key(F, q) != canonical_key(F, q3));
}

TEST_CASE("certificate document") {
  auto F = QuadraticField::make(5);
  Ideal O = Ideal::unit(F.basis());
  auto P = make_params(F, 8, FractionalIdeal(O), O);
  CertifyBudget b;
  b.ladder = {{400, 3, mpq_class(1, 2)}};
  auto cert = certify_nonvanishing(P, FElement(F.one()), b);
  auto L = effective_constants(F, 8, mpq_class(1, 2));
  auto j = to_json(cert, &L);
  CHECK(j["version"] == "v1");
  CHECK(j["verdict"] == "NONZERO");
  CHECK(j["params"]["k"] == 8);
  CHECK(j.contains("ledger"));
  CHECK(j["ladder"].size() == 1);
  Interval fp = interval_from_json(j["finite_part"]);
  CHECK(fp.contains(cert.coefficient.finite_part));
}
