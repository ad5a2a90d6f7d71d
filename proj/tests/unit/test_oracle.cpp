// Self-checks of the test oracle against hand-known values, so that library
// comparisons elsewhere rest on something.

#include "oracle/oracle.hpp"

#include <doctest.h>

using oracle::Elt;

TEST_CASE("fundamental units") {
  oracle::Field F5(5), F2(2), F3(3), F13(13);
  CHECK(F5.fu().p == mpq_class(1, 2));
  CHECK(F5.fu().q == mpq_class(1, 2));
  CHECK(F5.fu_norm() == -1);
  CHECK(F2.fu().p == 1);
  CHECK(F2.fu().q == 1);
  CHECK(F3.fu().p == 2);
  CHECK(F3.fu_norm() == 1);
  CHECK(F13.fu().p == mpq_class(3, 2));
  CHECK(F13.fu().q == mpq_class(1, 2));
  CHECK(F5.disc() == 5);
  CHECK(F2.disc() == 8);
}

TEST_CASE("arithmetic") {
  oracle::Field F(5);
  Elt w = F.basis(0, 1);
  CHECK(F.norm(w) == -1);
  CHECK(F.trace(w) == 1);
  Elt x = F.basis(3, 2);
  CHECK(F.norm(x) == 11);
  Elt y = F.div(F.mul(x, w), w);
  CHECK(y.p == x.p);
  CHECK(y.q == x.q);
  CHECK(F.integral(w));
  CHECK_FALSE(F.integral(Elt{mpq_class(1, 2), 0}));
  CHECK(F.totally_positive(F.eps_plus()));
}

TEST_CASE("residue systems") {
  oracle::Field F(5);
  // O/(2) is F_4, O/(2 + w) is F_5, O/(4) has 16 - 4 units.
  CHECK(oracle::ResidueSystem(F, F.basis(2, 0)).units().size() == 3);
  CHECK(oracle::ResidueSystem(F, F.basis(2, 1)).units().size() == 4);
  CHECK(oracle::ResidueSystem(F, F.basis(4, 0)).units().size() == 12);
  oracle::ResidueSystem R(F, F.basis(3, 2));
  CHECK(R.units().size() == 10);
  for (const auto& [x, y] : R.units()) CHECK(R.congruent(F.mul(x, y), Elt{1, 0}));
}

TEST_CASE("Kloosterman sums") {
  oracle::Field F(5);
  Elt dinv = F.div(Elt{1, 0}, F.basis(2, 1));  // totally positive generator of the different
  oracle::ResidueSystem R(F, F.basis(2, 0));
  auto s = oracle::kloosterman(F, R, dinv, dinv, F.basis(2, 0));
  CHECK(abs(s.re + 1) < 1e-50);
  CHECK(abs(s.im) < 1e-50);
}

TEST_CASE("Bessel") {
  auto j = oracle::besselJ(3, oracle::Real(1));
  CHECK(abs(j - oracle::Real("0.019563353982668405918")) < 1e-21);
}

TEST_CASE("canonical generators are orbit invariants") {
  oracle::Field F(5);
  Elt g = F.basis(3, 2);
  Elt c = F.canonical(g);
  for (long e = -4; e <= 4; ++e) {
    Elt h = F.canonical(F.mul(F.mul(g, F.pow(F.fu(), e)), Elt{-1, 0}));
    CHECK(h.p == c.p);
    CHECK(h.q == c.q);
  }
}
