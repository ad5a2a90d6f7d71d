#include "hpoincare/ledger.hpp"

#include <doctest.h>

#include <cmath>

using namespace hpoincare;

namespace {

bool near(const Interval& I, double v, double tol) { return I.lo_down() <= v + tol && I.hi_up() >= v - tol; }

}  // namespace

TEST_CASE("unit sum is a geometric series") {
  auto F = QuadraticField::make(5);
  // Totally positive units eps_plus^j with eps_plus = (3 + sqrt 5)/2.
  double q = std::pow((3 + std::sqrt(5.0)) / 2, -0.5);
  double expected = 1 + 2 * q / (1 - q);
  CHECK(near(unit_sum(F, Interval::from_mpq(mpq_class(1, 2))), expected, 1e-12));
}

TEST_CASE("Dedekind zeta factors as zeta times L") {
  auto F = QuadraticField::make(5);
  // zeta_F(s) = zeta(s) L(s, chi_5), chi_5 = (1, -1, -1, 1, 0).
  long double z = 0, L = 0;
  const int chi[5] = {0, 1, -1, -1, 1};
  for (long n = 200000; n >= 1; --n) {
    long double t = 1.0L / (static_cast<long double>(n) * n * n * n);
    z += t;
    L += chi[n % 5] * t;
  }
  double expected = static_cast<double>(z * L);
  auto v = dedekind_zeta(F, Interval::from_int(4));
  CHECK(near(v, expected, 1e-12));
  CHECK(v.width_up() < 1e-6);
}

TEST_CASE("divisor constant") {
  // max tau(m)/sqrt(m) = sqrt 3, attained at m = 12.
  auto c = divisor_constant(mpq_class(1, 2));
  CHECK(near(c, std::sqrt(3.0), 1e-12));
  auto c4 = divisor_constant(mpq_class(1, 4));
  double best = 0;
  for (long m = 1; m <= 200000; ++m) {
    long t = 0;
    for (long d = 1; d * d <= m; ++d) {
      if (m % d == 0) t += (d * d == m) ? 1 : 2;
    }
    best = std::max(best, t / std::pow(static_cast<double>(m), 0.25));
  }
  CHECK(c4.hi_up() >= best);
}

TEST_CASE("power tail bounds the sum") {
  auto t = power_tail(10, Interval::from_int(3));
  long double s = 0;
  for (long m = 10; m < 2000000; ++m) s += 1.0L / (static_cast<long double>(m) * m * m);
  CHECK(t.hi_up() >= static_cast<double>(s));
  CHECK(t.hi_up() < 2 * static_cast<double>(s));
}

TEST_CASE("ledger at d = 5, k = 8") {
  auto F = QuadraticField::make(5);
  auto L = effective_constants(F, 8, mpq_class(1, 2));
  CHECK(near(L.C1, (3 + std::sqrt(5.0)) / 2, 1e-12));
  CHECK(near(L.C8, 2 + std::sqrt(5.0), 1e-10));
  CHECK(near(L.zeta, 1.00015169, 1e-7));
  CHECK(L.C.certainly_positive());
  for (const Interval* c : {&L.C1, &L.C2, &L.C3, &L.C4, &L.C5, &L.C6, &L.C7, &L.C8, &L.C9}) {
    CHECK(c->certainly_positive());
    CHECK(c->width_up() < 1e-6 * c->hi_up());
  }
}

TEST_CASE("thresholds grow with the weight and the level") {
  auto F = QuadraticField::make(5);
  Ideal O = Ideal::unit(F.basis());
  Interval prev = Interval::from_int(0);
  for (long k = 4; k <= 40; k += 4) {
    auto t = threshold_thm32(F, k, O, O, mpq_class(1, 2));
    CHECK(prev.certainly_less(t));
    prev = t;
  }
  prev = Interval::from_int(0);
  for (long n : {1, 4, 9, 20, 44, 100}) {
    auto t = threshold_thm32(F, 8, O, Ideal::rational(n, F.basis()), mpq_class(1, 2));
    if (n > 1) CHECK(prev.certainly_less(t));
    prev = t;
  }
}

TEST_CASE("reduced threshold matches the integral one for integral c") {
  auto F = QuadraticField::make(5);
  Ideal O = Ideal::unit(F.basis());
  Ideal c = Ideal::principal(F.elem(2, 1));
  auto direct = threshold_thm32(F, 8, c, O, mpq_class(1, 2));
  auto reduced = threshold_cor33(F, 8, FractionalIdeal(c), O, FElement(F.one()));
  CHECK(direct.intersects(reduced));
  CHECK(threshold_thm35(F, 8, O).certainly_positive());
}
