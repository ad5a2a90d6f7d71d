#include "hpoincare/bessel.hpp"

#include "oracle/oracle.hpp"

#include <doctest.h>

#include <random>

using namespace hpoincare;

namespace {

bool encloses(const Interval& I, const oracle::Real& v) {
  oracle::Real lo, hi;
  mpfr_set(lo.backend().data(), I.lo(), MPFR_RNDD);
  mpfr_set(hi.backend().data(), I.hi(), MPFR_RNDU);
  return lo <= v && v <= hi;
}

}  // namespace

TEST_CASE("reference value") {
  auto v = besselJ(3, Interval::from_int(1));
  CHECK_FALSE(v.precision_exhausted);
  CHECK(v.value.lo_down() <= 0.019563353982668406);
  CHECK(v.value.hi_up() >= 0.019563353982668405);
  CHECK(v.value.width_up() < 1e-20);
  CHECK(besselJ(5, Interval::from_int(0)).value.is_point());
  CHECK(besselJ(5, Interval::from_int(0)).value.contains_zero());
}

TEST_CASE("random samples against mpfr_jn") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> order(1, 40);
  std::uniform_real_distribution<double> arg(0.0, 120.0);
  for (int i = 0; i < 1000; ++i) {
    long n = order(rng);
    double x = arg(rng);
    auto v = besselJ(n, Interval::from_double(x));
    auto ref = oracle::besselJ(n, oracle::Real(x));
    CHECK_MESSAGE(encloses(v.value, ref), "n=" << n << " x=" << x);
    if (!v.precision_exhausted) CHECK(v.value.width_up() < 1e-15);
  }
}

TEST_CASE("wide arguments are enclosed") {
  auto I = Interval::from_bounds(2.0, 2.5);
  auto v = besselJ(3, I);
  for (double x : {2.0, 2.1, 2.25, 2.4, 2.5}) CHECK(encloses(v.value, oracle::besselJ(3, oracle::Real(x))));
}

TEST_CASE("envelope dominates |J_{k-1}|") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> arg(0.0, 60.0);
  Interval eta = Interval::from_mpq(mpq_class(1, 2));
  for (long k = 4; k <= 30; k += 2) {
    for (int i = 0; i < 40; ++i) {
      double x = arg(rng);
      auto env = bessel_envelope(k, Interval::from_double(x), eta);
      auto j = oracle::besselJ(k - 1, oracle::Real(x));
      CHECK(abs(j) <= oracle::Real(env.hi_up()));
    }
  }
}

TEST_CASE("product of two values") {
  auto x1 = Interval::from_double(3.5), x2 = Interval::from_double(0.75);
  auto p = NJ(8, x1, x2);
  auto ref = oracle::besselJ(7, oracle::Real(3.5)) * oracle::besselJ(7, oracle::Real(0.75));
  CHECK(encloses(p.value, ref));
}
