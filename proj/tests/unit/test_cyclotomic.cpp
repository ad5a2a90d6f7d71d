#include "hpoincare/cyclotomic.hpp"
#include "hpoincare/kloosterman.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hpoincare;

TEST_CASE("roots of unity and reduction") {
  auto z = CyclotomicInteger::root(4, 1);
  CHECK((z * z).equals(CyclotomicInteger::integer(-1)));
  CHECK((z * z * z * z).equals(CyclotomicInteger::integer(1)));

  // 1 + z + ... + z^{p-1} = 0 for p prime.
  CyclotomicInteger s(7);
  for (int j = 0; j < 7; ++j) s.add_to(j, 1);
  CHECK(s.is_zero());
  CHECK(s.integer_value() == mpz_class(0));

  // Sum of primitive 6th roots is 1.
  auto p6 = CyclotomicInteger::root(6, 1) + CyclotomicInteger::root(6, 5);
  CHECK(p6.integer_value() == mpz_class(1));
  CHECK(p6.is_real());
  CHECK_FALSE(CyclotomicInteger::root(6, 1).is_real());
}

TEST_CASE("lifting preserves the value") {
  auto x = CyclotomicInteger::root(3, 1) * mpz_class(5) + CyclotomicInteger::integer(2, 3);
  auto y = x.lift(12);
  CHECK(y.order() == 12);
  CHECK(x.equals(y));
  CHECK(x.real_part().intersects(y.real_part()));
}

TEST_CASE("real and imaginary parts enclose the complex value") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    std::uint64_t M = 1 + rng() % 60;
    CyclotomicInteger x(M);
    double re = 0, im = 0;
    for (int k = 0; k < 5; ++k) {
      std::uint64_t j = rng() % M;
      long c = static_cast<long>(rng() % 21) - 10;
      x.add_to(j, c);
      re += c * std::cos(2 * M_PI * static_cast<double>(j) / static_cast<double>(M));
      im += c * std::sin(2 * M_PI * static_cast<double>(j) / static_cast<double>(M));
    }
    Interval r = x.real_part(), m = x.imag_part();
    CHECK(r.lo_down() <= re + 1e-9);
    CHECK(r.hi_up() >= re - 1e-9);
    CHECK(m.lo_down() <= im + 1e-9);
    CHECK(m.hi_up() >= im - 1e-9);
    CHECK(r.width_up() < 1e-15);
    CHECK((x + x.conj()).is_real());
  }
}

TEST_CASE("additive character") {
  auto F = QuadraticField::make(5);
  // Tr(1/2) = 1, so e(1/2) = 1.
  CHECK(additive_character(FElement(F.one(), 2)).integer_value() == mpz_class(1));
  // Tr(w / 2) = 1/2.
  CHECK(additive_character(FElement(F.omega(), 2)).integer_value() == mpz_class(-1));
  // Integral elements have integral trace.
  CHECK(additive_character(FElement(F.elem(3, 7))).integer_value() == mpz_class(1));
  auto e = additive_character(FElement(F.omega(), 3));
  CHECK(e.order() == 3);
  CHECK(e.equals(CyclotomicInteger::root(3, 1)));
}
