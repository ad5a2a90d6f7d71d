#include "hpoincare/errors.hpp"
#include "hpoincare/poincare.hpp"

#include "oracle/oracle.hpp"

#include <doctest.h>

using namespace hpoincare;

namespace {

PoincareParams level_one(const QuadraticField& F, long k) {
  Ideal O = Ideal::unit(F.basis());
  return make_params(F, k, FractionalIdeal(O), O);
}

bool encloses(const Interval& I, const oracle::Real& v) {
  oracle::Real lo, hi;
  mpfr_set(lo.backend().data(), I.lo(), MPFR_RNDD);
  mpfr_set(hi.backend().data(), I.hi(), MPFR_RNDU);
  return lo <= v && v <= hi;
}

}  // namespace

TEST_CASE("Kronecker term") {
  auto F = QuadraticField::make(5);
  FElement one(F.one());
  CHECK(chi_mu(one, one) == 1);
  CHECK(chi_mu(one, FElement(F.eps_plus())) == 1);
  CHECK(chi_mu(FElement(F.eps_plus()), one) == 1);
  CHECK(chi_mu(one, FElement(F.fundamental_unit())) == 0);
  CHECK(chi_mu(one, FElement(F.integer(2))) == 0);
  CHECK(chi_mu(one, FElement(F.elem(3, 2))) == 0);
}

TEST_CASE("parameter validation") {
  auto F = QuadraticField::make(5);
  Ideal O = Ideal::unit(F.basis());
  CHECK_THROWS_AS(make_params(F, 5, FractionalIdeal(O), O), Error);
  CHECK_THROWS_AS(make_params(F, 2, FractionalIdeal(O), O), Error);
  CHECK(level_one(F, 8).cnd_norm() == 5);
  // Narrow class number > 1: no coefficients.
  auto F3 = QuadraticField::make(3);
  CHECK_THROWS_AS(enumerate_moduli(level_one(F3, 8), 100), Error);
}

TEST_CASE("empty truncation") {
  auto F = QuadraticField::make(5);
  FElement one(F.one());
  auto v = coefficient(level_one(F, 8), one, one, {0, 0, mpq_class(1, 2)});
  CHECK(v.moduli == 0);
  CHECK(v.chi == 1);
  CHECK(v.finite_part.is_point());
  CHECK(v.finite_part.contains_zero());
  CHECK(v.tail.certainly_positive());
}

TEST_CASE("moduli enumeration") {
  auto F = QuadraticField::make(5);
  auto reps = enumerate_moduli(level_one(F, 8), 400);
  CHECK(reps.size() == 36);
  for (std::size_t i = 1; i < reps.size(); ++i) {
    CHECK(reps[i - 1].abs_norm_num * reps[i].abs_norm_den <= reps[i].abs_norm_num * reps[i - 1].abs_norm_den);
  }
  for (const auto& r : reps) {
    CHECK(r.c.is_integral());
    CHECK(canonical_generator(F, r.c.num()) == r.c.num());
    CHECK(abs(r.c.norm()) == 5 * r.m.norm());
  }
}

TEST_CASE("finite part agrees with the independent sum") {
  auto F = QuadraticField::make(5);
  oracle::Field O(5);
  auto P = level_one(F, 8);
  struct Pair {
    OElement nu, mu;
  };
  for (const Pair& pr : {Pair{F.one(), F.one()}, Pair{F.one(), F.elem(3, 2)}, Pair{F.elem(3, 2), F.elem(3, 2)}}) {
    auto v = coefficient(P, FElement(pr.nu), FElement(pr.mu), {250, 2, mpq_class(1, 2)});
    auto ref = oracle::coefficient(O, 8, O.basis(pr.nu.a(), pr.nu.b()), O.basis(pr.mu.a(), pr.mu.b()), 250, 2);
    CHECK(v.moduli == ref.moduli);
    CHECK(v.chi == ref.chi);
    CHECK_MESSAGE(encloses(v.finite_part, ref.finite), v.finite_part.to_string());
    CHECK(v.finite_part.width_up() < 1e-15);
  }
}

TEST_CASE("deterministic across thread counts") {
  auto F = QuadraticField::make(5);
  FElement one(F.one());
  CoefficientOptions a, b;
  a.threads = 1;
  b.threads = 4;
  auto x = coefficient(level_one(F, 8), one, one, {250, 2, mpq_class(1, 2)}, a);
  auto y = coefficient(level_one(F, 8), one, one, {250, 2, mpq_class(1, 2)}, b);
  CHECK(x.finite_part.lo_string(30) == y.finite_part.lo_string(30));
  CHECK(x.finite_part.hi_string(30) == y.finite_part.hi_string(30));
}

TEST_CASE("unit invariance and symmetry of the enclosures") {
  auto F = QuadraticField::make(5);
  auto P = level_one(F, 8);
  FElement one(F.one()), eps(F.eps_plus()), p(F.elem(3, 2));
  Cutoffs cut{400, 3, mpq_class(1, 2)};
  CHECK(coefficient(P, one, one, cut).enclosure().intersects(coefficient(P, one, eps, cut).enclosure()));
  CHECK(coefficient(P, one, p, cut).enclosure().intersects(coefficient(P, eps, p, cut).enclosure()));
  auto a = coefficient_tilde(P, one, p, cut);
  auto b = coefficient_tilde(P, p, one, cut);
  CHECK(a.enclosure().intersects(b.enclosure()));
}

TEST_CASE("tail shrinks along the default ladder") {
  auto F = QuadraticField::make(5);
  auto P = level_one(F, 8);
  FElement one(F.one());
  Interval prev;
  bool first = true;
  for (const Cutoffs& cut : default_ladder(P)) {
    Interval t = tail_bound(P, one, one, cut).total();
    CHECK(t.certainly_positive());
    if (!first) CHECK(t.certainly_less(prev));
    prev = t;
    first = false;
  }
}

TEST_CASE("certificates") {
  auto F = QuadraticField::make(5);
  FElement one(F.one());
  auto cert = certify_nonvanishing(level_one(F, 8), one);
  CHECK(cert.verdict == Verdict::Nonzero);
  CHECK(cert.margin.certainly_positive());
  CHECK(cert.zero_excluded);
  CHECK(audit_certificate(cert));
  auto forged = cert;
  forged.coefficient.tail = Interval::from_int(5);
  CHECK_FALSE(audit_certificate(forged));

  CertifyBudget tiny;
  tiny.ladder = {{1, 0, mpq_class(1, 2)}};
  auto weak = certify_nonvanishing(level_one(F, 8), one, tiny);
  CHECK(weak.verdict == Verdict::Inconclusive);
  CHECK(weak.ladder_tried.size() == 1);
  CHECK(audit_certificate(weak));
}

TEST_CASE("recurrence preconditions and a consistent instance") {
  auto F = QuadraticField::make(5);
  auto P = level_one(F, 8);
  FElement one(F.one());
  Cutoffs cut{250, 3, mpq_class(1, 2)};
  // p must be coprime to nu mu.
  CHECK_THROWS_AS(recurrence_check_cor45(P, FElement(F.elem(3, 2)), one, F.elem(3, 2), 1, 1, cut), Error);
  // Not totally positive.
  CHECK_THROWS_AS(recurrence_check_cor45(P, one, one, F.elem(-3, -2), 1, 1, cut), Error);
  auto rep = recurrence_check_cor45(P, one, one, F.elem(3, 2), 1, 1, cut);
  CHECK(rep.outcome != RecurrenceOutcome::Inconsistent);
  CHECK(rep.lhs.intersects(rep.rhs));
}

TEST_CASE("relations report") {
  auto F = QuadraticField::make(5);
  FElement one(F.one());
  CertifyBudget b;
  b.ladder = {{1000, 3, mpq_class(1, 2)}};
  auto rep = nonvanishing_relations_report(level_one(F, 8), one, F.elem(3, 2), 1, b);
  CHECK(rep.base.verdict == Verdict::Nonzero);
  CHECK_FALSE(rep.advisory);
  CHECK(rep.around.size() == 3);
}
