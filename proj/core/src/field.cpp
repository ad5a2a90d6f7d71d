#include "hpoincare/field.hpp"

#include "hpoincare/errors.hpp"
#include "hpoincare/ideals.hpp"
#include "hpoincare/intfactor.hpp"

#include <cmath>

namespace hpoincare {

OElement OElement::conj() const {
  // conj(w) = t - w
  return {a_ + basis_.t() * b_, -b_, basis_};
}

mpz_class OElement::trace() const { return 2 * a_ + basis_.t() * b_; }

mpz_class OElement::norm() const {
  return a_ * a_ + basis_.t() * a_ * b_ - basis_.n() * b_ * b_;
}

OElement& OElement::operator+=(const OElement& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

OElement& OElement::operator-=(const OElement& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

OElement& OElement::operator*=(const OElement& o) {
  mpz_class bb = b_ * o.b_;
  mpz_class na = a_ * o.a_ + basis_.n() * bb;
  mpz_class nb = a_ * o.b_ + b_ * o.a_ + basis_.t() * bb;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

OElement& OElement::operator*=(const mpz_class& s) {
  a_ *= s;
  b_ *= s;
  return *this;
}

std::optional<OElement> OElement::div_exact(const mpz_class& s) const {
  require(s != 0, Errc::ZeroElement, "division by zero");
  if (!mpz_divisible_p(a_.get_mpz_t(), s.get_mpz_t()) || !mpz_divisible_p(b_.get_mpz_t(), s.get_mpz_t())) {
    return std::nullopt;
  }
  return OElement(a_ / s, b_ / s, basis_);
}

std::optional<OElement> OElement::div_exact(const OElement& y) const {
  require(!y.is_zero(), Errc::ZeroElement, "division by zero");
  return (*this * y.conj()).div_exact(y.norm());
}

OElement OElement::pow(unsigned e) const {
  OElement r(1, 0, basis_);
  OElement base = *this;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

mpz_class OElement::content() const {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
  return g;
}

std::string OElement::to_string() const {
  return "(" + a_.get_str() + "," + b_.get_str() + ")";
}

FElement::FElement(const OElement& num) : num_(num), den_(1) {}

FElement::FElement(OElement num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
  require(den_ != 0, Errc::ZeroElement, "zero denominator");
  normalize();
}

void FElement::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  mpz_class g = num_.content();
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    num_ = *num_.div_exact(g);
    den_ /= g;
  }
}

mpq_class FElement::trace() const {
  mpq_class q(num_.trace(), den_);
  q.canonicalize();
  return q;
}

mpq_class FElement::norm() const {
  mpq_class q(num_.norm(), den_ * den_);
  q.canonicalize();
  return q;
}

FElement FElement::inverse() const {
  require(!is_zero(), Errc::ZeroElement, "inverse of zero");
  return FElement(num_.conj() * den_, num_.norm());
}

FElement operator+(const FElement& x, const FElement& y) {
  return FElement(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
}

FElement operator-(const FElement& x, const FElement& y) {
  return FElement(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
}

FElement operator*(const FElement& x, const FElement& y) {
  return FElement(x.num_ * y.num_, x.den_ * y.den_);
}

FElement operator/(const FElement& x, const FElement& y) { return x * y.inverse(); }

std::string FElement::to_string() const {
  if (den_ == 1) return num_.to_string();
  return num_.to_string() + "/" + den_.get_str();
}

struct FieldData {
  QuadBasis basis;
  std::int64_t D = 0;
  OElement fu;
  int fu_norm = 0;
  OElement eps_plus;
  std::optional<OElement> delta;
  OElement different_gen;
  int f2 = 0;
  bool narrow_h1 = false;
};

namespace {

// Coordinates (P, Q) with sigma_{1,2}(x) = (P +- Q sqrt d) / den.
struct SqrtForm {
  mpz_class P;
  mpz_class Q;
  long den;
};

SqrtForm sqrt_form(const OElement& x) {
  if (x.basis().half) return {2 * x.a() + x.b(), x.b(), 2};
  return {x.a(), x.b(), 1};
}

// sign of P + Q sqrt(d)
int sign_plus_sqrt(const mpz_class& P, const mpz_class& Q, std::int64_t d) {
  int sp = sgn(P), sq = sgn(Q);
  if (sp >= 0 && sq >= 0) return (sp || sq) ? 1 : 0;
  if (sp <= 0 && sq <= 0) return -1;
  mpz_class lhs = P * P, rhs = Q * Q * d;
  return lhs > rhs ? sp : sq;
}

OElement fundamental_unit_cf(const QuadBasis& basis) {
  const std::int64_t d = basis.d;
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), mpz_class(d).get_mpz_t());
  // alpha = -conj(w) = (P + sqrt d) / Q
  mpz_class P = basis.half ? -1 : 0;
  mpz_class Q = basis.half ? 2 : 1;
  mpz_class h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  for (int iter = 0; iter < 10000000; ++iter) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), mpz_class(P + s).get_mpz_t(), Q.get_mpz_t());
    mpz_class h = a * h1 + h2;
    mpz_class k = a * k1 + k2;
    OElement cand(h, k, basis);
    mpz_class nm = cand.norm();
    if (k > 0 && (nm == 1 || nm == -1)) return cand;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    P = a * Q - P;
    Q = (mpz_class(d) - P * P) / Q;
    require(Q > 0, Errc::PreconditionViolated, "continued fraction left the reduced range");
  }
  fail(Errc::BudgetExceeded, "fundamental unit search exceeded iteration budget");
}

// Returns the exponent m minimizing |L + m*step| where L = log|s1(x)/s2(x)|
// and step = log|s1(u)/s2(u)| > 0.  `tie` decides between two exactly tied
// candidates (m1 < m2).
template <class Tie>
long balance_exponent(const OElement& x, const OElement& u, Tie tie) {
  require(!x.is_zero(), Errc::ZeroElement, "balancing zero");
  for (mpfr_prec_t prec = 128; prec <= 8192; prec *= 2) {
    auto [x1, x2] = embed(x, prec);
    auto [u1, u2] = embed(u, prec);
    Interval L = log(abs(x1)) - log(abs(x2));
    Interval step = log(abs(u1)) - log(abs(u2));
    long m0 = std::lround(-L.mid_approx() / step.mid_approx());
    std::vector<std::pair<long, Interval>> cand;
    for (long m = m0 - 2; m <= m0 + 2; ++m) {
      cand.emplace_back(m, abs(L + step.scaled(m)));
    }
    // Upper bound on the minimum.
    Mpfr best_hi(prec);
    mpfr_set_inf(best_hi.get(), 1);
    for (auto& [m, v] : cand) {
      if (mpfr_less_p(v.hi(), best_hi.get())) mpfr_set(best_hi.get(), v.hi(), MPFR_RNDU);
    }
    std::vector<long> possible;
    for (auto& [m, v] : cand) {
      if (mpfr_lessequal_p(v.lo(), best_hi.get())) possible.push_back(m);
    }
    if (possible.size() == 1) return possible[0];
    if (possible.size() == 2) {
      long m1 = possible[0], m2 = possible[1];
      OElement z = x * x * unit_pow(u, m1 + m2);
      if (z.b() == 0 || z.trace() == 0) return tie(m1, m2);
    }
  }
  fail(Errc::PreconditionViolated, "balancing did not resolve within precision cap");
}

}  // namespace

int sign_sigma1(const OElement& x) {
  auto f = sqrt_form(x);
  return sign_plus_sqrt(f.P, f.Q, x.basis().d);
}

int sign_sigma2(const OElement& x) {
  auto f = sqrt_form(x);
  return sign_plus_sqrt(f.P, -f.Q, x.basis().d);
}

std::pair<Interval, Interval> embed(const OElement& x, mpfr_prec_t prec) {
  auto f = sqrt_form(x);
  mpfr_prec_t wp = prec + 16;
  Interval r = Interval::sqrt_of(mpz_class(x.basis().d), wp);
  Interval P = Interval::from_mpz(f.P, wp);
  Interval Q = Interval::from_mpz(f.Q, wp);
  Interval den = Interval::from_int(f.den, wp);
  Interval s1 = (P + Q * r) / den;
  Interval s2 = (P - Q * r) / den;
  // Exact zeros stay exact.
  if (x.is_zero()) return {Interval::from_int(0, prec), Interval::from_int(0, prec)};
  return {s1, s2};
}

std::pair<Interval, Interval> embed(const FElement& x, mpfr_prec_t prec) {
  auto [s1, s2] = embed(x.num(), prec);
  Interval den = Interval::from_mpz(x.den(), prec + 16);
  return {s1 / den, s2 / den};
}

bool is_totally_positive(const OElement& x) {
  require(!x.is_zero(), Errc::ZeroElement, "total positivity of zero");
  return x.trace() > 0 && x.norm() > 0;
}

bool is_totally_positive(const FElement& x) { return is_totally_positive(x.num()); }

OElement unit_pow(const OElement& u, long e) {
  if (e >= 0) return u.pow(static_cast<unsigned>(e));
  mpz_class n = u.norm();
  require(n == 1 || n == -1, Errc::NotInvertible, "negative power of a non-unit");
  OElement inv = u.conj() * n;
  return inv.pow(static_cast<unsigned>(-e));
}

FElement unit_pow(const FElement& u, long e) {
  if (e < 0) return unit_pow(u.inverse(), -e);
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), u.den().get_mpz_t(), static_cast<unsigned long>(e));
  return FElement(u.num().pow(static_cast<unsigned>(e)), den);
}

Balanced balanced_representative(const QuadraticField& F, const FElement& x) {
  require(!x.is_zero(), Errc::ZeroElement, "balancing zero");
  const OElement& eps = F.eps_plus();
  long m = balance_exponent(x.num(), eps, [](long m1, long m2) {
    if (std::labs(m1) != std::labs(m2)) return std::labs(m1) < std::labs(m2) ? m1 : m2;
    return std::min(m1, m2);
  });
  FElement y(x.num() * unit_pow(eps, m), x.den());
  return {y, m};
}

OElement canonical_generator(const QuadraticField& F, const OElement& x) {
  require(!x.is_zero(), Errc::ZeroElement, "canonical generator of zero");
  const OElement& u = F.fundamental_unit();
  long j = balance_exponent(x, u, [&](long m1, long m2) {
    OElement y = x * unit_pow(u, m1);
    // Tied values are +-v with v != 0; keep |sigma_1| > |sigma_2|.
    auto [s1, s2] = embed(y, 256);
    return mpfr_greater_p(abs(s1).lo(), abs(s2).hi()) ? m1 : m2;
  });
  OElement y = x * unit_pow(u, j);
  if (sign_sigma1(y) < 0) y = -y;
  return y;
}

bool same_tp_unit_orbit(const FElement& x, const FElement& y) {
  require(!x.is_zero() && !y.is_zero(), Errc::ZeroElement, "unit orbit of zero");
  FElement q = x / y;
  if (!q.is_integral()) return false;
  if (q.num().norm() != 1) return false;
  return is_totally_positive(q.num());
}

QuadraticField QuadraticField::make(std::int64_t d) {
  require(d > 1, Errc::PreconditionViolated, "d must be > 1");
  require(static_cast<std::uint64_t>(d) <= kFactorLimit, Errc::FactorizationTooLarge, "d too large");
  require(is_squarefree(d), Errc::NotSquarefree, std::to_string(d) + " is not squarefree");
  auto data = std::make_shared<FieldData>();
  data->basis = QuadBasis{d, d % 4 == 1};
  data->D = data->basis.half ? d : 4 * d;
  data->fu = fundamental_unit_cf(data->basis);
  data->fu_norm = data->fu.norm() == 1 ? 1 : -1;
  data->eps_plus = data->fu_norm == -1 ? data->fu * data->fu : data->fu;
  data->different_gen = data->basis.half ? OElement(-1, 2, data->basis) : OElement(0, 2, data->basis);
  const std::int64_t D = data->D;
  if (D % 2 == 0) {
    data->f2 = 1;
  } else {
    data->f2 = 2;  // split: 1 + 1, inert: 2
  }
  QuadraticField F(data);
  if (data->fu_norm == -1) {
    // g0 has norm -D; g0 * fu has norm +D and is totally positive up to sign.
    OElement g = data->different_gen * data->fu;
    if (g.trace() < 0) g = -g;
    Balanced b = balanced_representative(F, FElement(g));
    data->delta = b.y.num();
  }
  data->narrow_h1 = narrow_class_number_is_one(F);
  return F;
}

std::int64_t QuadraticField::d() const { return data_->basis.d; }
const QuadBasis& QuadraticField::basis() const { return data_->basis; }
std::int64_t QuadraticField::discriminant() const { return data_->D; }
const OElement& QuadraticField::fundamental_unit() const { return data_->fu; }
int QuadraticField::fu_norm() const { return data_->fu_norm; }
const OElement& QuadraticField::eps_plus() const { return data_->eps_plus; }
const std::optional<OElement>& QuadraticField::delta() const { return data_->delta; }
const OElement& QuadraticField::different_generator() const { return data_->different_gen; }
int QuadraticField::f2() const { return data_->f2; }
bool QuadraticField::narrow_h1() const { return data_->narrow_h1; }

Interval QuadraticField::A(mpfr_prec_t prec) const {
  return sqrt(embed(data_->eps_plus, prec).first);
}

std::vector<OElement> QuadraticField::totally_positive_unit_reps() const {
  if (data_->fu_norm == -1) return {one()};
  OElement u = data_->fu;
  if (!is_totally_positive(u)) u = -u;
  return {one(), u};
}

}  // namespace hpoincare
