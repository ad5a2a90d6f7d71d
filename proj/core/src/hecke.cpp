#include "hpoincare/hecke.hpp"

#include "hpoincare/errors.hpp"

namespace hpoincare {

namespace {

mpq_class weight(const HeckeContext& ctx, const Ideal& r) {
  if (!chi0(r, ctx.n)) return 0;
  mpz_class w;
  mpz_class nr = r.norm();
  mpz_pow_ui(w.get_mpz_t(), nr.get_mpz_t(), static_cast<unsigned long>(ctx.k - 1));
  return mpq_class(w);
}

}  // namespace

CoeffFunction CoeffFunction::indicator(const Ideal& a, const mpq_class& value) {
  CoeffFunction f;
  f.add(a, value);
  return f;
}

mpq_class CoeffFunction::at(const Ideal& a) const {
  auto it = values_.find(a);
  return it == values_.end() ? mpq_class(0) : it->second;
}

void CoeffFunction::add(const Ideal& a, const mpq_class& v) {
  if (v == 0) return;
  auto [it, inserted] = values_.emplace(a, v);
  if (inserted) return;
  it->second += v;
  if (it->second == 0) values_.erase(it);
}

CoeffFunction operator+(const CoeffFunction& f, const CoeffFunction& g) {
  CoeffFunction out = f;
  for (const auto& [a, v] : g.values_) out.add(a, v);
  return out;
}

CoeffFunction operator*(const mpq_class& s, const CoeffFunction& f) {
  CoeffFunction out;
  if (s == 0) return out;
  for (const auto& [a, v] : f.values_) out.add(a, s * v);
  return out;
}

CoeffFunction hecke_action(const HeckeContext& ctx, const Ideal& m, const CoeffFunction& f) {
  CoeffFunction out;
  std::vector<std::pair<Ideal, mpq_class>> rs;
  for (const Ideal& r : divisors(m)) {
    mpq_class w = weight(ctx, r);
    if (w != 0) rs.emplace_back(r, w);
  }
  // Each (b, r) with b in the support gives a = b r^2 / m, kept when integral
  // and divisible by r.
  for (const auto& [b, v] : f.support()) {
    for (const auto& [r, w] : rs) {
      Ideal br2 = b * r * r;
      if (!m.divides(br2)) continue;
      Ideal a = ideal_exact_divide(br2, m);
      if (!r.divides(a)) continue;
      out.add(a, w * v);
    }
  }
  return out;
}

mpq_class pairing(const HeckeContext& ctx, const Ideal& m, const Ideal& q, const CoeffFunction& f) {
  mpq_class sum = 0;
  Ideal mq = m * q;
  for (const Ideal& r : divisors(m + q)) {
    mpq_class w = weight(ctx, r);
    if (w == 0) continue;
    sum += w * f.at(ideal_exact_divide(mq, r * r));
  }
  return sum;
}

bool check_multiplicativity(const HeckeContext& ctx, const Ideal& m, const Ideal& q, const CoeffFunction& f) {
  require((m + q).is_unit(), Errc::PreconditionViolated, "multiplicativity needs coprime ideals");
  return hecke_action(ctx, m, hecke_action(ctx, q, f)) == hecke_action(ctx, m * q, f);
}

bool check_commutativity(const HeckeContext& ctx, const Ideal& m, const Ideal& q, const CoeffFunction& f) {
  return hecke_action(ctx, m, hecke_action(ctx, q, f)) == hecke_action(ctx, q, hecke_action(ctx, m, f));
}

LinearRelationReport check_linear_relation(const HeckeContext& ctx,
                                           const std::vector<std::pair<Ideal, mpq_class>>& relation,
                                           const std::vector<Ideal>& qs, const std::vector<CoeffFunction>& fs) {
  LinearRelationReport rep;
  for (const Ideal& q : qs) {
    for (std::size_t i = 0; i < fs.size(); ++i) {
      ++rep.grid_points;
      // Scalars are rational, so conjugation is the identity.
      mpq_class s = 0;
      for (const auto& [m, lambda] : relation) s += lambda * pairing(ctx, m, q, fs[i]);
      if (s != 0 && rep.vanishes_on_grid) {
        rep.vanishes_on_grid = false;
        rep.witness_q = q;
        rep.witness_f = i;
        rep.witness_value = s;
      }
    }
  }
  return rep;
}

}  // namespace hpoincare
