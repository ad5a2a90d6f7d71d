#pragma once

// Hecke operators acting on ideal-indexed coefficient systems, and the
// pairing <f, T_m* P_q> written through coefficients.  Everything is exact.
//
// These are formula-level checks: no space of cusp forms is constructed, so
// "T_m = 0" is only ever tested on a finite grid of coefficient functions.

#include "hpoincare/ideals.hpp"

#include <map>
#include <optional>
#include <vector>

namespace hpoincare {

// Finitely supported map from integral ideals to rationals; zeros are never stored.
class CoeffFunction {
 public:
  CoeffFunction() = default;

  static CoeffFunction indicator(const Ideal& a, const mpq_class& value = 1);

  mpq_class at(const Ideal& a) const;
  void add(const Ideal& a, const mpq_class& v);
  const std::map<Ideal, mpq_class>& support() const { return values_; }
  bool empty() const { return values_.empty(); }

  friend CoeffFunction operator+(const CoeffFunction& f, const CoeffFunction& g);
  friend CoeffFunction operator*(const mpq_class& s, const CoeffFunction& f);
  bool operator==(const CoeffFunction& o) const { return values_ == o.values_; }
  bool operator!=(const CoeffFunction& o) const { return !(*this == o); }

 private:
  std::map<Ideal, mpq_class> values_;
};

struct HeckeContext {
  long k = 4;
  Ideal n;  // level
};

// c(a, T_m f) = sum_{r | a + m} chi0(r) N(r)^{k-1} c(a m r^{-2}, f).
CoeffFunction hecke_action(const HeckeContext& ctx, const Ideal& m, const CoeffFunction& f);

// sum_{r | m + q} chi0(r) N(r)^{k-1} c(m q r^{-2}, f); symmetric in m and q.
mpq_class pairing(const HeckeContext& ctx, const Ideal& m, const Ideal& q, const CoeffFunction& f);

// T_m T_q f == T_{mq} f for coprime m, q.  Throws PreconditionViolated otherwise.
bool check_multiplicativity(const HeckeContext& ctx, const Ideal& m, const Ideal& q, const CoeffFunction& f);

// T_m T_q f == T_q T_m f.
bool check_commutativity(const HeckeContext& ctx, const Ideal& m, const Ideal& q, const CoeffFunction& f);

struct LinearRelationReport {
  bool vanishes_on_grid = true;
  std::size_t grid_points = 0;
  // First grid point where sum_i lambda_i pairing(m_i, q, f) != 0.
  std::optional<Ideal> witness_q;
  std::optional<std::size_t> witness_f;
  mpq_class witness_value;
};

LinearRelationReport check_linear_relation(const HeckeContext& ctx,
                                           const std::vector<std::pair<Ideal, mpq_class>>& relation,
                                           const std::vector<Ideal>& qs, const std::vector<CoeffFunction>& fs);

}  // namespace hpoincare
