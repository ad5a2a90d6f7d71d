#include "commands.hpp"

#include "hpoincare/errors.hpp"
#include "hpoincare_cli/cli.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace hpoincare::cli {

QuadraticField Context::field(std::int64_t d_flag) const {
  std::int64_t d = d_flag != 0 ? d_flag : cfg.field.value_or(0);
  require(d != 0, Errc::PreconditionViolated, "no field given: pass --d or set \"field\" in the config");
  return QuadraticField::make(d);
}

KloostermanEvaluator Context::evaluator(const QuadraticField& F) {
  KloostermanOptions opt = cfg.kloosterman();
  if (cache) return cache->evaluator(F, opt);
  return [F, opt](const KloostermanQuery& q) { return kloosterman_value(F, q, opt); };
}

CoefficientOptions Context::coefficient_options(const QuadraticField& F) {
  CoefficientOptions o;
  o.kloosterman = cfg.kloosterman();
  o.prec = cfg.precision;
  o.threads = cfg.threads;
  o.evaluator = evaluator(F);
  return o;
}

namespace {

std::string pair_string(const OElement& x) { return "(" + x.a().get_str() + "," + x.b().get_str() + ")"; }

FractionalIdeal parse_fractional_ideal(const QuadraticField& F, const std::string& text) {
  if (std::count(text.begin(), text.end(), ',') == 2 && text.find('(') == std::string::npos) {
    return FractionalIdeal(parse_ideal(F, text));
  }
  FElement x = parse_element(F, text);
  require(!x.is_zero(), Errc::ZeroIdeal, "ideal generator is zero");
  return FractionalIdeal::principal(x);
}

Interval abs_complex(const ComplexInterval& z) { return sqrt(square(z.re) + square(z.im)); }

std::string value_summary(const KloostermanValue& v) {
  if (v.exact) {
    if (auto iv = v.exact->integer_value()) return iv->get_str();
  }
  return "re " + v.approx.re.to_string(12) + ", im " + v.approx.im.to_string(12);
}

std::vector<OElement> principal_generators_up_to(const QuadraticField& F, std::uint64_t max_norm) {
  std::vector<OElement> out;
  for (std::uint64_t n = 1; n <= max_norm; ++n) {
    for (const Ideal& I : ideals_of_norm(F.basis(), n)) {
      if (auto g = is_principal(F, I)) out.push_back(canonical_generator(F, *g));
    }
  }
  return out;
}

json params_json(const PoincareParams& P) {
  return json{{"field", field_json(P.F)}, {"k", P.k}, {"c", to_json(P.c)}, {"n", to_json(P.n)}};
}

std::vector<Ideal> ideals_up_to(const QuadraticField& F, std::uint64_t max_norm) {
  std::vector<Ideal> out;
  for (std::uint64_t n = 1; n <= max_norm; ++n) {
    for (Ideal& I : ideals_of_norm(F.basis(), n)) out.push_back(std::move(I));
  }
  return out;
}

}  // namespace

Outcome cmd_field_info(Context& ctx, const FieldInfoArgs& a) {
  QuadraticField F = ctx.field(a.d);
  const QuadBasis& B = F.basis();
  std::string omega = B.half ? "(1+sqrt(" + std::to_string(F.d()) + "))/2" : "sqrt(" + std::to_string(F.d()) + ")";
  json doc{{"version", kSchemaVersion},
           {"field", F.spec()},
           {"d", F.d()},
           {"D", F.discriminant()},
           {"omega", omega},
           {"fundamental_unit", pair_string(F.fundamental_unit())},
           {"fu_norm", F.fu_norm()},
           {"eps_plus", pair_string(F.eps_plus())},
           {"delta", F.delta() ? json(pair_string(*F.delta())) : json(nullptr)},
           {"different_generator", pair_string(F.different_generator())},
           {"A", to_json(F.A(ctx.cfg.precision))},
           {"f2", F.f2()},
           {"narrow_h1", F.narrow_h1()}};
  doc["summary"] = "D=" + std::to_string(F.discriminant()) + " delta=" +
                   (F.delta() ? pair_string(*F.delta()) : std::string("none")) +
                   " narrow_h1=" + (F.narrow_h1() ? "true" : "false");
  return {doc, kExitOk};
}

Outcome cmd_kloosterman(Context& ctx, const KloostermanArgs& a) {
  QuadraticField F = ctx.field(a.d);
  KloostermanQuery q;
  q.nu = parse_element(F, a.nu);
  q.mu = parse_element(F, a.mu);
  q.c = parse_element(F, a.c);
  require(!q.c.is_zero(), Errc::ZeroElement, "modulus c is zero");
  if (a.m.empty()) {
    require(q.c.is_integral(), Errc::PreconditionViolated, "c is not integral; pass --m explicitly");
    q.m = Ideal::principal(q.c.num());
  } else {
    q.m = parse_ideal(F, a.m);
  }
  validate(F, q);
  if (a.exact) {
    std::uint64_t M = q.m.is_unit() ? 1 : kloosterman_order(F, q);
    require(M <= ctx.cfg.order_cap, Errc::BudgetExceeded,
            "root of unity order " + std::to_string(M) + " exceeds the cap; exact value unavailable");
  }
  KloostermanValue v = ctx.evaluator(F)(q);
  json doc = kloosterman_json(F, q, v, ctx.cfg.precision);
  doc["summary"] = value_summary(v);
  return {doc, kExitOk};
}

Outcome cmd_selberg_check(Context& ctx, const SelbergArgs& a) {
  QuadraticField F = ctx.field(a.d);
  require(a.grid == "small" || a.grid == "large", Errc::PreconditionViolated, "grid must be small or large");
  KloostermanOptions opt = ctx.cfg.kloosterman();
  std::size_t checks = 0, failures = 0, outside = 0;
  json failed = json::array();
  for (const OElement& q : principal_generators_up_to(F, a.max_norm_q)) {
    // A prime element dividing q, so the grid contains p-divisible values.
    OElement p = F.integer(2);
    if (!Ideal::principal(q).is_unit()) {
      if (auto g = is_principal(F, factor_ideal(Ideal::principal(q)).front().first)) p = *g;
    }
    std::vector<OElement> grid{F.integer(0), F.one(), F.one() + F.omega(), p, p * F.omega()};
    if (a.grid == "large") {
      grid.push_back(F.integer(2));
      grid.push_back(F.omega());
      grid.push_back(p * p);
      grid.push_back(F.integer(3) + F.omega());
    }
    for (const OElement& nu : grid) {
      for (const OElement& mu : grid) {
        IdentityReport r = selberg_check(F, nu, mu, q, opt);
        ++checks;
        if (!r.within_hypotheses) ++outside;
        if (!r.holds) {
          ++failures;
          if (failed.size() < 20) {
            failed.push_back(json{{"nu", pair_string(nu)}, {"mu", pair_string(mu)}, {"q", pair_string(q)},
                                  {"detail", r.detail}});
          }
        }
      }
    }
  }
  json doc{{"version", kSchemaVersion},
           {"field", F.spec()},
           {"max_norm_q", a.max_norm_q},
           {"grid", a.grid},
           {"checks", checks},
           {"failures", failures},
           {"outside_hypotheses", outside},
           {"failed", failed}};
  doc["summary"] = failures == 0 ? "all hold" : std::to_string(failures) + " of " + std::to_string(checks) + " fail";
  return {doc, failures == 0 ? kExitOk : kExitViolation};
}

Outcome cmd_weil_audit(Context& ctx, const WeilAuditArgs& a) {
  QuadraticField F = ctx.field(a.d);
  require(a.samples > 0 && a.max_norm >= 2, Errc::PreconditionViolated, "need samples > 0 and max-norm >= 2");
  std::mt19937_64 rng(a.seed);
  auto coord = [&](long r) { return mpz_class(std::uniform_int_distribution<long>(-r, r)(rng)); };
  auto random_elem = [&](long r) { return F.elem(coord(r), coord(r)); };
  const FElement dg(F.different_generator());
  std::vector<Ideal> ideals = ideals_up_to(F, a.max_norm);
  ideals.erase(ideals.begin());  // drop O

  KloostermanEvaluator eval = ctx.evaluator(F);
  std::size_t violations = 0;
  Interval max_ratio = Interval::from_int(0, ctx.cfg.precision);
  json worst;
  for (std::uint64_t s = 0; s < a.samples; ++s) {
    KloostermanQuery q;
    if (s % 2 == 0) {
      // c = q g with m = (q): nu, mu range over g d^{-1}.
      OElement qe, g;
      do {
        qe = random_elem(8);
      } while (qe.norm() == 0 || abs(qe.norm()) < 2 || abs(qe.norm()) > a.max_norm);
      do {
        g = random_elem(3);
      } while (g.is_zero());
      q.m = Ideal::principal(qe);
      q.c = FElement(qe * g);
      q.nu = FElement(g * random_elem(6)) / dg;
      q.mu = FElement(g * random_elem(6)) / dg;
    } else {
      // Unrelated m and c: nu = c t / (delta N(m)) with t in conj(m).
      Ideal m = ideals[std::uniform_int_distribution<std::size_t>(0, ideals.size() - 1)(rng)];
      OElement c;
      do {
        c = random_elem(4);
      } while (c.is_zero());
      Ideal mc = m.conj();
      auto in_mc = [&]() { return coord(4) * mc.basis1() + coord(4) * mc.basis2(); };
      FElement scale = FElement(c) / (dg * FElement(F.integer(m.norm())));
      q.m = m;
      q.c = FElement(c);
      q.nu = FElement(in_mc()) * scale;
      q.mu = FElement(in_mc()) * scale;
    }
    KloostermanValue v = eval(q);
    WeilBound w = weil_bound(F, q, ctx.cfg.precision);
    Interval size = abs_complex(v.approx);
    Interval ratio = size / w.value;
    if (size.lo_down() > 0 && w.value.certainly_less(size)) ++violations;
    if (s == 0 || max_ratio.certainly_less(ratio) || (ratio.intersects(max_ratio) && ratio.hi_up() > max_ratio.hi_up())) {
      max_ratio = ratio;
      worst = json{{"query", to_json(q)}, {"abs_S", to_json(size)}, {"bound", to_json(w.value)}};
    }
  }
  bool below_one = mpfr_cmp_ui(max_ratio.hi(), 1) <= 0;
  json doc{{"version", kSchemaVersion},
           {"field", F.spec()},
           {"samples", a.samples},
           {"seed", a.seed},
           {"max_ratio", to_json(max_ratio)},
           {"violations", violations},
           {"worst", worst}};
  doc["summary"] = "max ratio " + max_ratio.hi_string(8) + (below_one ? " <= 1" : " exceeds 1");
  return {doc, violations == 0 && below_one ? kExitOk : kExitViolation};
}

Outcome cmd_certify(Context& ctx, const CertifyArgs& a) {
  QuadraticField F = ctx.field(a.d);
  PoincareParams P = make_params(F, a.k, parse_fractional_ideal(F, a.c), parse_ideal(F, a.level));
  FElement mu = parse_element(F, a.mu);
  CertifyBudget budget;
  if (a.X > 0 || a.M >= 0) {
    require(a.X > 0 && a.M >= 0, Errc::PreconditionViolated, "--X and --M must be given together");
    budget.ladder.push_back(Cutoffs{a.X, a.M, mpq_class(1, 2)});
  }
  Certificate cert = certify_nonvanishing(P, mu, budget, ctx.coefficient_options(F));
  ConstantsLedger L = effective_constants(F, a.k, mpq_class(1, 2), ctx.cfg.precision);
  json doc = to_json(cert, &L);
  doc["summary"] = verdict_name(cert.verdict) + " margin " + cert.margin.to_string(8);
  return {doc, cert.verdict == Verdict::Nonzero ? kExitOk : kExitInconclusive};
}

Outcome cmd_thresholds(Context& ctx, const ThresholdsArgs& a) {
  QuadraticField F = ctx.field(a.d);
  mpq_class eta;
  if (a.eta.find('.') != std::string::npos) {
    // Decimal input such as 0.5, read exactly.
    std::string s = a.eta;
    std::size_t dot = s.find('.');
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    eta = mpq_from_json(json(digits + "/1" + std::string(s.size() - dot - 1, '0')));
  } else {
    eta = mpq_from_json(json(a.eta));
  }
  Ideal n = parse_ideal(F, a.level);
  FractionalIdeal c = parse_fractional_ideal(F, a.c);
  mpfr_prec_t prec = ctx.cfg.precision;
  ConstantsLedger L = effective_constants(F, a.k, eta, prec);
  json doc{{"version", kSchemaVersion},
           {"field", F.spec()},
           {"k", a.k},
           {"level", to_json(n)},
           {"c", to_json(c)},
           {"ledger", to_json(L)}};
  json th;
  if (c.is_integral()) {
    th["thm32"] = to_json(threshold_thm32(F, a.k, c.num(), n, eta, prec));
  } else {
    th["thm32"] = nullptr;
  }
  th["cor33"] = to_json(threshold_cor33(F, a.k, c, n, parse_element(F, a.alpha), prec));
  th["thm35"] = to_json(threshold_thm35(F, a.k, n, prec));
  doc["thresholds"] = th;
  doc["summary"] = "C " + L.C.to_string(8);
  return {doc, kExitOk};
}

Outcome cmd_recurrence(Context& ctx, const RecurrenceArgs& a) {
  QuadraticField F = ctx.field(a.d);
  require(!a.p.empty(), Errc::PreconditionViolated, "--p is required");
  OElement q = parse_integral(F, a.q);
  require(!q.is_zero(), Errc::ZeroElement, "q is zero");
  PoincareParams P = make_params(F, a.k, FractionalIdeal(Ideal::principal(q)), parse_ideal(F, a.level));
  Cutoffs cut{a.X, a.M, mpq_class(1, 2)};
  RecurrenceReport r = recurrence_check_cor45(P, parse_element(F, a.nu), parse_element(F, a.mu),
                                              parse_integral(F, a.p), a.m, a.n, cut, ctx.coefficient_options(F));
  json terms = json::array();
  for (const CoefficientValue& t : r.terms) terms.push_back(to_json(t));
  json doc{{"version", kSchemaVersion},
           {"params", params_json(P)},
           {"outcome", outcome_name(r.outcome)},
           {"lhs", to_json(r.lhs)},
           {"rhs", to_json(r.rhs)},
           {"terms", terms}};
  doc["summary"] = outcome_name(r.outcome);
  int code = r.outcome == RecurrenceOutcome::Consistent     ? kExitOk
             : r.outcome == RecurrenceOutcome::Inconsistent ? kExitViolation
                                                            : kExitInconclusive;
  return {doc, code};
}

Outcome cmd_hecke_check(Context& ctx, const HeckeArgs& a) {
  QuadraticField F = ctx.field(a.d);
  require(a.support >= 1 && a.max_norm >= 1, Errc::PreconditionViolated, "need support >= 1 and max-norm >= 1");
  HeckeContext hc{a.k, parse_ideal(F, a.level)};
  require(a.k >= 4 && a.k % 2 == 0, Errc::PreconditionViolated, "k must be even and >= 4");
  std::vector<Ideal> ideals = ideals_up_to(F, a.max_norm);
  std::mt19937_64 rng(a.seed);
  auto pick = [&]() { return ideals[std::uniform_int_distribution<std::size_t>(0, ideals.size() - 1)(rng)]; };
  auto random_f = [&]() {
    CoeffFunction f;
    unsigned size = std::uniform_int_distribution<unsigned>(1, a.support)(rng);
    for (unsigned i = 0; i < size; ++i) {
      long num = std::uniform_int_distribution<long>(-9, 9)(rng);
      long den = std::uniform_int_distribution<long>(1, 5)(rng);
      f.add(pick(), mpq_class(num, den));
    }
    return f;
  };
  const Ideal unit = Ideal::unit(F.basis());
  std::size_t sym_fail = 0, id_fail = 0, mult_fail = 0, comm_fail = 0, coprime_pairs = 0;
  for (std::uint64_t s = 0; s < a.samples; ++s) {
    Ideal m = pick(), q = pick();
    CoeffFunction f = random_f();
    mpq_class lhs = pairing(hc, m, q, f), rhs = pairing(hc, q, m, f);
    if (lhs != rhs) ++sym_fail;
    if (hecke_action(hc, unit, f) != f) ++id_fail;
    if (!check_commutativity(hc, m, q, f)) ++comm_fail;
    if ((m + q).is_unit()) {
      ++coprime_pairs;
      if (!check_multiplicativity(hc, m, q, f)) ++mult_fail;
    }
  }
  std::size_t total = sym_fail + id_fail + mult_fail + comm_fail;
  json doc{{"version", kSchemaVersion},
           {"field", F.spec()},
           {"k", a.k},
           {"level", to_json(hc.n)},
           {"samples", a.samples},
           {"seed", a.seed},
           {"symmetry_failures", sym_fail},
           {"identity_failures", id_fail},
           {"commutativity_failures", comm_fail},
           {"coprime_pairs", coprime_pairs},
           {"multiplicativity_failures", mult_fail}};
  doc["summary"] = total == 0 ? "symmetry holds" : std::to_string(total) + " failures";
  return {doc, total == 0 ? kExitOk : kExitViolation};
}

}  // namespace hpoincare::cli
