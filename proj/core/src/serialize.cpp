#include "hpoincare/serialize.hpp"

#include "hpoincare/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hpoincare {

namespace {

[[noreturn]] void parse_fail(const std::string& text, const std::string& why) {
  fail(Errc::ParseError, "cannot parse '" + text + "': " + why);
}

mpz_class parse_int(const std::string& text, const std::string& whole) {
  if (text.empty()) parse_fail(whole, "missing integer");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) parse_fail(whole, "missing digits");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) parse_fail(whole, "bad integer '" + text + "'");
  }
  mpz_class v;
  v.set_str(text[0] == '+' ? text.substr(1) : text, 10);
  return v;
}

const OElement& delta_of(const QuadraticField& F, const std::string& whole) {
  if (!F.delta()) parse_fail(whole, "delta is undefined for " + F.spec());
  return *F.delta();
}

// Top-level position of c outside parentheses, or npos.
std::size_t find_top(const std::string& s, char c) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && s[i] == c) return i;
  }
  return std::string::npos;
}

FElement parse_numerator(const QuadraticField& F, const std::string& s, const std::string& whole) {
  if (s.empty()) parse_fail(whole, "empty numerator");
  if (s == "delta") return FElement(delta_of(F, whole));
  if (s.front() == '(' && s.back() == ')') {
    std::string inner = s.substr(1, s.size() - 2);
    std::size_t comma = find_top(inner, ',');
    if (comma != std::string::npos) {
      return FElement(F.elem(parse_int(inner.substr(0, comma), whole), parse_int(inner.substr(comma + 1), whole)));
    }
    return parse_numerator(F, inner, whole);
  }
  mpz_class a = 0, b = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i + 1;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    i = j;
    int sign = 1;
    if (term[0] == '+' || term[0] == '-') {
      sign = term[0] == '-' ? -1 : 1;
      term = term.substr(1);
    }
    if (term.empty()) parse_fail(whole, "dangling sign");
    if (term.back() == 'w') {
      std::string coef = term.substr(0, term.size() - 1);
      if (!coef.empty()) {
        if (coef.back() != '*') parse_fail(whole, "expected '*' before w");
        coef.pop_back();
      }
      b += sign * (coef.empty() ? mpz_class(1) : parse_int(coef, whole));
    } else {
      a += sign * parse_int(term, whole);
    }
  }
  return FElement(F.elem(a, b));
}

std::string mpz_str(const mpz_class& v) { return v.get_str(); }

}  // namespace

FElement parse_element(const QuadraticField& F, const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  std::size_t slash = find_top(s, '/');
  FElement num = parse_numerator(F, s.substr(0, slash), text);
  if (slash == std::string::npos) return num;
  std::string den = s.substr(slash + 1);
  if (den == "delta") return num / FElement(delta_of(F, text));
  mpz_class d = parse_int(den, text);
  if (d == 0) parse_fail(text, "zero denominator");
  return num / FElement(F.integer(d));
}

OElement parse_integral(const QuadraticField& F, const std::string& text) {
  FElement x = parse_element(F, text);
  require(x.is_integral(), Errc::NotIntegral, "'" + text + "' is not an algebraic integer");
  return x.num();
}

Ideal parse_ideal(const QuadraticField& F, const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (!s.empty() && s.front() == '{' && s.back() == '}') s = s.substr(1, s.size() - 2);
  if (std::count(s.begin(), s.end(), ',') == 2 && s.find('(') == std::string::npos) {
    std::size_t p1 = s.find(','), p2 = s.find(',', p1 + 1);
    return Ideal::from_hnf(F.basis(), parse_int(s.substr(0, p1), text), parse_int(s.substr(p1 + 1, p2 - p1 - 1), text),
                           parse_int(s.substr(p2 + 1), text));
  }
  OElement g = parse_integral(F, s);
  require(!g.is_zero(), Errc::ZeroIdeal, "ideal generator is zero");
  return Ideal::principal(g);
}

json to_json(const mpz_class& v) { return mpz_str(v); }

json to_json(const mpq_class& v) { return v.get_str(); }

json to_json(const OElement& x) { return json{{"a", mpz_str(x.a())}, {"b", mpz_str(x.b())}}; }

json to_json(const FElement& x) { return json{{"num", to_json(x.num())}, {"den", mpz_str(x.den())}}; }

json to_json(const Ideal& x) { return json{{"a", mpz_str(x.a())}, {"b", mpz_str(x.b())}, {"c", mpz_str(x.c())}}; }

json to_json(const FractionalIdeal& x) { return json{{"num", to_json(x.num())}, {"den", mpz_str(x.den())}}; }

json to_json(const Interval& x) { return json::array({x.lo_string(kJsonDigits), x.hi_string(kJsonDigits)}); }

json to_json(const CyclotomicInteger& x) {
  json terms = json::array();
  for (std::size_t j = 0; j < x.coeffs().size(); ++j) {
    if (x.coeffs()[j] != 0) terms.push_back(json::array({j, mpz_str(x.coeffs()[j])}));
  }
  return json{{"order", x.order()}, {"terms", terms}};
}

json to_json(const KloostermanQuery& q) {
  return json{{"nu", to_json(q.nu)}, {"mu", to_json(q.mu)}, {"m", to_json(q.m)}, {"c", to_json(q.c)}};
}

json to_json(const ConstantsLedger& L) {
  return json{{"k", L.k},         {"eta", to_json(L.eta)}, {"A", to_json(L.A)},   {"C1", to_json(L.C1)},
              {"C2", to_json(L.C2)}, {"C3", to_json(L.C3)},  {"C4", to_json(L.C4)}, {"C5", to_json(L.C5)},
              {"C6", to_json(L.C6)}, {"C7", to_json(L.C7)},  {"C8", to_json(L.C8)}, {"C9", to_json(L.C9)},
              {"zeta", to_json(L.zeta)}, {"C", to_json(L.C)}};
}

json to_json(const Cutoffs& c) { return json{{"X", c.X}, {"M", c.M}, {"eta", to_json(c.eta)}}; }

json to_json(const CoefficientValue& v) {
  return json{{"chi", v.chi},
              {"chi_weight", to_json(v.chi_weight)},
              {"finite_part", to_json(v.finite_part)},
              {"tail", v.tail.mag().hi_string(kJsonDigits)},
              {"enclosure", to_json(v.enclosure())},
              {"cutoffs", to_json(v.cutoffs)},
              {"moduli", v.moduli},
              {"precision_exhausted", v.precision_exhausted}};
}

json field_json(const QuadraticField& F) { return json{{"spec", F.spec()}, {"d", F.d()}}; }

json to_json(const Certificate& c, const ConstantsLedger* ledger) {
  json params{{"field", field_json(c.params.F)},
              {"k", c.params.k},
              {"c", to_json(c.params.c)},
              {"n", to_json(c.params.n)}};
  json ladder = json::array();
  for (const Cutoffs& cut : c.ladder_tried) ladder.push_back(to_json(cut));
  json out{{"version", kSchemaVersion},
           {"params", params},
           {"mu", to_json(c.mu)},
           {"verdict", verdict_name(c.verdict)},
           {"chi", c.coefficient.chi},
           {"finite_part", to_json(c.coefficient.finite_part)},
           {"tail", c.coefficient.tail.mag().hi_string(kJsonDigits)},
           {"cutoffs", to_json(c.coefficient.cutoffs)},
           {"margin", to_json(c.margin)},
           {"zero_excluded", c.zero_excluded},
           {"precision_exhausted", c.coefficient.precision_exhausted},
           {"ladder", ladder}};
  out["ledger"] = ledger ? to_json(*ledger) : json::object();
  return out;
}

json to_json(const CoeffFunction& f) {
  json out = json::array();
  for (const auto& [a, v] : f.support()) out.push_back(json{{"ideal", to_json(a)}, {"value", to_json(v)}});
  return out;
}

mpz_class mpz_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (!j.is_string()) fail(Errc::ParseError, "expected an integer string");
  std::string s = j.get<std::string>();
  return parse_int(s, s);
}

mpq_class mpq_from_json(const json& j) {
  if (j.is_number_integer()) return mpq_class(mpz_from_json(j));
  if (!j.is_string()) fail(Errc::ParseError, "expected a rational string");
  std::string s = j.get<std::string>();
  std::size_t slash = s.find('/');
  mpz_class num = parse_int(s.substr(0, slash), s);
  mpz_class den = slash == std::string::npos ? mpz_class(1) : parse_int(s.substr(slash + 1), s);
  if (den == 0) fail(Errc::ParseError, "zero denominator in '" + s + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

OElement oelement_from_json(const QuadraticField& F, const json& j) {
  try {
    return F.elem(mpz_from_json(j.at("a")), mpz_from_json(j.at("b")));
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("element: ") + e.what());
  }
}

FElement felement_from_json(const QuadraticField& F, const json& j) {
  try {
    return FElement(oelement_from_json(F, j.at("num"))) / FElement(F.integer(mpz_from_json(j.at("den"))));
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("element: ") + e.what());
  }
}

Ideal ideal_from_json(const QuadraticField& F, const json& j) {
  try {
    return Ideal::from_hnf(F.basis(), mpz_from_json(j.at("a")), mpz_from_json(j.at("b")), mpz_from_json(j.at("c")));
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("ideal: ") + e.what());
  }
}

Interval interval_from_json(const json& j, mpfr_prec_t prec) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
    fail(Errc::ParseError, "interval must be [lo, hi] strings");
  }
  Mpfr lo(prec), hi(prec);
  if (mpfr_set_str(lo.get(), j[0].get<std::string>().c_str(), 10, MPFR_RNDD) != 0 &&
      !mpfr_number_p(lo.get())) {
    fail(Errc::ParseError, "bad interval endpoint");
  }
  if (mpfr_set_str(hi.get(), j[1].get<std::string>().c_str(), 10, MPFR_RNDU) != 0 &&
      !mpfr_number_p(hi.get())) {
    fail(Errc::ParseError, "bad interval endpoint");
  }
  if (mpfr_greater_p(lo.get(), hi.get())) fail(Errc::ParseError, "interval endpoints out of order");
  return Interval::hull(lo.get(), hi.get(), prec);
}

CyclotomicInteger cyclotomic_from_json(const json& j) {
  try {
    CyclotomicInteger out(j.at("order").get<std::uint64_t>());
    for (const auto& t : j.at("terms")) out.add_to(t.at(0).get<std::uint64_t>(), mpz_from_json(t.at(1)));
    return out;
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("cyclotomic value: ") + e.what());
  }
}

CoeffFunction coeff_function_from_json(const QuadraticField& F, const json& j) {
  if (!j.is_array()) fail(Errc::ParseError, "coefficient function must be a list");
  CoeffFunction f;
  for (const auto& e : j) {
    try {
      f.add(ideal_from_json(F, e.at("ideal")), mpq_from_json(e.at("value")));
    } catch (const json::exception& ex) {
      fail(Errc::ParseError, std::string("coefficient entry: ") + ex.what());
    }
  }
  return f;
}

json kloosterman_json(const QuadraticField& F, const KloostermanQuery& q, const KloostermanValue& v,
                      mpfr_prec_t prec) {
  json out{{"version", kSchemaVersion}, {"field", field_json(F)}, {"query", to_json(q)}};
  if (v.exact) {
    auto iv = v.exact->integer_value();
    out["exact"] = json{{"order", v.exact->order()},
                        {"value_as_rational_if_real", iv ? json(mpz_str(*iv)) : json(nullptr)},
                        {"value", to_json(*v.exact)}};
  } else {
    out["exact"] = nullptr;
  }
  out["float"] = json{{"re", to_json(v.approx.re)}, {"im", to_json(v.approx.im)}};
  WeilBound w = weil_bound(F, q, prec);
  out["weil_bound"] = json{{"coefficient", mpz_str(w.coefficient)},
                           {"radicand", to_json(w.radicand)},
                           {"value", to_json(w.value)}};
  return out;
}

std::string canonical_key(const QuadraticField& F, const KloostermanQuery& q) {
  std::ostringstream os;
  os << F.d() << '|' << q.nu.to_string() << '|' << q.mu.to_string() << '|' << q.m.to_string() << '|'
     << q.c.to_string();
  return os.str();
}

}  // namespace hpoincare
