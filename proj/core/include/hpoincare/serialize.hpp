#pragma once

// JSON forms of the library types (schema "v1") and the element grammar used
// on the command line.

#include "hpoincare/cyclotomic.hpp"
#include "hpoincare/hecke.hpp"
#include "hpoincare/kloosterman.hpp"
#include "hpoincare/ledger.hpp"
#include "hpoincare/poincare.hpp"

#include <json.hpp>

#include <string>

namespace hpoincare {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "v1";
inline constexpr int kJsonDigits = 20;

// Element grammar:
//   elem   := num [ "/" den ]
//   num    := "(" int "," int ")" | term { ("+"|"-") term } | "delta"
//   term   := int | [int "*"] "w"
//   den    := int | "delta"
// w is the integral basis element omega; delta the totally positive
// generator of the different.  Throws ParseError.
FElement parse_element(const QuadraticField& F, const std::string& text);
// Integral elements only.  Throws ParseError / NotIntegral.
OElement parse_integral(const QuadraticField& F, const std::string& text);
// "a,b,c" Hermite normal form, or an element generating a principal ideal.
Ideal parse_ideal(const QuadraticField& F, const std::string& text);

json to_json(const mpz_class& v);
json to_json(const mpq_class& v);
json to_json(const OElement& x);
json to_json(const FElement& x);
json to_json(const Ideal& x);
json to_json(const FractionalIdeal& x);
// [lo, hi] as outward-rounded decimal strings.
json to_json(const Interval& x);
json to_json(const CyclotomicInteger& x);
json to_json(const KloostermanQuery& q);
json to_json(const ConstantsLedger& L);
json to_json(const Cutoffs& c);
json to_json(const CoefficientValue& v);
json to_json(const Certificate& c, const ConstantsLedger* ledger = nullptr);
json to_json(const CoeffFunction& f);

json field_json(const QuadraticField& F);

mpz_class mpz_from_json(const json& j);
mpq_class mpq_from_json(const json& j);
OElement oelement_from_json(const QuadraticField& F, const json& j);
FElement felement_from_json(const QuadraticField& F, const json& j);
Ideal ideal_from_json(const QuadraticField& F, const json& j);
Interval interval_from_json(const json& j, mpfr_prec_t prec = kDefaultPrecision);
CyclotomicInteger cyclotomic_from_json(const json& j);
CoeffFunction coeff_function_from_json(const QuadraticField& F, const json& j);

// Kloosterman output: query, exact value when available, enclosure and the
// Weil bound.
json kloosterman_json(const QuadraticField& F, const KloostermanQuery& q, const KloostermanValue& v,
                      mpfr_prec_t prec = kDefaultPrecision);

// Canonical one-line key for caching a Kloosterman query.
std::string canonical_key(const QuadraticField& F, const KloostermanQuery& q);

}  // namespace hpoincare
