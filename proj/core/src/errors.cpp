#include "hpoincare/errors.hpp"

namespace hpoincare {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotSquarefree: return "NotSquarefree";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::ZeroIdeal: return "ZeroIdeal";
    case Errc::NotDivisible: return "NotDivisible";
    case Errc::NotIntegral: return "NotIntegral";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case Errc::MembershipViolated: return "MembershipViolated";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::NonPrincipalDivisor: return "NonPrincipalDivisor";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::NarrowClassNumber: return "NarrowClassNumber";
    case Errc::ParseError: return "ParseError";
    case Errc::FactorizationTooLarge: return "FactorizationTooLarge";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace hpoincare
