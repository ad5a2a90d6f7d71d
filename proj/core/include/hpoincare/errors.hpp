#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hpoincare {

enum class Errc {
  NotSquarefree,
  ZeroElement,
  ZeroIdeal,
  NotDivisible,
  NotIntegral,
  NotInvertible,
  BudgetExceeded,
  SearchBudgetExceeded,
  MembershipViolated,
  PreconditionViolated,
  NonPrincipalDivisor,
  FieldMismatch,
  NarrowClassNumber,
  ParseError,
  FactorizationTooLarge,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// the CLI can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace hpoincare
