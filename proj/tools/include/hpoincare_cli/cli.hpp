#pragma once

// The hpoincare command-line tool as a library, so tests can drive it
// in-process.
//
// Exit status: 0 success, 1 an identity or bound violation was found,
// 2 usage or precondition error, 3 inconclusive certificate or check.

#include "hpoincare_cli/config.hpp"

#include <json.hpp>

#include <ostream>
#include <string>

namespace hpoincare::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInconclusive = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// json: the document, indented.  csv: "key,value" rows over the flattened
// document in emission order, nested keys joined with '.'.  table: the
// "summary" field on the first line, then aligned key/value rows.
std::string render(const nlohmann::ordered_json& doc, Format f);

std::string tool_version();

}  // namespace hpoincare::cli
