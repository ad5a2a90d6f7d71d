#pragma once

// Settings shared by every subcommand.  Precedence, lowest first: built-in
// defaults, the config file, POINCARE_CACHE_DIR, command-line flags.
//
// Config file keys (JSON object, anything else is rejected):
//   field           squarefree d of the default field Q(sqrt d)
//   order_cap       largest root-of-unity order for exact Kloosterman sums
//   residue_budget  largest N(m) enumerated for a Kloosterman sum
//   precision       working precision in bits
//   threads         worker threads, 0 for all cores
//   cache_dir       directory of the Kloosterman cache, "" disables it
//   format          "json", "csv" or "table"

#include "hpoincare/kloosterman.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace hpoincare::cli {

enum class Format { Json, Csv, Table };

struct Config {
  std::optional<std::int64_t> field;
  std::uint64_t order_cap = kDefaultOrderCap;
  std::uint64_t residue_budget = kDefaultResidueBudget;
  long precision = kDefaultPrecision;
  unsigned threads = 0;
  std::string cache_dir;
  Format format = Format::Json;

  KloostermanOptions kloosterman() const;
};

Format parse_format(const std::string& s);
std::string format_name(Format f);

// Throws hpoincare::Error(ParseError) on unreadable files, unknown keys or
// non-positive caps.
Config load_config_file(const std::string& path, Config base = {});
void validate_config(const Config& c);

}  // namespace hpoincare::cli
