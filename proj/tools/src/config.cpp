#include "hpoincare_cli/config.hpp"

#include "hpoincare/errors.hpp"

#include <json.hpp>

#include <fstream>

namespace hpoincare::cli {

KloostermanOptions Config::kloosterman() const {
  KloostermanOptions o;
  o.order_cap = order_cap;
  o.residue_budget = residue_budget;
  o.threads = threads;
  o.prec = precision;
  return o;
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "table") return Format::Table;
  fail(Errc::ParseError, "unknown output format '" + s + "'");
}

std::string format_name(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Table: return "table";
  }
  return "json";
}

void validate_config(const Config& c) {
  require(c.order_cap > 0, Errc::ParseError, "order_cap must be positive");
  require(c.residue_budget > 0, Errc::ParseError, "residue_budget must be positive");
  require(c.precision >= 24 && c.precision <= 1 << 16, Errc::ParseError, "precision must lie in [24, 65536]");
}

Config load_config_file(const std::string& path, Config base) {
  std::ifstream in(path);
  require(static_cast<bool>(in), Errc::ParseError, "cannot open config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, "config " + path + ": " + e.what());
  }
  require(j.is_object(), Errc::ParseError, "config " + path + " must hold a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "field") {
        base.field = v.get<std::int64_t>();
      } else if (key == "order_cap") {
        base.order_cap = v.get<std::uint64_t>();
      } else if (key == "residue_budget") {
        base.residue_budget = v.get<std::uint64_t>();
      } else if (key == "precision") {
        base.precision = v.get<long>();
      } else if (key == "threads") {
        base.threads = v.get<unsigned>();
      } else if (key == "cache_dir") {
        base.cache_dir = v.get<std::string>();
      } else if (key == "format") {
        base.format = parse_format(v.get<std::string>());
      } else {
        fail(Errc::ParseError, "config " + path + ": unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, "config " + path + ": " + e.what());
  }
  validate_config(base);
  return base;
}

}  // namespace hpoincare::cli
