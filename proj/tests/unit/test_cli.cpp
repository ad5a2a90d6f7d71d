#include "hpoincare_cli/cli.hpp"
#include "hpoincare/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace hpoincare::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hpoincare");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("hpoincare-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("field-info") {
  auto r = invoke({"--no-cache", "field-info", "--d", "5"});
  REQUIRE(r.code == kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["summary"] == "D=5 delta=(2,1) narrow_h1=true");
  CHECK(invoke({"--no-cache", "field-info", "--d", "12"}).code == kExitUsage);
  CHECK(invoke({"--no-cache", "field-info", "--d", "1"}).code == kExitUsage);
}

TEST_CASE("usage errors") {
  CHECK(invoke({"no-such-command"}).code == kExitUsage);
  CHECK(invoke({"--no-cache", "kloosterman", "--d", "5", "--nu", "1/delta"}).code == kExitUsage);
  auto bad = invoke({"--no-cache", "kloosterman", "--d", "5", "--nu", "1/3", "--mu", "1", "--c", "2"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.rfind("error: ", 0) == 0);
  CHECK(invoke({"--version"}).code == kExitOk);
  CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("exact Kloosterman value") {
  auto r = invoke({"--no-cache", "kloosterman", "--d", "5", "--nu", "1/delta", "--mu", "1/delta", "--c", "2", "--exact"});
  REQUIRE(r.code == kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["exact"]["value_as_rational_if_real"] == "-1");
}

TEST_CASE("config file") {
  TempDir t;
  auto good = t.path / "good.json";
  std::ofstream(good) << R"({"field": 5, "precision": 96, "format": "csv"})";
  auto r = invoke({"--no-cache", "--config", good.string(), "field-info"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("summary,") != std::string::npos);

  auto bad = t.path / "bad.json";
  std::ofstream(bad) << R"({"feild": 5})";
  CHECK(invoke({"--config", bad.string(), "field-info", "--d", "5"}).code == kExitUsage);
  CHECK_THROWS_AS(load_config_file(bad.string()), hpoincare::Error);
  CHECK(invoke({"--config", (t.path / "missing.json").string(), "field-info", "--d", "5"}).code == kExitUsage);

  Config c;
  c.precision = 8;
  CHECK_THROWS_AS(validate_config(c), hpoincare::Error);
}

TEST_CASE("output formats") {
  nlohmann::ordered_json doc = {{"summary", "ok"}, {"a", {{"b", 1}, {"c", "x"}}}, {"list", {1, 2}}};
  std::string csv = render(doc, Format::Csv);
  CHECK(csv.find("summary,ok") != std::string::npos);
  CHECK(csv.find("a.b,1") != std::string::npos);
  CHECK(csv.find("a.c,x") != std::string::npos);
  std::string table = render(doc, Format::Table);
  CHECK(table.rfind("ok\n", 0) == 0);
  CHECK(nlohmann::ordered_json::parse(render(doc, Format::Json)) == doc);
  CHECK(parse_format("table") == Format::Table);
  CHECK_THROWS(parse_format("xml"));
}

TEST_CASE("cache gives byte-identical output") {
  TempDir t;
  std::vector<std::string> cmd{"--cache-dir", t.path.string(), "-v", "certify", "--d", "5", "--k", "8", "--X", "250", "--M", "2"};
  auto cold = invoke(cmd);
  auto warm = invoke(cmd);
  REQUIRE(cold.code == kExitOk);
  CHECK(warm.code == cold.code);
  CHECK(warm.out == cold.out);
  CHECK(fs::exists(t.path / "kloosterman-v1.jsonl"));
  CHECK(cold.err.find(" 0 hits") != std::string::npos);
  CHECK(warm.err.find(" 0 misses") != std::string::npos);
  auto uncached = invoke({"--no-cache", "certify", "--d", "5", "--k", "8", "--X", "250", "--M", "2"});
  CHECK(uncached.out == cold.out);

  // A corrupt line is skipped, not fatal.
  std::ofstream(t.path / "kloosterman-v1.jsonl", std::ios::app) << "{not json\n";
  auto again = invoke(cmd);
  CHECK(again.code == kExitOk);
  CHECK(again.out == cold.out);
}

TEST_CASE("inconclusive certificate exit code") {
  auto r = invoke({"--no-cache", "certify", "--d", "5", "--k", "8", "--X", "1", "--M", "0"});
  CHECK(r.code == kExitInconclusive);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "INCONCLUSIVE");
}

TEST_CASE("check commands") {
  auto s = invoke({"--no-cache", "selberg-check", "--d", "5", "--max-norm-q", "30"});
  CHECK(s.code == kExitOk);
  auto w = invoke({"--no-cache", "weil-audit", "--d", "2", "--samples", "50"});
  CHECK(w.code == kExitOk);
  auto h = invoke({"--no-cache", "hecke-check", "--d", "5", "--k", "8", "--samples", "20"});
  CHECK(h.code == kExitOk);
  CHECK(nlohmann::json::parse(h.out)["summary"] == "symmetry holds");
}
