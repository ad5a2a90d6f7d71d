#include "hpoincare_cli/cli.hpp"

#include "commands.hpp"
#include "hpoincare/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iomanip>
#include <sstream>

#ifndef HPOINCARE_VERSION
#define HPOINCARE_VERSION "0.0.0"
#endif

namespace hpoincare::cli {

std::string tool_version() { return HPOINCARE_VERSION; }

namespace {

using ojson = nlohmann::ordered_json;

void flatten(const ojson& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array()) {
    if (j.empty()) rows.emplace_back(prefix, "");
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), rows);
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

constexpr const char* kElementHelp =
    "Elements: a+b*w, (a,b), either optionally followed by /den; den is an integer or 'delta'. "
    "w is the integral basis element, delta the totally positive generator of the different. "
    "Ideals: an element (principal ideal) or the Hermite normal form triple a,b,c.";

}  // namespace

std::string render(const ojson& doc, Format f) {
  if (f == Format::Json) return doc.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(doc, "", rows);
  std::ostringstream os;
  if (f == Format::Csv) {
    os << "key,value\n";
    for (const auto& [k, v] : rows) os << csv_field(k) << ',' << csv_field(v) << '\n';
    return os.str();
  }
  if (doc.contains("summary")) os << doc["summary"].get<std::string>() << '\n';
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  for (const auto& [k, v] : rows) {
    if (k == "summary") continue;
    os << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
  }
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kloosterman sums and Poincare series coefficients over real quadratic fields", "hpoincare"};
  app.footer(kElementHelp);
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  std::string config_path, format, cache_dir;
  long prec = 0;
  int threads = -1;
  bool no_cache = false, verbose = false;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--cache-dir", cache_dir, "Kloosterman cache directory (default $POINCARE_CACHE_DIR)");
  app.add_flag("--no-cache", no_cache, "Disable the Kloosterman cache");
  app.add_option("--prec", prec, "Working precision in bits");
  app.add_option("--threads", threads, "Worker threads, 0 for all cores");
  app.add_flag("-v,--verbose", verbose, "Report cache statistics on stderr");

  std::function<Outcome(Context&)> action;
  auto d_opt = [](CLI::App* sub, std::int64_t& d) { sub->add_option("--d", d, "Squarefree d of Q(sqrt d)"); };

  FieldInfoArgs fi;
  auto* s_fi = app.add_subcommand("field-info", "Invariants of Q(sqrt d)");
  d_opt(s_fi, fi.d);
  s_fi->callback([&] { action = [&](Context& c) { return cmd_field_info(c, fi); }; });

  KloostermanArgs kl;
  auto* s_kl = app.add_subcommand("kloosterman", "Evaluate S_m(nu, mu; c)");
  d_opt(s_kl, kl.d);
  s_kl->add_option("--nu", kl.nu, "nu")->required();
  s_kl->add_option("--mu", kl.mu, "mu")->required();
  s_kl->add_option("--c", kl.c, "c")->required();
  s_kl->add_option("--m", kl.m, "Modulus ideal m (default (c))");
  s_kl->add_flag("--exact", kl.exact, "Fail unless the exact cyclotomic value is computable");
  s_kl->callback([&] { action = [&](Context& c) { return cmd_kloosterman(c, kl); }; });

  SelbergArgs sb;
  auto* s_sb = app.add_subcommand("selberg-check", "Check the Selberg identity on a grid");
  d_opt(s_sb, sb.d);
  s_sb->add_option("--max-norm-q", sb.max_norm_q, "Largest |N(q)|");
  s_sb->add_option("--grid", sb.grid, "small (5x5) or large (9x9)")->check(CLI::IsMember({"small", "large"}));
  s_sb->callback([&] { action = [&](Context& c) { return cmd_selberg_check(c, sb); }; });

  WeilAuditArgs wa;
  auto* s_wa = app.add_subcommand("weil-audit", "Compare random Kloosterman sums against the Weil bound");
  d_opt(s_wa, wa.d);
  s_wa->add_option("--samples", wa.samples, "Number of random queries");
  s_wa->add_option("--seed", wa.seed, "Random seed");
  s_wa->add_option("--max-norm", wa.max_norm, "Largest N(m)");
  s_wa->callback([&] { action = [&](Context& c) { return cmd_weil_audit(c, wa); }; });

  CertifyArgs ce;
  auto* s_ce = app.add_subcommand("certify", "Certify c_k(mu, mu) != 0");
  d_opt(s_ce, ce.d);
  s_ce->add_option("--k", ce.k, "Even weight >= 4");
  s_ce->add_option("--level", ce.level, "Level ideal n");
  s_ce->add_option("--c", ce.c, "Ideal c (fractional allowed)");
  s_ce->add_option("--mu", ce.mu, "mu");
  s_ce->add_option("--X", ce.X, "Single cutoff: largest |N(c)|");
  s_ce->add_option("--M", ce.M, "Single cutoff: largest |j| in the unit sum");
  s_ce->callback([&] { action = [&](Context& c) { return cmd_certify(c, ce); }; });

  ThresholdsArgs th;
  auto* s_th = app.add_subcommand("thresholds", "Constants ledger and non-vanishing thresholds");
  d_opt(s_th, th.d);
  s_th->add_option("--k", th.k, "Even weight >= 4");
  s_th->add_option("--level", th.level, "Level ideal n");
  s_th->add_option("--c", th.c, "Ideal c");
  s_th->add_option("--alpha", th.alpha, "alpha with alpha c integral");
  s_th->add_option("--eta", th.eta, "Envelope exponent in (0, 1), e.g. 0.5 or 1/2");
  s_th->callback([&] { action = [&](Context& c) { return cmd_thresholds(c, th); }; });

  RecurrenceArgs rc;
  auto* s_rc = app.add_subcommand("recurrence", "Check the coefficient recurrence at a prime p");
  d_opt(s_rc, rc.d);
  s_rc->add_option("--k", rc.k, "Even weight >= 4");
  s_rc->add_option("--level", rc.level, "Level ideal n");
  s_rc->add_option("--q", rc.q, "Totally positive q with c = (q)");
  s_rc->add_option("--nu", rc.nu, "nu");
  s_rc->add_option("--mu", rc.mu, "mu");
  s_rc->add_option("--p", rc.p, "Totally positive prime element")->required();
  s_rc->add_option("--m", rc.m, "Exponent m >= 1");
  s_rc->add_option("--n", rc.n, "Exponent n >= 1");
  s_rc->add_option("--X", rc.X, "Largest |N(c)|");
  s_rc->add_option("--M", rc.M, "Largest |j| in the unit sum");
  s_rc->callback([&] { action = [&](Context& c) { return cmd_recurrence(c, rc); }; });

  HeckeArgs hk;
  auto* s_hk = app.add_subcommand("hecke-check", "Pairing symmetry, T_O identity and multiplicativity");
  d_opt(s_hk, hk.d);
  s_hk->add_option("--k", hk.k, "Even weight >= 4");
  s_hk->add_option("--level", hk.level, "Level ideal n");
  s_hk->add_option("--samples", hk.samples, "Number of random samples");
  s_hk->add_option("--seed", hk.seed, "Random seed");
  s_hk->add_option("--max-norm", hk.max_norm, "Largest ideal norm sampled");
  s_hk->add_option("--support", hk.support, "Largest support size of a sampled function");
  s_hk->callback([&] { action = [&](Context& c) { return cmd_hecke_check(c, hk); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    Context ctx;
    ctx.err = &err;
    if (!config_path.empty()) ctx.cfg = load_config_file(config_path, ctx.cfg);
    if (const char* env = std::getenv("POINCARE_CACHE_DIR"); env && *env) ctx.cfg.cache_dir = env;
    if (!cache_dir.empty()) ctx.cfg.cache_dir = cache_dir;
    if (!format.empty()) ctx.cfg.format = parse_format(format);
    if (prec > 0) ctx.cfg.precision = prec;
    if (threads >= 0) ctx.cfg.threads = static_cast<unsigned>(threads);
    validate_config(ctx.cfg);
    if (!no_cache && !ctx.cfg.cache_dir.empty()) {
      ctx.cache = std::make_unique<KloostermanCache>(ctx.cfg.cache_dir, tool_version());
      if (ctx.cache->corrupt_lines() > 0) {
        err << "warning: skipped " << ctx.cache->corrupt_lines() << " corrupt cache lines in " << ctx.cache->path()
            << '\n';
      }
    }
    Outcome o = action(ctx);
    out << render(o.doc, ctx.cfg.format);
    if (verbose && ctx.cache) {
      err << "cache: " << ctx.cache->hits() << " hits, " << ctx.cache->misses() << " misses\n";
    }
    return o.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace hpoincare::cli
