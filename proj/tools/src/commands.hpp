#pragma once

#include "hpoincare/serialize.hpp"
#include "hpoincare_cli/cache.hpp"
#include "hpoincare_cli/config.hpp"

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>

namespace hpoincare::cli {

struct Context {
  Config cfg;
  std::unique_ptr<KloostermanCache> cache;
  std::ostream* err = nullptr;

  QuadraticField field(std::int64_t d_flag) const;
  KloostermanEvaluator evaluator(const QuadraticField& F);
  CoefficientOptions coefficient_options(const QuadraticField& F);
};

struct Outcome {
  json doc;
  int exit_code = 0;
};

struct FieldInfoArgs {
  std::int64_t d = 0;
};

struct KloostermanArgs {
  std::int64_t d = 0;
  std::string nu, mu, c, m;
  bool exact = false;
};

struct SelbergArgs {
  std::int64_t d = 0;
  std::uint64_t max_norm_q = 200;
  std::string grid = "small";
};

struct WeilAuditArgs {
  std::int64_t d = 0;
  std::uint64_t samples = 500;
  std::uint64_t seed = 1;
  std::uint64_t max_norm = 200;
};

struct CertifyArgs {
  std::int64_t d = 0;
  long k = 8;
  std::string level = "1", c = "1", mu = "1";
  std::uint64_t X = 0;
  long M = -1;
};

struct ThresholdsArgs {
  std::int64_t d = 0;
  long k = 8;
  std::string level = "1", c = "1", alpha = "1";
  std::string eta = "1/2";
};

struct RecurrenceArgs {
  std::int64_t d = 0;
  long k = 8;
  std::string level = "1", q = "1", nu = "1", mu = "1", p;
  unsigned m = 1, n = 1;
  std::uint64_t X = 10000;
  long M = 3;
};

struct HeckeArgs {
  std::int64_t d = 0;
  long k = 8;
  std::string level = "1";
  std::uint64_t samples = 200;
  std::uint64_t seed = 1;
  std::uint64_t max_norm = 200;
  unsigned support = 6;
};

Outcome cmd_field_info(Context& ctx, const FieldInfoArgs& a);
Outcome cmd_kloosterman(Context& ctx, const KloostermanArgs& a);
Outcome cmd_selberg_check(Context& ctx, const SelbergArgs& a);
Outcome cmd_weil_audit(Context& ctx, const WeilAuditArgs& a);
Outcome cmd_certify(Context& ctx, const CertifyArgs& a);
Outcome cmd_thresholds(Context& ctx, const ThresholdsArgs& a);
Outcome cmd_recurrence(Context& ctx, const RecurrenceArgs& a);
Outcome cmd_hecke_check(Context& ctx, const HeckeArgs& a);

}  // namespace hpoincare::cli
