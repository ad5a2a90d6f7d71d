#include "hpoincare_cli/cache.hpp"

#include "hpoincare/errors.hpp"
#include "hpoincare/serialize.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>

namespace hpoincare::cli {

namespace {

constexpr const char* kCacheFile = "kloosterman-v1.jsonl";

std::string hex_of(mpfr_srcptr x) {
  char* s = nullptr;
  mpfr_asprintf(&s, "%Ra", x);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

json hex_interval(const Interval& x) { return json::array({hex_of(x.lo()), hex_of(x.hi())}); }

Interval interval_from_hex(const json& j, mpfr_prec_t prec) {
  Mpfr lo(prec), hi(prec);
  const std::string a = j.at(0).get<std::string>(), b = j.at(1).get<std::string>();
  char* end = nullptr;
  if (mpfr_strtofr(lo.get(), a.c_str(), &end, 0, MPFR_RNDD) != 0 || *end != '\0') {
    fail(Errc::ParseError, "inexact cache endpoint");
  }
  if (mpfr_strtofr(hi.get(), b.c_str(), &end, 0, MPFR_RNDU) != 0 || *end != '\0') {
    fail(Errc::ParseError, "inexact cache endpoint");
  }
  return Interval::hull(lo.get(), hi.get(), prec);
}

}  // namespace

std::string cache_key(const QuadraticField& F, const KloostermanQuery& q, const KloostermanOptions& opt) {
  return canonical_key(F, q) + "|prec=" + std::to_string(opt.prec) + "|cap=" + std::to_string(opt.order_cap);
}

KloostermanCache::KloostermanCache(std::string dir, std::string tool_version) : version_(std::move(tool_version)) {
  std::filesystem::create_directories(dir);
  path_ = (std::filesystem::path(dir) / kCacheFile).string();
  load();
}

void KloostermanCache::load() {
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      if (j.at("v") != kSchemaVersion || j.at("tool") != version_) continue;
      lines_.emplace(j.at("key").get<std::string>(), line);
    } catch (const json::exception&) {
      ++corrupt_;
    }
  }
}

std::optional<KloostermanValue> KloostermanCache::lookup(const std::string& key) const {
  std::string line;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = lines_.find(key);
    if (it == lines_.end()) return std::nullopt;
    line = it->second;
  }
  try {
    json j = json::parse(line);
    auto prec = j.at("prec").get<mpfr_prec_t>();
    KloostermanValue v;
    if (!j.at("exact").is_null()) {
      v.exact = cyclotomic_from_json(j.at("exact"));
      v.approx = {v.exact->real_part(prec), v.exact->imag_part(prec)};
    } else {
      v.approx = {interval_from_hex(j.at("re"), prec), interval_from_hex(j.at("im"), prec)};
    }
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void KloostermanCache::store(const std::string& key, const KloostermanValue& value) {
  json j{{"v", kSchemaVersion},
         {"tool", version_},
         {"key", key},
         {"prec", value.approx.re.prec()},
         {"exact", value.exact ? to_json(*value.exact) : json(nullptr)}};
  if (!value.exact) {
    j["re"] = hex_interval(value.approx.re);
    j["im"] = hex_interval(value.approx.im);
  }
  std::string line = j.dump() + "\n";
  std::lock_guard<std::mutex> lock(mu_);
  if (!lines_.emplace(key, line.substr(0, line.size() - 1)).second) return;
  // One write(2) per line so concurrent appenders never interleave.
  int fd = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT, 0644);
  if (fd < 0) return;
  ssize_t n = ::write(fd, line.data(), line.size());
  (void)n;
  ::close(fd);
}

KloostermanEvaluator KloostermanCache::evaluator(const QuadraticField& F, const KloostermanOptions& opt) {
  return [this, F, opt](const KloostermanQuery& q) {
    std::string key = cache_key(F, q, opt);
    if (auto hit = lookup(key)) {
      std::lock_guard<std::mutex> lock(mu_);
      ++hits_;
      return *hit;
    }
    KloostermanValue v = kloosterman_value(F, q, opt);
    store(key, v);
    std::lock_guard<std::mutex> lock(mu_);
    ++misses_;
    return v;
  };
}

std::size_t KloostermanCache::hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

std::size_t KloostermanCache::misses() const {
  std::lock_guard<std::mutex> lock(mu_);
  return misses_;
}

}  // namespace hpoincare::cli
