#pragma once

// Append-only JSONL cache of Kloosterman sums, one entry per line:
//   {"v":"v1","tool":<version>,"key":<canonical key>,"exact":<cyclotomic|null>,
//    "re":[lo,hi],"im":[lo,hi]}
// Interval endpoints are stored as exact hexadecimal floats so a cache hit
// reproduces the cold value bit for bit.  Lines from another tool version
// are ignored; unparsable lines are skipped and counted.

#include "hpoincare/kloosterman.hpp"

#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace hpoincare::cli {

class KloostermanCache {
 public:
  KloostermanCache(std::string dir, std::string tool_version);

  std::optional<KloostermanValue> lookup(const std::string& key) const;
  void store(const std::string& key, const KloostermanValue& value);

  // Wraps kloosterman_value with lookups and stores.  Safe to call from
  // several threads.
  KloostermanEvaluator evaluator(const QuadraticField& F, const KloostermanOptions& opt);

  std::size_t corrupt_lines() const { return corrupt_; }
  std::size_t hits() const;
  std::size_t misses() const;
  const std::string& path() const { return path_; }

 private:
  void load();

  std::string path_;
  std::string version_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::string> lines_;
  std::size_t corrupt_ = 0;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

// Cache key including everything that can change the stored value.
std::string cache_key(const QuadraticField& F, const KloostermanQuery& q, const KloostermanOptions& opt);

}  // namespace hpoincare::cli
