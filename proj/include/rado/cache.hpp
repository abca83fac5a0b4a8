#pragma once

#include <algorithm>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rado/core.hpp"
#include "rado/formula.hpp"
#include "rado/solver.hpp"

namespace rado {

/// One line of the result cache. Keyed by the sorted coefficient tuple;
/// status is one of "confirmed-at-n", "witness-only", "inconclusive".
struct CacheRecord {
  std::vector<Int> coeffs;  // sorted ascending
  CanonicalForm canonical;
  Int rado = 0;
  std::string status = "witness-only";
  Int search_n = 0;  // n at which UNSAT was proved; 0 unless confirmed
  Int witness_n = 0;
  std::string updated;  // ISO-8601 UTC
  SearchStats stats;

  static int rank(const std::string& status) {
    if (status == "confirmed-at-n") return 2;
    if (status == "witness-only") return 1;
    return 0;
  }
};

inline std::string cache_key(std::vector<Int> coeffs) {
  std::sort(coeffs.begin(), coeffs.end());
  std::string key;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(coeffs[i]);
  }
  return key;
}

inline std::string now_iso8601_utc() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline nlohmann::json to_json(const CacheRecord& rec) {
  return nlohmann::json{
      {"coeffs", rec.coeffs},
      {"canonical", {{"a", rec.canonical.a}, {"b", rec.canonical.b}, {"v", rec.canonical.v}}},
      {"R", rec.rado},
      {"status", rec.status},
      {"search_n", rec.search_n},
      {"witness_n", rec.witness_n},
      {"updated", rec.updated},
      {"stats",
       {{"nodes", rec.stats.nodes},
        {"propagations", rec.stats.propagations},
        {"chain_firings", rec.stats.chain_firings},
        {"seconds", rec.stats.seconds}}}};
}

inline CacheRecord record_from_json(const nlohmann::json& j) {
  CacheRecord rec;
  rec.coeffs = j.at("coeffs").get<std::vector<Int>>();
  rec.canonical.a = j.at("canonical").at("a").get<Int>();
  rec.canonical.b = j.at("canonical").at("b").get<Int>();
  rec.canonical.v = j.at("canonical").at("v").get<Int>();
  rec.canonical.m = static_cast<Int>(rec.coeffs.size());
  rec.rado = j.at("R").get<Int>();
  rec.status = j.at("status").get<std::string>();
  rec.search_n = j.value("search_n", Int{0});
  rec.witness_n = j.value("witness_n", Int{0});
  rec.updated = j.value("updated", std::string{});
  if (j.contains("stats")) {
    const auto& s = j.at("stats");
    rec.stats.nodes = s.value("nodes", std::uint64_t{0});
    rec.stats.propagations = s.value("propagations", std::uint64_t{0});
    rec.stats.chain_firings = s.value("chain_firings", std::uint64_t{0});
    rec.stats.seconds = s.value("seconds", 0.0);
  }
  return rec;
}

/// Append-only JSONL cache; the last record per key wins. Unreadable lines
/// (for example a torn tail after a crash) are skipped with a warning, and a
/// record whose stored R disagrees with the closed form is treated the same.
class CacheFile {
 public:
  explicit CacheFile(std::filesystem::path path) : path_(std::move(path)) { load(); }

  const std::filesystem::path& path() const { return path_; }

  std::optional<CacheRecord> lookup(const std::vector<Int>& coeffs) const {
    const auto it = records_.find(cache_key(coeffs));
    if (it == records_.end()) return std::nullopt;
    return it->second;
  }

  /// Merges with any existing record so a confirmed result is never
  /// downgraded, then appends the merged record.
  const CacheRecord& upsert(CacheRecord rec) {
    std::sort(rec.coeffs.begin(), rec.coeffs.end());
    const std::string key = cache_key(rec.coeffs);
    const auto it = records_.find(key);
    if (it != records_.end() &&
        CacheRecord::rank(it->second.status) > CacheRecord::rank(rec.status)) {
      rec.status = it->second.status;
      rec.search_n = it->second.search_n;
      rec.stats = it->second.stats;
    }
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot open cache for append: " + path_.string());
    out << to_json(rec).dump() << '\n';
    out.flush();
    if (!out) throw std::runtime_error("cache write failed: " + path_.string());
    auto [pos, inserted] = records_.insert_or_assign(key, std::move(rec));
    return pos->second;
  }

 private:
  void load() {
    std::ifstream in(path_);
    if (!in) return;  // no cache yet
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        CacheRecord rec = record_from_json(nlohmann::json::parse(line));
        const RadoValue expect = rado_number(EquationSpec{rec.coeffs});
        if (expect.value != rec.rado)
          throw std::runtime_error("stored R disagrees with the closed form");
        records_.insert_or_assign(cache_key(rec.coeffs), std::move(rec));
      } catch (const std::exception& e) {
        std::cerr << "warning: skipping cache line " << lineno << " of " << path_.string()
                  << ": " << e.what() << '\n';
      }
    }
  }

  std::filesystem::path path_;
  std::map<std::string, CacheRecord> records_;
};

}  // namespace rado
