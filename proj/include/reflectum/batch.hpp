#pragma once

// JSONL batch classification with an append-only result cache. Workers run
// jobs concurrently; the calling thread is the only writer and emits records
// in input order.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "reflectum/serialize.hpp"

namespace reflectum::batch {

using serialize::json;

inline std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string cache_key(const Integer& n, const reflect::ReflectType& type, const reflect::ClassifyOptions& o) {
  std::ostringstream s;
  s << n.get_str() << '|' << type.to_string() << '|' << std::hex << fnv1a(serialize::options_to_json(o).dump());
  return s.str();
}

/// Append-only JSONL file of {"key": ..., "record": ...}; the last line for a key wins.
class Cache {
 public:
  Cache() = default;

  explicit Cache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("key") || !j.contains("record")) continue;
      entries_[j["key"].get<std::string>()] = j["record"];
    }
  }

  std::optional<json> find(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void append(const std::string& key, const json& record) {
    entries_[key] = record;
    if (path_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    out << json{{"key", key}, {"record", record}}.dump() << '\n';
  }

  std::size_t size() const { return entries_.size(); }

 private:
  std::string path_;
  std::map<std::string, json> entries_;
};

struct Stats {
  std::size_t total = 0, cached = 0, computed = 0, errors = 0;
};

namespace detail {

struct Job {
  std::size_t line = 0;
  std::string raw;
  std::optional<Integer> n;
  std::optional<reflect::ReflectType> type;
  reflect::ClassifyOptions options;
  std::string key;
  std::string error;
};

inline Job parse_job(std::size_t line, const std::string& raw, const reflect::ClassifyOptions& defaults) {
  Job job;
  job.line = line;
  job.raw = raw;
  try {
    json j = json::parse(raw);
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "line is not a JSON object");
    job.n = serialize::integer_from_json(j.at("n"));
    job.type = j.contains("type") ? serialize::type_from_json(j["type"]) : reflect::ReflectType{2, 2};
    job.options = j.contains("options") ? serialize::options_from_json(j["options"], defaults) : defaults;
    job.key = cache_key(*job.n, *job.type, job.options);
  } catch (const json::exception& e) {
    job.error = std::string("ParseError: ") + e.what();
  } catch (const Error& e) {
    job.error = e.what();
  }
  return job;
}

inline json error_record(const Job& job, const std::string& message) {
  json r = {{"line", job.line}, {"error", message}, {"tool_version", serialize::kToolVersion}};
  if (job.n) r["n"] = serialize::integer_to_json(*job.n);
  if (job.type) r["type"] = serialize::type_to_json(*job.type);
  return r;
}

inline json run_job(const Job& job) {
  auto start = std::chrono::steady_clock::now();
  try {
    serialize::JobRecord rec;
    rec.n = *job.n;
    rec.type = *job.type;
    rec.options = job.options;
    rec.verdict = reflect::classify(rec.n, rec.type, rec.options);
    rec.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return serialize::record_to_json(rec);
  } catch (const Error& e) {
    return error_record(job, e.what());
  }
}

}  // namespace detail

/// Classifies every non-empty input line and writes one record per line.
inline Stats run(std::istream& in, std::ostream& out, Cache& cache, unsigned jobs,
                 const reflect::ClassifyOptions& defaults, std::ostream* log = nullptr) {
  std::vector<detail::Job> all;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    all.push_back(detail::parse_job(no, line, defaults));
  }
  Stats stats;
  stats.total = all.size();

  std::vector<std::optional<json>> results(all.size());
  std::vector<bool> from_cache(all.size(), false);
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!all[i].error.empty()) {
      results[i] = detail::error_record(all[i], all[i].error);
    } else if (auto hit = cache.find(all[i].key)) {
      results[i] = *hit;
      from_cache[i] = true;
    } else {
      pending.push_back(i);
    }
  }

  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < pending.size();) {
      const std::size_t i = pending[k];
      json r = detail::run_job(all[i]);
      {
        std::lock_guard<std::mutex> lock(mu);
        results[i] = std::move(r);
      }
      ready.notify_all();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);

  for (std::size_t i = 0; i < all.size(); ++i) {
    json r;
    {
      std::unique_lock<std::mutex> lock(mu);
      ready.wait(lock, [&] { return results[i].has_value(); });
      r = *results[i];
    }
    out << r.dump() << '\n';
    if (r.contains("error")) {
      ++stats.errors;
    } else if (from_cache[i]) {
      ++stats.cached;
      if (log) *log << "cache hit: line " << all[i].line << " (" << all[i].key << ")\n";
    } else {
      ++stats.computed;
      cache.append(all[i].key, r);
    }
  }
  out.flush();
  for (auto& t : pool) t.join();
  return stats;
}

}  // namespace reflectum::batch
