#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace birat {

// Stable 128-bit content hash rendered as 32 hex digits.
std::string content_hash(const std::string& text);

// Persistent Groebner basis store with write-once, atomically published
// entries. Unreadable or corrupt entries behave like misses.
class BasisStore {
 public:
  explicit BasisStore(std::filesystem::path dir);
  std::optional<std::string> load(const std::string& key) const;
  void store(const std::string& key, const std::string& payload) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path entry(const std::string& key) const;
  std::filesystem::path dir_;
};

struct PhaseCounters {
  std::uint64_t groebner_calls = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;
};

// Per-run context consulted by the ideal engine. Installed for the current
// thread with SessionScope; computations never depend on whether one exists.
class Session {
 public:
  explicit Session(std::optional<std::filesystem::path> cache_dir = std::nullopt,
                   double min_cached_seconds = 0.05);
  const BasisStore* store() const { return store_ ? &*store_ : nullptr; }
  double min_cached_seconds() const { return min_cached_seconds_; }
  PhaseCounters& counters() { return counters_; }

  static Session* current();

 private:
  std::optional<BasisStore> store_;
  double min_cached_seconds_;
  PhaseCounters counters_;
};

class SessionScope {
 public:
  explicit SessionScope(Session& s);
  ~SessionScope();
  SessionScope(const SessionScope&) = delete;
  SessionScope& operator=(const SessionScope&) = delete;

 private:
  Session* previous_;
};

}  // namespace birat
