#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace birat {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, skipped };

std::string to_string(Status s);

struct Check {
  std::string id;
  std::string claim;
  std::string anchor;
  Json expected;
  Json computed;
  Status status = Status::fail;
  std::string note;
};

struct PhaseTiming {
  std::string phase;
  double seconds = 0;
  std::uint64_t groebner_calls = 0;
  std::uint64_t cache_hits = 0;
};

// Checklist, invariants, artifact hashes and timings of one pipeline run. The
// `run` block (timings, cache counters) is the only part that may differ between
// two runs with the same configuration.
class Report {
 public:
  explicit Report(std::string pipeline) : pipeline_(std::move(pipeline)) {}

  const std::string& pipeline() const { return pipeline_; }

  Check& expect(const std::string& id, const std::string& claim, const std::string& anchor, const Json& expected,
                const Json& computed);
  Check& expect_true(const std::string& id, const std::string& claim, const std::string& anchor, bool computed);
  Check& fail(const std::string& id, const std::string& claim, const std::string& anchor, const std::string& reason);
  Check& skip(const std::string& id, const std::string& claim, const std::string& anchor, const std::string& reason);

  void set_config(Json config) { config_ = std::move(config); }
  void record(const std::string& key, const Json& value) { invariants_[key] = value; }
  const Json& invariants() const { return invariants_; }
  // Stores the content hash of an artifact, and its text when short.
  void artifact(const std::string& name, const std::string& text);
  void log(const std::string& line) { log_.push_back(line); }
  void add_timing(PhaseTiming t) { timings_.push_back(std::move(t)); }
  // Appends another report's checks, invariants and artifacts under a prefix.
  void merge(const Report& other, const std::string& prefix);

  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(const std::string& id) const;
  int count(Status s) const;
  bool all_passed() const { return count(Status::fail) == 0; }
  int exit_code() const { return all_passed() ? 0 : 1; }

  Json to_json() const;

 private:
  std::string pipeline_;
  Json config_ = Json::object();
  std::vector<Check> checks_;
  Json invariants_ = Json::object();
  Json artifacts_ = Json::object();
  std::vector<std::string> log_;
  std::vector<PhaseTiming> timings_;
};

inline constexpr int kReportSchemaVersion = 1;

// Records wall time and engine counters of a phase into a report on destruction.
class PhaseTimer {
 public:
  PhaseTimer(Report& report, std::string phase);
  ~PhaseTimer();
  PhaseTimer(const PhaseTimer&) = delete;
  PhaseTimer& operator=(const PhaseTimer&) = delete;

 private:
  Report& report_;
  std::string phase_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t calls_ = 0;
  std::uint64_t hits_ = 0;
};

}  // namespace birat
