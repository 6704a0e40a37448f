#include "birat/pipelines/report.hpp"

#include "birat/ideal/session.hpp"

namespace birat {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::skipped:
      return "skipped";
  }
  return "fail";
}

Check& Report::expect(const std::string& id, const std::string& claim, const std::string& anchor,
                      const Json& expected, const Json& computed) {
  checks_.push_back({id, claim, anchor, expected, computed, expected == computed ? Status::pass : Status::fail, ""});
  return checks_.back();
}

Check& Report::expect_true(const std::string& id, const std::string& claim, const std::string& anchor,
                           bool computed) {
  return expect(id, claim, anchor, true, computed);
}

Check& Report::fail(const std::string& id, const std::string& claim, const std::string& anchor,
                    const std::string& reason) {
  checks_.push_back({id, claim, anchor, nullptr, nullptr, Status::fail, reason});
  return checks_.back();
}

Check& Report::skip(const std::string& id, const std::string& claim, const std::string& anchor,
                    const std::string& reason) {
  checks_.push_back({id, claim, anchor, nullptr, nullptr, Status::skipped, reason});
  return checks_.back();
}

void Report::artifact(const std::string& name, const std::string& text) {
  Json entry = {{"hash", content_hash(text)}, {"bytes", text.size()}};
  if (text.size() <= 4096) entry["text"] = text;
  artifacts_[name] = entry;
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (auto c : other.checks_) {
    c.id = prefix + c.id;
    checks_.push_back(std::move(c));
  }
  for (const auto& [k, v] : other.invariants_.items()) invariants_[prefix + k] = v;
  for (const auto& [k, v] : other.artifacts_.items()) artifacts_[prefix + k] = v;
  for (const auto& l : other.log_) log_.push_back(prefix + l);
  for (auto t : other.timings_) {
    t.phase = prefix + t.phase;
    timings_.push_back(std::move(t));
  }
}

const Check* Report::find(const std::string& id) const {
  for (const auto& c : checks_) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

int Report::count(Status s) const {
  int n = 0;
  for (const auto& c : checks_) n += c.status == s;
  return n;
}

Json Report::to_json() const {
  Json checks = Json::array();
  for (const auto& c : checks_) {
    Json e = {{"id", c.id}, {"claim", c.claim}, {"anchor", c.anchor}, {"expected", c.expected},
              {"computed", c.computed}, {"status", to_string(c.status)}};
    if (!c.note.empty()) e["note"] = c.note;
    checks.push_back(std::move(e));
  }
  Json timings = Json::array();
  std::uint64_t calls = 0, hits = 0;
  for (const auto& t : timings_) {
    timings.push_back({{"phase", t.phase},
                       {"seconds", t.seconds},
                       {"groebner_calls", t.groebner_calls},
                       {"cache_hits", t.cache_hits},
                       {"cache", t.cache_hits > 0 ? "cache hit" : "computed"}});
    calls += t.groebner_calls;
    hits += t.cache_hits;
  }
  return Json{{"schema_version", kReportSchemaVersion},
              {"pipeline", pipeline_},
              {"config", config_},
              {"summary",
               {{"pass", count(Status::pass)},
                {"fail", count(Status::fail)},
                {"skipped", count(Status::skipped)},
                {"exit_code", exit_code()}}},
              {"checks", checks},
              {"invariants", invariants_},
              {"artifacts", artifacts_},
              {"log", log_},
              {"run", {{"timings", timings}, {"groebner_calls", calls}, {"cache_hits", hits}}}};
}

PhaseTimer::PhaseTimer(Report& report, std::string phase)
    : report_(report), phase_(std::move(phase)), start_(std::chrono::steady_clock::now()) {
  if (Session* s = Session::current()) {
    calls_ = s->counters().groebner_calls;
    hits_ = s->counters().cache_hits;
  }
}

PhaseTimer::~PhaseTimer() {
  PhaseTiming t;
  t.phase = phase_;
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  if (Session* s = Session::current()) {
    t.groebner_calls = s->counters().groebner_calls - calls_;
    t.cache_hits = s->counters().cache_hits - hits_;
  }
  report_.add_timing(std::move(t));
}

}  // namespace birat
