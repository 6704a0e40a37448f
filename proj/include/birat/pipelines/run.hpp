#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "birat/pipelines/tower.hpp"

namespace birat {

// A malformed configuration: unknown pipeline, invalid prime or incompatible flags.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  // "verify-prop11", "build", "verify-thm31", "table" or "cremona".
  std::string pipeline;
  std::string variety = "bordiga";
  std::uint32_t prime = 32003;
  bool rationals = false;
  std::uint64_t seed = 1;
  int retries = 3;
  std::string mode = "two-skew-lines";
  bool special = false;
  std::optional<std::string> cache_dir;
};

// Throws UsageError when the configuration cannot be run.
void validate(const RunConfig& config);

// Dispatches to the named pipeline. Exceptions other than UsageError become a
// failed "pipeline.completed" check, so the report always lists what was reached.
Report run(const RunConfig& config);

template <class F>
Report verify_prop11(const F& field, std::uint64_t seed);

// T = g o f' for the projection f'^-1 from a scroll line L' of the Bordiga scroll.
void compose_cremona(const ScrollInstance& inst, Rng& rng, Report& report, bool line_in_lambda, int retries);

}  // namespace birat
