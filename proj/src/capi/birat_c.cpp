#include "birat/birat.h"

#include <charconv>
#include <cstring>
#include <string>
#include <variant>

#include "birat/ideal/hilbert.hpp"
#include "birat/pipelines/run.hpp"

using namespace birat;

struct birat_config {
  RunConfig config;
};

struct birat_report {
  Report report;
};

struct birat_ideal {
  std::variant<Ideal<PrimeField>, Ideal<RationalField>> ideal;
};

namespace {

thread_local std::string last_error;

birat_status fail(birat_status status, const std::string& message) {
  last_error = message;
  return status;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class T>
bool parse_number(const char* text, T& out) {
  const char* end = text + std::strlen(text);
  auto [ptr, ec] = std::from_chars(text, end, out);
  return ec == std::errc() && ptr == end && ptr != text;
}

// Runs fn, translating exceptions into status codes and the thread's last error.
template <class Fn>
birat_status guarded(Fn fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const UsageError& e) {
    return fail(BIRAT_USAGE, e.what());
  } catch (const AlgebraError& e) {
    return fail(BIRAT_USAGE, e.what());
  } catch (const std::exception& e) {
    return fail(BIRAT_INTERNAL, e.what());
  } catch (...) {
    return fail(BIRAT_INTERNAL, "unknown error");
  }
}

}  // namespace

extern "C" {

BIRAT_API const char* birat_version(void) { return "1.0.0"; }

BIRAT_API const char* birat_last_error(void) { return last_error.c_str(); }

BIRAT_API void birat_string_free(char* s) { delete[] s; }

BIRAT_API birat_config* birat_config_new(const char* pipeline) {
  auto* c = new birat_config;
  c->config.pipeline = pipeline ? pipeline : "";
  return c;
}

BIRAT_API void birat_config_free(birat_config* config) { delete config; }

BIRAT_API birat_status birat_config_set(birat_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return fail(BIRAT_USAGE, "null argument");
  RunConfig& c = config->config;
  std::string k = key, v = value;
  if (k == "variety") {
    c.variety = v;
  } else if (k == "mode") {
    c.mode = v;
  } else if (k == "cache_dir") {
    c.cache_dir = v;
  } else if (k == "field") {
    if (v != "q") return fail(BIRAT_USAGE, "field must be q");
    c.rationals = true;
  } else if (k == "prime") {
    if (!parse_number(value, c.prime)) return fail(BIRAT_USAGE, "invalid prime: " + v);
    c.rationals = false;
  } else if (k == "seed") {
    if (!parse_number(value, c.seed)) return fail(BIRAT_USAGE, "invalid seed: " + v);
  } else if (k == "retries") {
    if (!parse_number(value, c.retries)) return fail(BIRAT_USAGE, "invalid retry budget: " + v);
  } else if (k == "special") {
    if (v != "0" && v != "1") return fail(BIRAT_USAGE, "special must be 0 or 1");
    c.special = v == "1";
  } else {
    return fail(BIRAT_USAGE, "unknown configuration key: " + k);
  }
  return BIRAT_OK;
}

BIRAT_API birat_status birat_run(const birat_config* config, birat_report** report) {
  if (report) *report = nullptr;
  if (!config || !report) return fail(BIRAT_USAGE, "null argument");
  return guarded([&] {
    auto* r = new birat_report{run(config->config)};
    *report = r;
    return r->report.all_passed() ? BIRAT_OK : BIRAT_CHECKS_FAILED;
  });
}

BIRAT_API int birat_report_exit_code(const birat_report* report) { return report ? report->report.exit_code() : 2; }

BIRAT_API int birat_report_count(const birat_report* report, const char* status) {
  if (!report || !status) return -1;
  for (Status s : {Status::pass, Status::fail, Status::skipped}) {
    if (to_string(s) == status) return report->report.count(s);
  }
  return -1;
}

BIRAT_API char* birat_report_json(const birat_report* report, int indent) {
  if (!report) return nullptr;
  return copy_string(report->report.to_json().dump(indent));
}

BIRAT_API void birat_report_free(birat_report* report) { delete report; }

BIRAT_API birat_status birat_ideal_parse(const char* text, birat_ideal** ideal) {
  if (ideal) *ideal = nullptr;
  if (!text || !ideal) return fail(BIRAT_USAGE, "null argument");
  return guarded([&] {
    std::string s = text;
    std::string header = s.substr(0, s.find('\n'));
    if (ring_header_field(header) == "q") {
      *ideal = new birat_ideal{parse_ideal_text<RationalField>(s)};
    } else {
      *ideal = new birat_ideal{parse_ideal_text<PrimeField>(s)};
    }
    return BIRAT_OK;
  });
}

BIRAT_API void birat_ideal_free(birat_ideal* ideal) { delete ideal; }

BIRAT_API birat_status birat_ideal_groebner(const birat_ideal* ideal, char** text) {
  if (text) *text = nullptr;
  if (!ideal || !text) return fail(BIRAT_USAGE, "null argument");
  return guarded([&] {
    std::visit([&](const auto& I) { *text = copy_string(ideal_to_text(I.reduced())); }, ideal->ideal);
    return BIRAT_OK;
  });
}

BIRAT_API birat_status birat_ideal_hilbert(const birat_ideal* ideal, int* dimension, int64_t* degree,
                                           char** polynomial) {
  if (polynomial) *polynomial = nullptr;
  if (!ideal || !dimension || !degree || !polynomial) return fail(BIRAT_USAGE, "null argument");
  return guarded([&] {
    std::visit(
        [&](const auto& I) {
          auto h = hilbert(I);
          *dimension = h.dimension;
          *degree = h.degree;
          *polynomial = copy_string(h.polynomial_string());
        },
        ideal->ideal);
    return BIRAT_OK;
  });
}

BIRAT_API birat_status birat_ideal_contains(const birat_ideal* ideal, const char* polynomial, int* result) {
  if (!ideal || !polynomial || !result) return fail(BIRAT_USAGE, "null argument");
  return guarded([&] {
    std::visit([&](const auto& I) { *result = I.contains(parse_polynomial(I.ring(), polynomial)) ? 1 : 0; },
               ideal->ideal);
    return BIRAT_OK;
  });
}

}  // extern "C"
