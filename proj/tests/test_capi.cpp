#include "doctest.h"

#include <string>

#include <json.hpp>

#include "birat/birat.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  birat_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("configuration keys are validated") {
  birat_config* c = birat_config_new("build");
  CHECK(birat_config_set(c, "variety", "palatini") == BIRAT_OK);
  CHECK(birat_config_set(c, "prime", "32003") == BIRAT_OK);
  CHECK(birat_config_set(c, "seed", "7") == BIRAT_OK);
  CHECK(birat_config_set(c, "special", "1") == BIRAT_OK);
  CHECK(birat_config_set(c, "prime", "12x") == BIRAT_USAGE);
  CHECK(std::string(birat_last_error()).find("prime") != std::string::npos);
  CHECK(birat_config_set(c, "seed", "-1") == BIRAT_USAGE);
  CHECK(birat_config_set(c, "retries", "") == BIRAT_USAGE);
  CHECK(birat_config_set(c, "field", "r") == BIRAT_USAGE);
  CHECK(birat_config_set(c, "special", "yes") == BIRAT_USAGE);
  CHECK(birat_config_set(c, "colour", "red") == BIRAT_USAGE);
  CHECK(birat_config_set(c, nullptr, "1") == BIRAT_USAGE);
  CHECK(birat_config_set(nullptr, "seed", "1") == BIRAT_USAGE);
  birat_config_free(c);
}

TEST_CASE("invalid runs report a usage status and no report") {
  birat_config* c = birat_config_new("build");
  birat_config_set(c, "prime", "1001");
  birat_report* r = reinterpret_cast<birat_report*>(1);
  CHECK(birat_run(c, &r) == BIRAT_USAGE);
  CHECK(r == nullptr);
  CHECK(std::string(birat_last_error()).find("prime") != std::string::npos);
  birat_config_free(c);

  c = birat_config_new("verify-everything");
  CHECK(birat_run(c, &r) == BIRAT_USAGE);
  birat_config_free(c);

  c = birat_config_new("table");
  birat_config_set(c, "field", "q");
  CHECK(birat_run(c, &r) == BIRAT_USAGE);
  birat_config_free(c);
  CHECK(birat_run(nullptr, &r) == BIRAT_USAGE);
}

TEST_CASE("running the Segre projection over Q through the C API") {
  birat_config* c = birat_config_new("verify-prop11");
  REQUIRE(birat_config_set(c, "field", "q") == BIRAT_OK);
  birat_report* r = nullptr;
  REQUIRE(birat_run(c, &r) == BIRAT_OK);
  birat_config_free(c);
  REQUIRE(r);
  CHECK(birat_report_exit_code(r) == 0);
  CHECK(birat_report_count(r, "pass") == 10);
  CHECK(birat_report_count(r, "fail") == 0);
  CHECK(birat_report_count(r, "skipped") == 0);
  CHECK(birat_report_count(r, "maybe") == -1);
  auto compact = take(birat_report_json(r, -1));
  CHECK(compact.find('\n') == std::string::npos);
  auto j = nlohmann::json::parse(take(birat_report_json(r, 2)));
  CHECK(j["pipeline"] == "prop11");
  CHECK(j["config"]["field"] == "rationals");
  CHECK(j["summary"]["pass"] == 10);
  CHECK(j["checks"].size() == 10);
  for (const auto& check : j["checks"]) {
    CHECK(check["status"] == "pass");
    CHECK(check.contains("claim"));
    CHECK(check.contains("anchor"));
  }
  birat_report_free(r);
}

TEST_CASE("a Bordiga build through the C API") {
  birat_config* c = birat_config_new("build");
  birat_report* r = nullptr;
  REQUIRE(birat_run(c, &r) == BIRAT_OK);
  birat_config_free(c);
  auto j = nlohmann::json::parse(take(birat_report_json(r, -1)));
  CHECK(j["invariants"]["d"] == 6);
  CHECK(j["invariants"]["sectional_genus"] == 3);
  CHECK(j["config"]["prime"] == 32003);
  birat_report_free(r);
}

TEST_CASE("ideals through the C API") {
  const char* twisted_cubic =
      "ring q nvars 4 order grevlex vars y0 y1 y2 y3\n"
      "y0*y2 - y1^2\n"
      "y1*y3 - y2^2\n"
      "y0*y3 - y1*y2\n";
  birat_ideal* I = nullptr;
  REQUIRE(birat_ideal_parse(twisted_cubic, &I) == BIRAT_OK);
  int dim = -1;
  int64_t deg = -1;
  char* poly = nullptr;
  REQUIRE(birat_ideal_hilbert(I, &dim, &deg, &poly) == BIRAT_OK);
  CHECK(dim == 1);
  CHECK(deg == 3);
  CHECK(take(poly) == "3*t+1");
  int in = -1;
  REQUIRE(birat_ideal_contains(I, "y0*y2^2 - y1^2*y2", &in) == BIRAT_OK);
  CHECK(in == 1);
  REQUIRE(birat_ideal_contains(I, "y0*y3", &in) == BIRAT_OK);
  CHECK(in == 0);
  CHECK(birat_ideal_contains(I, "y0 +* y1", &in) == BIRAT_USAGE);
  CHECK(std::string(birat_last_error()).size() > 0);
  char* gb = nullptr;
  REQUIRE(birat_ideal_groebner(I, &gb) == BIRAT_OK);
  std::string basis = take(gb);
  CHECK(basis.rfind("ring q", 0) == 0);
  birat_ideal* again = nullptr;
  REQUIRE(birat_ideal_parse(basis.c_str(), &again) == BIRAT_OK);
  REQUIRE(birat_ideal_hilbert(again, &dim, &deg, &poly) == BIRAT_OK);
  CHECK(take(poly) == "3*t+1");
  birat_ideal_free(again);
  birat_ideal_free(I);

  const char* modular =
      "ring fp 7 nvars 3 order grevlex vars x y z\n"
      "x^7 - x*z^6\n";
  REQUIRE(birat_ideal_parse(modular, &I) == BIRAT_OK);
  // Over F_7, x^6 - z^6 splits into the six factors x - a*z.
  REQUIRE(birat_ideal_contains(I, "x*(x-z)*(x-2*z)*(x-3*z)*(x-4*z)*(x-5*z)*(x-6*z)", &in) == BIRAT_OK);
  CHECK(in == 1);
  REQUIRE(birat_ideal_contains(I, "x*(x-z)*(x-2*z)*(x-3*z)*(x-4*z)*(x-5*z)*(x-5*z)", &in) == BIRAT_OK);
  CHECK(in == 0);
  birat_ideal_free(I);

  CHECK(birat_ideal_parse("ring fp 8 nvars 2 order grevlex vars a b\na\n", &I) == BIRAT_USAGE);
  CHECK(I == nullptr);
  CHECK(birat_ideal_parse("not a ring\n", &I) != BIRAT_OK);
  CHECK(birat_ideal_hilbert(nullptr, &dim, &deg, &poly) == BIRAT_USAGE);
  CHECK(std::string(birat_version()).size() > 0);
}
