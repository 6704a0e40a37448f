#include "birat/pipelines/run.hpp"

#include <algorithm>
#include <cstdlib>

#include "birat/ideal/session.hpp"

namespace birat {

namespace {

// Random draws need room to avoid special positions; below this the retry budget
// is spent on coincidences.
constexpr std::uint32_t kMinPrime = 1000;

const std::vector<std::string> kPipelines = {"verify-prop11", "build", "verify-thm31", "table", "cremona"};

// Invariants that must not depend on the prime. Counts of F_p-rational
// components and seeds are excluded.
const std::vector<std::string> kPrimeIndependent = {
    "d", "sectional_genus", "n", "g_degree", "deg_sigma", "base_hilbert_polynomial", "deg_E_inf", "deg_B2",
    "pa_B2", "B2_hilbert_polynomial", "B1_dot_B2", "mult_P_B2", "deg_E2"};

std::uint32_t second_prime(std::uint32_t first, std::uint64_t seed) {
  const std::uint64_t lo = 10007, hi = 65521;
  std::uint64_t p = lo + (seed * 7919) % (hi - lo);
  for (;;) {
    if (p > hi) p = lo;
    if (is_prime(p) && p != first) return static_cast<std::uint32_t>(p);
    ++p;
  }
}

Json config_echo(const RunConfig& c) {
  Json j = {{"pipeline", c.pipeline}, {"seed", c.seed}, {"retries", c.retries}};
  if (c.pipeline == "verify-prop11") {
    j["field"] = c.rationals ? "rationals" : "prime";
  } else {
    j["variety"] = c.variety;
  }
  if (!c.rationals) j["prime"] = c.prime;
  if (c.variety == "palatini" && c.pipeline != "verify-prop11") j["mode"] = c.mode;
  if (c.pipeline == "cremona") j["special"] = c.special;
  return j;
}

BuildOptions build_options(const RunConfig& c, std::uint32_t prime) {
  BuildOptions o;
  o.prime = prime;
  o.seed = c.seed;
  o.retries = c.retries;
  o.mode = c.mode;
  return o;
}

ScrollInstance build(const RunConfig& c, std::uint32_t prime, Report& report) {
  auto opts = build_options(c, prime);
  return c.variety == "bordiga" ? build_bordiga(opts, report) : build_palatini(opts, report);
}

TowerOptions tower_options(const RunConfig& c) {
  TowerOptions o;
  o.retries = c.retries;
  if (c.variety == "bordiga") {
    o.graph_inverse = true;
    o.full_round_trip = true;
    o.characteristic_curve = true;
    o.b2_image_degree = 5;
  }
  return o;
}

void skip_stretch(Report& report, const std::string& reason) {
  report.skip("palatini.table_row", "n = 6, deg Sigma = 7, B2 of degree 11, genus 10, multiplicity 5, six doubled lines",
              "Palatini table row", reason);
  report.skip("palatini.prop42", "h0(I_B(7)) = 6 and the cone Psi of degree 6 contains the doubled lines",
              "sextic cone Psi", reason);
}

const char* kNoBlowdown = "needs the blow-down of six disjoint lines, which is not constructed";

void sectional_genus_check(const ScrollInstance& inst, Report& report) {
  std::int64_t expected = inst.name == "bordiga" ? 3 : 4;
  auto genus = report.invariants().value("sectional_genus", Json());
  report.expect(inst.name + ".sectional_genus", "p_a of the smooth curve section",
                inst.name == "bordiga" ? "sectional genus 3" : "sectional genus 4", expected, genus);
}

// Build, tower, |Sigma| and its base locus at one prime.
void thm31(const RunConfig& c, std::uint32_t prime, Report& report) {
  auto inst = build(c, prime, report);
  if (inst.name == "palatini" && c.mode == "blowdown6") {
    report.skip("palatini.thm31", "base locus of |Sigma| for the blow-down map v", "blow-down of six lines", kNoBlowdown);
    skip_stretch(report, kNoBlowdown);
    return;
  }
  Rng rng(inst.seed * 0x9e3779b97f4a7c15ULL + 1);
  auto opts = tower_options(c);
  auto st = construct_g(inst, rng, report, opts);
  sectional_genus_check(inst, report);
  compute_sigma(st, rng, report, opts);
  analyze_sigma(st, rng, report, opts);
  verify_split_surfaces(st, rng, report);
}

void bordiga_row(Report& report) {
  const auto& inv = report.invariants();
  auto row = [&](const std::string& key, const std::string& claim, const std::string& anchor, std::int64_t v) {
    report.expect("table." + key, claim, anchor, v, inv.value(key, Json()));
  };
  row("n", "deg Gamma = 4", "deg Gamma = 4", 4);
  row("deg_sigma", "deg Sigma = 5", "table: deg Sigma 5", 5);
  row("deg_B2", "deg B2 = 14", "table: B2 of degree 14", 14);
  row("pa_B2", "p_a(B2) = 23", "table: B2 of arithmetic genus 23", 23);
  row("mult_P_B2", "B2 has a point of multiplicity 10 at P", "table: multiplicity 10", 10);
  row("B1_dot_B2", "B1 . B2 = 4", "table: B1 . B2 = 4", 4);
  row("deg_E_inf", "deg E_inf = 16", "deg E_inf = 16", 16);
}

void two_prime(const RunConfig& c, Report& report) {
  std::uint32_t p2 = second_prime(c.prime, c.seed);
  report.record("second_prime", p2);
  Report other(report.pipeline());
  thm31(c, p2, other);
  report.merge(other, "second_prime.");
  Json first = Json::object(), second = Json::object();
  for (const auto& key : kPrimeIndependent) {
    if (report.invariants().contains(key)) first[key] = report.invariants()[key];
    if (other.invariants().contains(key)) second[key] = other.invariants()[key];
  }
  report.expect("two_prime.invariants", "prime-independent invariants agree at a second prime",
                "characteristic-0 behaviour", first, second);
}

void dispatch(const RunConfig& c, Report& report) {
  if (c.pipeline == "verify-prop11") {
    Report r = c.rationals ? verify_prop11(RationalField(), c.seed) : verify_prop11(PrimeField(c.prime), c.seed);
    report.merge(r, "");
    return;
  }
  if (c.pipeline == "build") {
    auto inst = build(c, c.prime, report);
    Rng rng(inst.seed * 0x9e3779b97f4a7c15ULL + 1);
    TowerOptions opts;
    opts.retries = c.retries;
    construct_g(inst, rng, report, opts);
    sectional_genus_check(inst, report);
    return;
  }
  if (c.pipeline == "verify-thm31") {
    thm31(c, c.prime, report);
    if (c.variety == "palatini" && c.mode == "two-skew-lines") skip_stretch(report, kNoBlowdown);
    return;
  }
  if (c.pipeline == "table") {
    thm31(c, c.prime, report);
    if (c.variety == "bordiga") {
      bordiga_row(report);
    } else if (c.mode == "two-skew-lines") {
      skip_stretch(report, kNoBlowdown);
    }
    if (c.variety == "bordiga" || c.mode == "two-skew-lines") two_prime(c, report);
    return;
  }
  // Not every draw has an F_p-rational line over a conic; redraw the scroll.
  for (int attempt = 0; attempt < c.retries; ++attempt) {
    RunConfig drawn = c;
    drawn.seed = c.seed + static_cast<std::uint64_t>(attempt) * c.retries;
    Report attempt_report(report.pipeline());
    auto inst = build(drawn, c.prime, attempt_report);
    Rng rng(inst.seed * 0x9e3779b97f4a7c15ULL + 2);
    try {
      compose_cremona(inst, rng, attempt_report, c.special, c.retries);
    } catch (const DegenerateDraw& e) {
      report.log("cremona: scroll with seed " + std::to_string(inst.seed) + " rejected: " + e.what());
      continue;
    }
    report.merge(attempt_report, "");
    return;
  }
  throw std::runtime_error("no scroll with a rational line over a conic within the retry budget");
}

}  // namespace

void validate(const RunConfig& c) {
  if (std::find(kPipelines.begin(), kPipelines.end(), c.pipeline) == kPipelines.end()) {
    throw UsageError("unknown pipeline: " + c.pipeline);
  }
  if (c.retries < 1) throw UsageError("the retry budget must be at least 1");
  if (c.rationals && c.pipeline != "verify-prop11") {
    throw UsageError("only verify prop11 runs over the rationals; scroll pipelines need --prime");
  }
  if (!c.rationals) {
    if (!is_prime(c.prime) || c.prime >= (1u << 31)) throw UsageError("not a prime below 2^31: " + std::to_string(c.prime));
    if (c.prime < kMinPrime) throw UsageError("the prime must be at least " + std::to_string(kMinPrime));
  }
  if (c.pipeline != "verify-prop11") {
    if (c.variety != "bordiga" && c.variety != "palatini") throw UsageError("unknown variety: " + c.variety);
    if (c.mode != "two-skew-lines" && c.mode != "blowdown6") throw UsageError("unknown mode: " + c.mode);
    if (c.pipeline == "cremona" && c.variety != "bordiga") throw UsageError("cremona runs on the Bordiga scroll");
  }
}

Report run(const RunConfig& config) {
  validate(config);
  std::optional<std::string> cache = config.cache_dir;
  if (!cache) {
    if (const char* env = std::getenv("BIRAT_CACHE_DIR"); env && *env) cache = env;
  }
  Session session(cache ? std::optional<std::filesystem::path>(*cache) : std::nullopt);
  SessionScope scope(session);
  std::string name = config.pipeline == "verify-prop11" ? "prop11" : config.pipeline;
  Report report(name);
  report.set_config(config_echo(config));
  try {
    dispatch(config, report);
  } catch (const std::exception& e) {
    report.fail("pipeline.completed", "the pipeline ran to completion", "pipeline", e.what());
  }
  return report;
}

}  // namespace birat
