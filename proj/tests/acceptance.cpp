#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int exit_code = -1;
  double seconds = 0;
  Json report;
};

struct Criterion {
  bool ok = true;
  std::vector<std::string> problems;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      problems.push_back(what);
    }
  }
};

class Harness {
 public:
  Harness(std::string cli, fs::path dir) : cli_(std::move(cli)), dir_(std::move(dir)) {}

  // Runs the CLI with --out into the work directory and parses the report.
  Outcome run(const std::string& args, const std::string& name) {
    fs::path out = dir_ / (name + ".json");
    std::string command = "'" + cli_ + "' " + args + " --quiet --out '" + out.string() + "' 2>'" +
                          (dir_ / (name + ".err")).string() + "'";
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    int status = std::system(command.c_str());
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    if (in) {
      try {
        o.report = Json::parse(in);
      } catch (const Json::exception&) {
        o.report = Json();
      }
    }
    return o;
  }

  static int shell(const std::string& command, double& seconds) {
    auto start = std::chrono::steady_clock::now();
    int status = std::system(command.c_str());
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

 private:
  std::string cli_;
  fs::path dir_;
};

// Lookup along a path of object keys; null when any step is missing.
const Json& get(const Json& j, std::initializer_list<std::string> path) {
  static const Json null;
  const Json* at = &j;
  for (const auto& key : path) {
    if (!at->is_object() || !at->contains(key)) return null;
    at = &(*at)[key];
  }
  return *at;
}

const Json* find_check(const Json& report, const std::string& id) {
  const Json& checks = get(report, {"checks"});
  if (!checks.is_array()) return nullptr;
  for (const auto& c : checks) {
    if (c["id"] == id) return &c;
  }
  return nullptr;
}

bool passed(const Json& report, const std::string& id) {
  const Json* c = find_check(report, id);
  return c && (*c)["status"] == "pass";
}

void require_pass(Criterion& c, const Json& report, const std::vector<std::string>& ids) {
  for (const auto& id : ids) c.require(passed(report, id), id + " did not pass");
}

void require_clean(Criterion& c, const Outcome& o, const std::string& what) {
  c.require(!o.report.is_null(), what + ": no report");
  c.require(o.exit_code == 0, what + ": exit code " + std::to_string(o.exit_code));
  if (!o.report.is_null()) {
    c.require(get(o.report, {"summary", "fail"}) == 0, what + ": failed checks");
  }
}

void require_budget(Criterion& c, double seconds, double budget, const std::string& what) {
  c.require(seconds <= budget, what + " took " + std::to_string(seconds) + " s, budget " + std::to_string(budget) + " s");
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// The cross-route formulas, for the first prime and the rerun at the second.
void require_cross_routes(Criterion& c, const Json& report, const std::string& variety, bool with_exceptional) {
  for (const std::string prefix : {"", "second_prime."}) {
    if (!prefix.empty() && !find_check(report, prefix + variety + ".deg_sigma")) continue;
    std::vector<std::string> ids;
    for (const char* id : {"B2_degree_formula", "mult_P", "B1_B2", "deg_sigma", "monoid"}) {
      ids.push_back(prefix + variety + "." + id);
    }
    require_pass(c, report, ids);
    int secants = 0, neighbourhoods = 0;
    const Json& checks = get(report, {"checks"});
    if (!checks.is_array()) continue;
    for (const auto& check : checks) {
      std::string id = check["id"];
      if (id.rfind(prefix + variety + ".B", 0) != 0) continue;
      bool secant = ends_with(id, "_secant"), neighbourhood = ends_with(id, "_neighbourhood");
      if (secant || neighbourhood) {
        c.require(check["status"] == "pass", id + " did not pass");
        secants += secant;
        neighbourhoods += neighbourhood;
      }
    }
    if (with_exceptional) {
      c.require(secants > 0 && secants == neighbourhoods, prefix + "secant and neighbourhood checks for every B_i");
    }
  }
}

Json without_run(Json report) {
  report.erase("run");
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria against the command-line tool"};
  std::string cli, properties;
  std::vector<int> only;
  app.add_option("--cli", cli, "path to the birat executable")->required();
  app.add_option("--properties", properties, "path to the property test executable");
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);

  fs::path dir = fs::temp_directory_path() / ("birat-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  Harness h(cli, dir);

  // Reports shared between criteria are produced once.
  std::optional<Outcome> table_bordiga, thm31_palatini;
  auto bordiga_table = [&]() -> const Outcome& {
    if (!table_bordiga) table_bordiga = h.run("table bordiga", "table-bordiga");
    return *table_bordiga;
  };
  auto palatini_thm31 = [&]() -> const Outcome& {
    if (!thm31_palatini) thm31_palatini = h.run("verify thm31 --variety palatini --mode two-skew-lines", "thm31-palatini");
    return *thm31_palatini;
  };

  std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria = {
      {"projection of the Segre threefold from a line, over Q",
       [&](Criterion& c) {
         auto o = h.run("verify prop11 --field q", "prop11-q");
         require_clean(c, o, "verify prop11");
         require_pass(c, o.report, {"prop11.birational", "prop11.quadrics", "prop11.base_locus", "prop11.P_not_on_B",
                                    "prop11.plane_contracted"});
         c.require(get(o.report, {"config", "field"}) == "rationals", "not run over Q");
         require_budget(c, o.seconds, 10, "verify prop11");
       }},
      {"Bordiga scroll: degree 6 threefold, smooth curve section of genus 3",
       [&](Criterion& c) {
         auto o = h.run("build bordiga", "build-bordiga");
         require_clean(c, o, "build bordiga");
         require_pass(c, o.report, {"bordiga.dimension", "bordiga.degree", "bordiga.C_smooth", "bordiga.sectional_genus"});
         c.require(get(o.report, {"invariants", "d"}) == 6, "degree is not 6");
         c.require(get(o.report, {"invariants", "sectional_genus"}) == 3, "sectional genus is not 3");
         require_budget(c, o.seconds, 300, "build bordiga");
       }},
      {"Bordiga table row",
       [&](Criterion& c) {
         const auto& o = bordiga_table();
         require_clean(c, o, "table bordiga");
         require_pass(c, o.report,
                      {"table.deg_sigma", "table.deg_B2", "table.pa_B2", "table.mult_P_B2", "table.B1_dot_B2",
                       "bordiga.tangents_distinct", "bordiga.tangent_cone", "tower.B1_line", "tower.P_not_on_B1",
                       "bordiga.components_contain_base", "bordiga.no_other_components", "bordiga.embedded_point"});
         const auto& inv = get(o.report, {"invariants"});
         c.require(get(inv, {"deg_sigma"}) == 5 && get(inv, {"deg_B2"}) == 14 && get(inv, {"pa_B2"}) == 23 && get(inv, {"mult_P_B2"}) == 10 &&
                       get(inv, {"B1_dot_B2"}) == 4,
                   "table invariants differ");
         require_budget(c, o.seconds, 1800, "table bordiga");
       }},
      {"cross-route formulas on every instance",
       [&](Criterion& c) {
         const auto& b = bordiga_table();
         require_clean(c, b, "table bordiga");
         require_cross_routes(c, b.report, "bordiga", false);
         const auto& p = palatini_thm31();
         require_clean(c, p, "verify thm31 palatini");
         require_cross_routes(c, p.report, "palatini", true);
       }},
      {"Bordiga deg E_inf = 16 from the ideal of E_inf",
       [&](Criterion& c) {
         const auto& o = bordiga_table();
         require_pass(c, o.report, {"bordiga.E_inf_surface", "table.deg_E_inf"});
         c.require(get(o.report, {"invariants", "deg_E_inf"}) == 16, "deg E_inf is not 16");
       }},
      {"Palatini scroll: degree 7, smooth Pfaffian cubic base, genus 4 section",
       [&](Criterion& c) {
         auto o = h.run("build palatini", "build-palatini");
         require_clean(c, o, "build palatini");
         require_pass(c, o.report,
                      {"palatini.dimension", "palatini.degree", "palatini.pfaffian_degree", "palatini.V_smooth",
                       "palatini.fibers_lines", "palatini.C_smooth", "palatini.sectional_genus"});
         c.require(get(o.report, {"invariants", "d"}) == 7, "degree is not 7");
         c.require(get(o.report, {"invariants", "sectional_genus"}) == 4, "sectional genus is not 4");
         require_budget(c, o.seconds, 1800, "build palatini");
       }},
      {"Palatini base locus with two-skew-lines v, quadric preimages of lines",
       [&](Criterion& c) {
         const auto& o = palatini_thm31();
         require_clean(c, o, "verify thm31 palatini");
         require_cross_routes(c, o.report, "palatini", true);
         const auto& inv = get(o.report, {"invariants"});
         int lines = 0;
         for (int i = 3; inv.contains("palatini.exceptional." + std::to_string(i) + ".kind"); ++i) {
           std::string key = "palatini.exceptional." + std::to_string(i);
           std::string kind = get(inv, {key + ".kind"});
           if (kind == "conic") continue;
           ++lines;
           c.require(get(inv, {key + ".delta"}) == 2, key + ": delta is not 2");
           require_pass(c, o.report, {key + ".quadric"});
         }
         c.require(lines > 0, "no exceptional lines");
         for (const char* id : {"palatini.table_row", "palatini.prop42"}) {
           const Json* check = find_check(o.report, id);
           c.require(check && (*check)["status"] == "skipped", std::string(id) + " is not reported as skipped");
         }
         require_budget(c, o.seconds, 3600, "verify thm31 palatini");
       }},
      {"Cremona transformations of type (7,5) and (3,3)",
       [&](Criterion& c) {
         auto general = h.run("cremona", "cremona");
         require_clean(c, general, "cremona");
         require_pass(c, general.report, {"cremona.type", "cremona.twisted_cubic", "cremona.round_trip"});
         auto special = h.run("cremona --special", "cremona-special");
         require_clean(c, special, "cremona --special");
         require_pass(c, special.report, {"cremona.type", "cremona.L_prime_position", "cremona.round_trip"});
         require_budget(c, general.seconds + special.seconds, 3600, "cremona");
       }},
      {"property suites, reproducibility and two-prime consistency",
       [&](Criterion& c) {
         if (properties.empty()) {
           c.require(false, "no --properties executable given");
         } else {
           struct Suite {
             const char* filter;
             double budget;
           };
           for (auto s : {Suite{"ring axioms*,monomial orders*", 60}, Suite{"Groebner membership*", 300},
                          Suite{"saturation*,Hilbert polynomials*,pipeline maps*,invariants agree*,reports are*", 900}}) {
             double seconds = 0;
             std::string command = "'" + properties + "' --test-case='" + s.filter + "' >'" +
                                   (dir / "properties.log").string() + "' 2>&1";
             c.require(Harness::shell(command, seconds) == 0, std::string("property suite failed: ") + s.filter);
             require_budget(c, seconds, s.budget, s.filter);
           }
         }
         const auto& b = bordiga_table();
         require_pass(c, b.report, {"two_prime.invariants"});
         auto cache = (dir / "cache").string();
         auto first = h.run("build palatini --cache-dir '" + cache + "'", "repeat-1");
         auto second = h.run("build palatini --cache-dir '" + cache + "'", "repeat-2");
         c.require(!first.report.is_null() && without_run(first.report) == without_run(second.report),
                   "repeated runs differ outside the run block");
         c.require(get(second.report, {"run", "cache_hits"}) > 0, "the second run did not use the cache");
         auto bad = h.run("build bordiga --prime 1001", "bad-prime");
         c.require(bad.exit_code == 2, "an invalid prime does not exit with status 2");
       }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int number = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), number) == only.end()) continue;
    Criterion c;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !c.ok;
    std::printf("AC%d %s  %s (%.1f s)\n", number, c.ok ? "PASS" : "FAIL", criteria[i].first.c_str(), seconds);
    for (const auto& p : c.problems) std::printf("    %s\n", p.c_str());
    std::fflush(stdout);
  }
  std::error_code ec;
  if (failures == 0) fs::remove_all(dir, ec);
  return failures == 0 ? 0 : 1;
}
