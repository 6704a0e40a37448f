#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "birat/birat.h"

namespace {

constexpr int kUsage = 2;

struct Options {
  std::optional<std::uint32_t> prime;
  std::string field;
  std::uint64_t seed = 1;
  int retries = 3;
  std::string cache_dir;
  std::string out;
  std::string variety = "bordiga";
  std::string mode = "two-skew-lines";
  bool special = false;
  bool quiet = false;
};

bool set(birat_config* c, const char* key, const std::string& value) {
  if (birat_config_set(c, key, value.c_str()) == BIRAT_OK) return true;
  std::cerr << "birat: " << birat_last_error() << "\n";
  return false;
}

int run(const std::string& pipeline, const Options& o) {
  birat_config* c = birat_config_new(pipeline.c_str());
  bool ok = set(c, "seed", std::to_string(o.seed)) && set(c, "retries", std::to_string(o.retries)) &&
            set(c, "variety", o.variety) && set(c, "mode", o.mode) && set(c, "special", o.special ? "1" : "0");
  if (ok && o.prime) ok = set(c, "prime", std::to_string(*o.prime));
  if (ok && !o.field.empty()) ok = set(c, "field", o.field);
  if (ok && !o.cache_dir.empty()) ok = set(c, "cache_dir", o.cache_dir);
  if (!ok) {
    birat_config_free(c);
    return kUsage;
  }
  birat_report* report = nullptr;
  birat_status status = birat_run(c, &report);
  birat_config_free(c);
  if (status == BIRAT_USAGE) {
    std::cerr << "birat: " << birat_last_error() << "\n";
    return kUsage;
  }
  if (!report) {
    std::cerr << "birat: " << birat_last_error() << "\n";
    return 1;
  }
  char* json = birat_report_json(report, 2);
  if (o.out.empty()) {
    std::cout << json << "\n";
  } else {
    std::ofstream file(o.out);
    file << json << "\n";
    if (!file) {
      std::cerr << "birat: cannot write " << o.out << "\n";
      birat_string_free(json);
      birat_report_free(report);
      return kUsage;
    }
  }
  birat_string_free(json);
  if (!o.quiet) {
    std::cerr << pipeline << ": " << birat_report_count(report, "pass") << " passed, "
              << birat_report_count(report, "fail") << " failed, " << birat_report_count(report, "skipped")
              << " skipped\n";
  }
  int code = birat_report_exit_code(report);
  birat_report_free(report);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birational maps from P3 to threefold scrolls: constructions and checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", birat_version());
  Options o;
  std::string pipeline;

  auto common = [&](CLI::App* cmd) {
    auto* prime = cmd->add_option("--prime", o.prime, "working prime (default 32003)");
    auto* field = cmd->add_option("--field", o.field, "q for the rationals (verify prop11 only)")
                      ->check(CLI::IsMember({"q"}));
    prime->excludes(field);
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--retries", o.retries, "redraws allowed for degenerate random choices")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--cache-dir", o.cache_dir, "Groebner basis cache (default $BIRAT_CACHE_DIR)");
    cmd->add_option("--out", o.out, "report path (default stdout)");
    cmd->add_flag("--quiet", o.quiet, "no summary line on stderr");
  };
  auto variety = [&](CLI::App* cmd) {
    cmd->add_option("variety", o.variety, "bordiga or palatini")
        ->required()
        ->check(CLI::IsMember({"bordiga", "palatini"}));
  };

  auto* verify = app.add_subcommand("verify", "verify a statement")->require_subcommand(1);
  auto* prop11 = verify->add_subcommand("prop11", "projection of the Segre threefold from a line");
  common(prop11);
  prop11->callback([&] { pipeline = "verify-prop11"; });
  auto* thm31 = verify->add_subcommand("thm31", "the linear system |Sigma| and its base locus");
  common(thm31);
  thm31->add_option("--variety", o.variety, "bordiga or palatini")->check(CLI::IsMember({"bordiga", "palatini"}));
  thm31->add_option("--mode", o.mode, "Palatini map v")->check(CLI::IsMember({"two-skew-lines", "blowdown6"}));
  thm31->callback([&] { pipeline = "verify-thm31"; });

  auto* build = app.add_subcommand("build", "construct a scroll and a curve section");
  common(build);
  variety(build);
  build->add_option("--mode", o.mode, "Palatini map v")->check(CLI::IsMember({"two-skew-lines", "blowdown6"}));
  build->callback([&] { pipeline = "build"; });

  auto* table = app.add_subcommand("table", "the invariants of one table row, at two primes");
  common(table);
  variety(table);
  table->add_option("--mode", o.mode, "Palatini map v")->check(CLI::IsMember({"two-skew-lines", "blowdown6"}));
  table->callback([&] { pipeline = "table"; });

  auto* cremona = app.add_subcommand("cremona", "Cremona transformations from the Bordiga scroll");
  common(cremona);
  cremona->add_flag("--special", o.special, "put the scroll line L' inside Lambda");
  cremona->callback([&] { pipeline = "cremona"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  return run(pipeline, o);
}
