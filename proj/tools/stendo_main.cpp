#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "stendo/runner.hpp"

using namespace stendo;
using nlohmann::json;

namespace {

int run_and_emit(const Scenario& sc, const std::string& hash, const std::string& report_path,
                 bool quiet) {
  Report rep = run_scenario(sc, hash);
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "cannot write report to " << report_path << "\n";
      return 2;
    }
    out << rep.to_json().dump(2) << "\n";
  }
  if (!quiet) std::cout << rep.human_summary();
  return rep.exit_code();
}

json scenario_skeleton(uint32_t p, uint64_t seed) {
  json j;
  j["field"] = {{"p", p}};
  j["seed"] = seed;
  return j;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for stable endomorphism algebras and bimodule periodicity"};
  app.require_subcommand(1);

  // ---- run
  std::string scenario_path, report_path;
  std::optional<uint64_t> seed_override;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--report", report_path, "write the JSON report here");
  run->add_option("--seed", seed_override, "override the scenario seed");
  run->add_flag("--quiet", quiet, "suppress the human-readable summary");

  // ---- verify-report
  std::string verify_path;
  auto* ver = app.add_subcommand("verify-report", "re-check certificates in a report");
  ver->add_option("report", verify_path, "report JSON file")->required();

  // ---- single-task shortcuts
  struct ShortcutOpts {
    uint32_t p = 5;
    uint64_t seed = 0;
    std::string factors;
    std::string quiver_path;
    int d = 2;
    std::string report;
    // task specific
    int nmax = 0;
    int imax = 6;
    int s = -1;
    int summand = 0;
    std::string module_spec = "simple:1";
    std::string extra_task;  // for bikr: optional follow-up task
  };
  auto add_common = [&](CLI::App* cmd, ShortcutOpts& o) {
    cmd->add_option("--p", o.p, "field characteristic (prime)");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--factors", o.factors, "comma-separated curve factors, e.g. x,y,x+y");
    cmd->add_option("--quiver", o.quiver_path, "JSON file with a quiver presentation");
    cmd->add_option("--d", o.d, "orthogonality degree");
    cmd->add_option("--report", o.report, "write the JSON report here");
  };
  ShortcutOpts so;
  auto* period = app.add_subcommand("period", "detect the bimodule period");
  add_common(period, so);
  period->add_option("--nmax", so.nmax, "search bound");
  auto* rigid = app.add_subcommand("rigid", "orthogonality check for the tilting object");
  add_common(rigid, so);
  auto* stable_end = app.add_subcommand("stable-end", "stable endomorphism algebra");
  add_common(stable_end, so);
  auto* resolve = app.add_subcommand("resolve", "resolution certificates for a module");
  add_common(resolve, so);
  resolve->add_option("--X", so.module_spec, "module spec, e.g. simple:1");
  auto* tor = app.add_subcommand("tor", "Tor table over the ordinary endomorphism algebra");
  add_common(tor, so);
  tor->add_option("--imax", so.imax, "largest homological degree");
  auto* bikr = app.add_subcommand("bikr", "standard tilting object of a plane curve");
  add_common(bikr, so);
  bikr->add_option("task", so.extra_task, "optional follow-up task (e.g. quiver)");
  auto* cy = app.add_subcommand("cy", "duality comparison for a shift s");
  add_common(cy, so);
  cy->add_option("--s", so.s, "duality shift (nonzero)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      std::string raw;
      Scenario sc = load_scenario_file(scenario_path, &raw);
      if (seed_override) sc.seed = *seed_override;
      char hex[32];
      snprintf(hex, sizeof(hex), "%016llx",
               static_cast<unsigned long long>(fnv1a(raw)));
      return run_and_emit(sc, hex, report_path, quiet);
    }
    if (*ver) {
      std::ifstream in(verify_path);
      if (!in) {
        std::cerr << "cannot open report " << verify_path << "\n";
        return 2;
      }
      json j = json::parse(in);
      std::string log;
      int rc = verify_report_json(j, log);
      std::cout << log;
      std::cout << (rc == 0 ? "report certificates verified\n" : "report verification FAILED\n");
      return rc;
    }
    // shortcuts: build a one-task scenario
    json j = scenario_skeleton(so.p, so.seed);
    if (!so.factors.empty()) {
      j["backend"] = {{"type", "plane-curve"}, {"factors", split_commas(so.factors)}};
      j["tilting"] = "bikr";
      j["d"] = so.d;
    } else if (!so.quiver_path.empty()) {
      std::ifstream in(so.quiver_path);
      if (!in) {
        std::cerr << "cannot open quiver file " << so.quiver_path << "\n";
        return 2;
      }
      json pres = json::parse(in);
      j["backend"] = {{"type", "quiver-algebra"}, {"presentation", pres}};
      j["d"] = so.d;
    } else {
      std::cerr << "choose a backend with --factors or --quiver\n";
      return 2;
    }
    json tasks = json::array();
    auto push = [&](json t) { tasks.push_back(std::move(t)); };
    if (*period) {
      json t{{"task", "detect-period"}};
      if (so.nmax > 0) t["nmax"] = so.nmax;
      if (so.quiver_path.empty())
        t["on"] = "gamma";
      else
        t["on"] = "algebra";
      push(t);
    } else if (*rigid) {
      push({{"task", "rigid"}});
    } else if (*stable_end) {
      push({{"task", "stable-end"}});
    } else if (*resolve) {
      push({{"task", "resolve"}, {"module", so.module_spec}});
    } else if (*tor) {
      push({{"task", "tor-suite"}, {"imax", so.imax}});
    } else if (*bikr) {
      push({{"task", "bikr"}});
      if (!so.extra_task.empty()) push({{"task", so.extra_task}});
    } else if (*cy) {
      push({{"task", "cy"}, {"s", so.s}});
    }
    j["tasks"] = tasks;
    Scenario sc = parse_scenario(j);
    char hex[32];
    snprintf(hex, sizeof(hex), "%016llx",
             static_cast<unsigned long long>(fnv1a(j.dump())));
    return run_and_emit(sc, hex, so.report, false);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
