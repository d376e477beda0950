// SPDX-License-Identifier: Apache-2.0
// Command-line front end. Talks to the library only through lv/lv.h.
#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "lv/lv.h"

namespace {

struct SimFlags {
  std::string name = "run";
  std::string scheme;
  double alpha = 1.0;
  double beta = 0.1;
  double gamma = 0.075;
  double delta = 0.75;
  double h = 0.01;
  std::string phi = "identity";
  double x0 = 5.0;
  double y0 = 5.0;
  std::size_t steps = 1000;
};

struct AnalysisFlags {
  bool stability = false;
  bool direction = false;
  bool positivity = false;
  bool closure = false;
  std::string overlay_ref;
};

void add_sim_flags(CLI::App* cmd, SimFlags& f) {
  cmd->add_option("--name", f.name, "Scenario name, used for output file names")
      ->capture_default_str();
  cmd->add_option("--scheme", f.scheme, "Time stepper")
      ->required()
      ->check(CLI::IsMember({"euler", "mickens", "rk4"}));
  cmd->add_option("--alpha", f.alpha, "Prey growth rate")->capture_default_str();
  cmd->add_option("--beta", f.beta, "Predation rate")->capture_default_str();
  cmd->add_option("--gamma", f.gamma, "Conversion rate")->capture_default_str();
  cmd->add_option("--delta", f.delta, "Predator death rate")->capture_default_str();
  cmd->add_option("--h", f.h, "Step size")->capture_default_str();
  cmd->add_option("--phi", f.phi, "Denominator function of the nonstandard scheme")
      ->check(CLI::IsMember({"identity", "expm1"}))
      ->capture_default_str();
  cmd->add_option("--x0", f.x0, "Initial prey density")->capture_default_str();
  cmd->add_option("--y0", f.y0, "Initial predator density")->capture_default_str();
  cmd->add_option("--steps", f.steps, "Number of steps")->capture_default_str();
}

lv_scheme scheme_of(const std::string& s) {
  if (s == "euler") return LV_SCHEME_EULER;
  if (s == "mickens") return LV_SCHEME_MICKENS;
  return LV_SCHEME_RK4;
}

std::string default_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("LV_OUT_DIR"); env && *env) return env;
  return ".";
}

int report_failure(lv_status st) {
  std::cerr << "error: " << lv_status_string(st) << ": " << lv_last_error() << "\n";
  return lv_exit_code(st);
}

// Runs a validated scenario and prints its summary. Consumes sc.
int run_and_print(lv_scenario* sc, const std::string& out_dir, std::string* text) {
  lv_run* run = nullptr;
  const lv_status st = lv_run_scenario(sc, out_dir.c_str(), &run);
  std::string msg;
  if (run) msg = lv_run_summary(run);
  if (st != LV_OK) {
    msg += std::string("error: ") + lv_status_string(st) + ": " + lv_last_error() + "\n";
  }
  lv_run_free(run);
  lv_scenario_free(sc);
  *text = std::move(msg);
  return lv_exit_code(st);
}

int run_custom(const SimFlags& f, const AnalysisFlags& a, const std::string& out_flag) {
  lv_scenario_config cfg{};
  cfg.name = f.name.c_str();
  cfg.params = {f.alpha, f.beta, f.gamma, f.delta};
  cfg.scheme = scheme_of(f.scheme);
  cfg.h = f.h;
  cfg.phi = f.phi == "expm1" ? LV_PHI_EXPM1 : LV_PHI_IDENTITY;
  cfg.start = {f.x0, f.y0};
  cfg.n_steps = f.steps;
  cfg.analyses = (a.stability ? LV_ANALYSIS_STABILITY : 0u) |
                 (a.direction ? LV_ANALYSIS_DIRECTION : 0u) |
                 (a.positivity ? LV_ANALYSIS_POSITIVITY : 0u) |
                 (a.closure ? LV_ANALYSIS_CLOSURE : 0u) |
                 (a.overlay_ref.empty() ? 0u : LV_ANALYSIS_OVERLAY);
  cfg.overlay_reference = a.overlay_ref.empty() ? -1 : static_cast<int>(scheme_of(a.overlay_ref));
  cfg.overlay_refinement = 0;

  lv_scenario* sc = nullptr;
  if (const lv_status st = lv_scenario_create(&cfg, &sc); st != LV_OK) return report_failure(st);
  std::string text;
  const int code = run_and_print(sc, default_out_dir(out_flag), &text);
  (code == 0 ? std::cout : std::cerr) << text;
  return code;
}

int run_presets(std::vector<std::string> names, const std::string& out_flag, unsigned jobs) {
  if (std::find(names.begin(), names.end(), "all") != names.end()) {
    names.clear();
    for (std::size_t i = 0; i < lv_preset_count(); ++i) names.emplace_back(lv_preset_name(i));
  }
  // Resolve every name before running anything.
  std::vector<lv_scenario*> scenarios;
  for (const auto& n : names) {
    lv_scenario* sc = nullptr;
    if (const lv_status st = lv_scenario_from_preset(n.c_str(), &sc); st != LV_OK) {
      for (auto* s : scenarios) lv_scenario_free(s);
      return report_failure(st);
    }
    scenarios.push_back(sc);
  }

  const std::string out_dir = default_out_dir(out_flag);
  std::vector<std::string> texts(scenarios.size());
  std::vector<int> codes(scenarios.size(), 0);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      codes[i] = run_and_print(scenarios[i], out_dir, &texts[i]);
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, scenarios.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = 0;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    (codes[i] == 0 ? std::cout : std::cerr) << texts[i];
    if (code == 0) code = codes[i];
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Predator-prey discretization laboratory"};
  // "-h" is taken by the step-size flag.
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", std::string(lv_version()));
  app.require_subcommand(1);

  std::string out_flag;
  const auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_flag, "Output directory (default: $LV_OUT_DIR or .)");
  };

  SimFlags sim_flags;
  auto* sim = app.add_subcommand("simulate", "Run one scheme and write CSV, SVG and JSON");
  add_sim_flags(sim, sim_flags);
  add_out(sim);

  SimFlags an_flags;
  AnalysisFlags analyses;
  auto* an = app.add_subcommand("analyze", "Simulate and run the selected analyses");
  add_sim_flags(an, an_flags);
  add_out(an);
  an->add_flag("--stability", analyses.stability, "Classify both fixed points");
  an->add_flag("--direction", analyses.direction, "Check direction of motion per region");
  an->add_flag("--positivity", analyses.positivity, "Locate negative densities");
  an->add_flag("--closure", analyses.closure, "Measure orbit closure on the section");
  an->add_option("--overlay-ref", analyses.overlay_ref, "Reference scheme for the overlay")
      ->check(CLI::IsMember({"rk4"}));

  std::vector<std::string> preset_names;
  unsigned jobs = 1;
  auto* pre = app.add_subcommand("preset", "Run named figure presets ('all' runs every one)");
  pre->add_option("names", preset_names, "Preset names")->required();
  pre->add_option("--jobs", jobs, "Presets to run concurrently")->check(CLI::Range(1u, 256u));
  add_out(pre);

  auto* list = app.add_subcommand("list-presets", "Print the preset names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return LV_EXIT_INVALID_CONFIG;
  }

  try {
    if (*list) {
      for (std::size_t i = 0; i < lv_preset_count(); ++i) std::cout << lv_preset_name(i) << "\n";
      return LV_EXIT_OK;
    }
    if (*pre) return run_presets(preset_names, out_flag, jobs);
    if (*sim) return run_custom(sim_flags, AnalysisFlags{}, out_flag);
    if (*an) return run_custom(an_flags, analyses, out_flag);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return LV_EXIT_INVALID_CONFIG;
}
