// SPDX-License-Identifier: Apache-2.0
// Exercises the shared library through its C interface only.
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include <unistd.h>

#include "lv/lv.h"

namespace fs = std::filesystem;

namespace {

const lv_params kFig{1.0, 0.1, 0.075, 0.75};

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("lv_capi_" + std::to_string(::getpid()));
  TempDir() { fs::create_directories(path); }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("status helpers") {
  CHECK(std::string(lv_version()) == "0.1.0");
  CHECK(std::string(lv_status_string(LV_OK)) != "");
  CHECK(lv_exit_code(LV_OK) == LV_EXIT_OK);
  CHECK(lv_exit_code(LV_INVALID_ARGUMENT) == LV_EXIT_INVALID_CONFIG);
  CHECK(lv_exit_code(LV_DOMAIN_ERROR) == LV_EXIT_INVALID_CONFIG);
  CHECK(lv_exit_code(LV_DIVERGED) == LV_EXIT_DIVERGED);
  CHECK(lv_exit_code(LV_IO_ERROR) == LV_EXIT_IO_FAILURE);
}

TEST_CASE("model functions") {
  CHECK(lv_params_check(&kFig) == LV_OK);
  const lv_params bad{1.0, -0.1, 0.075, 0.75};
  CHECK(lv_params_check(&bad) == LV_INVALID_ARGUMENT);
  CHECK(std::string(lv_last_error()).find("beta") != std::string::npos);
  CHECK(lv_params_check(nullptr) == LV_INVALID_ARGUMENT);

  lv_state r{};
  REQUIRE(lv_vector_field(&kFig, {5, 5}, &r) == LV_OK);
  CHECK(r.x == doctest::Approx(2.5));
  CHECK(r.y == doctest::Approx(-1.875));

  lv_state o{}, c{};
  REQUIRE(lv_fixed_points(&kFig, &o, &c) == LV_OK);
  CHECK(c.x == doctest::Approx(10));
  CHECK(c.y == doctest::Approx(10));

  double v = 0;
  CHECK(lv_first_integral(&kFig, {10, 10}, &v) == LV_OK);
  CHECK(v == doctest::Approx(-2.2795239127395799));
  CHECK(lv_first_integral(&kFig, {0, 10}, &v) == LV_DOMAIN_ERROR);
  CHECK(lv_vector_field(&kFig, {5, 5}, nullptr) == LV_INVALID_ARGUMENT);
}

TEST_CASE("stepping and trajectories") {
  lv_state s{};
  REQUIRE(lv_step(LV_SCHEME_EULER, &kFig, LV_PHI_IDENTITY, 0.02, {5, 5}, &s) == LV_OK);
  CHECK(s.x == doctest::Approx(5.05));
  CHECK(s.y == doctest::Approx(4.9625));
  CHECK(lv_step(LV_SCHEME_EULER, &kFig, LV_PHI_IDENTITY, 0.0, {5, 5}, &s) == LV_INVALID_ARGUMENT);
  CHECK(lv_step(LV_SCHEME_MICKENS, &kFig, LV_PHI_IDENTITY, 0.01, {-1, 5}, &s) == LV_DOMAIN_ERROR);
  CHECK(lv_step(static_cast<lv_scheme>(9), &kFig, LV_PHI_IDENTITY, 0.01, {5, 5}, &s) == LV_INVALID_ARGUMENT);

  lv_trajectory* t = nullptr;
  REQUIRE(lv_simulate(LV_SCHEME_MICKENS, &kFig, LV_PHI_EXPM1, 0.01, {5, 5}, 100, &t) == LV_OK);
  CHECK(lv_trajectory_size(t) == 101);
  size_t step = 0;
  double time = 0;
  lv_state pt{};
  CHECK(lv_trajectory_point(t, 100, &step, &time, &pt) == LV_OK);
  CHECK(step == 100);
  CHECK(time == doctest::Approx(1.0));
  CHECK(lv_trajectory_point(t, 101, &step, &time, &pt) == LV_INVALID_ARGUMENT);
  CHECK(lv_trajectory_divergence(t, &step) == 0);
  lv_trajectory_free(t);
  lv_trajectory_free(nullptr);

  REQUIRE(lv_simulate(LV_SCHEME_EULER, &kFig, LV_PHI_IDENTITY, 5.0, {5, 5}, 200, &t) == LV_OK);
  CHECK(lv_trajectory_divergence(t, &step) == 1);
  CHECK(lv_trajectory_size(t) == step);
  lv_trajectory_free(t);
}

TEST_CASE("stability through the c interface") {
  lv_stability_report rep{};
  REQUIRE(lv_classify(LV_SYSTEM_CONTINUOUS, &kFig, 0, {10, 10}, &rep) == LV_OK);
  CHECK(rep.classification == LV_LINEAR_CENTER);
  CHECK(rep.eigen[0].im == doctest::Approx(std::sqrt(0.75)));
  REQUIRE(lv_classify(LV_SYSTEM_CONTINUOUS, &kFig, 0, {0, 0}, &rep) == LV_OK);
  CHECK(rep.classification == LV_SADDLE_POINT);
  REQUIRE(lv_classify(LV_SYSTEM_EULER, &kFig, 0.02, {10, 10}, &rep) == LV_OK);
  CHECK(rep.classification == LV_UNSTABLE_FOCUS);
  REQUIRE(lv_classify(LV_SYSTEM_MICKENS, &kFig, 0.01, {10, 10}, &rep) == LV_OK);
  CHECK(rep.classification == LV_LINEAR_CENTER);
  CHECK(rep.jacobian.a * rep.jacobian.d - rep.jacobian.b * rep.jacobian.c == doctest::Approx(1.0));
  CHECK(lv_classify(LV_SYSTEM_CONTINUOUS, &kFig, 0, {5, 5}, &rep) == LV_INVALID_ARGUMENT);
  CHECK(lv_classify(LV_SYSTEM_MICKENS, &kFig, -1, {10, 10}, &rep) == LV_INVALID_ARGUMENT);

  lv_complex ev[2];
  REQUIRE(lv_eig2({0, -1, 1, 0}, ev) == LV_OK);
  CHECK(ev[0].re == doctest::Approx(0));
  CHECK(std::fabs(ev[0].im) == doctest::Approx(1));
  lv_matrix2 j{};
  CHECK(lv_jacobian(LV_SYSTEM_EULER, &kFig, 0.02, {10, 10}, &j) == LV_OK);
  CHECK(j.a == doctest::Approx(1.0));
}

TEST_CASE("dynamics through the c interface") {
  lv_region r{};
  CHECK(lv_classify_region(&kFig, {5, 15}, &r) == LV_OK);
  CHECK(r == LV_REGION_II);
  lv_direction_report d{};
  REQUIRE(lv_check_direction(LV_SYSTEM_EULER, &kFig, 0.02, {15, 5}, &d) == LV_OK);
  CHECK(d.dx_sign == 1);
  CHECK(d.dy_sign == 1);
  CHECK(d.conforms == 1);
  CHECK(lv_check_direction(LV_SYSTEM_CONTINUOUS, &kFig, 0, {10, 3}, &d) == LV_INVALID_ARGUMENT);

  lv_trajectory* t = nullptr;
  REQUIRE(lv_simulate(LV_SCHEME_EULER, &kFig, LV_PHI_IDENTITY, 0.03, {5, 5}, 10000, &t) == LV_OK);
  lv_positivity_report p{};
  REQUIRE(lv_monitor_positivity(t, &p) == LV_OK);
  CHECK(p.has_negative == 1);
  CHECK(p.first_negative_step == 9740);
  CHECK(p.negative_variable == 0);
  CHECK(p.has_recovery == 1);
  CHECK(p.recovered_positive_step == 9741);
  CHECK(p.exit_case == 0);
  CHECK(p.predecessor_region == LV_REGION_I);

  lv_closure* c = nullptr;
  REQUIRE(lv_measure_closure(t, &c) == LV_OK);
  CHECK(lv_closure_verdict(c) == LV_VERDICT_SPIRAL_OUT);
  CHECK(lv_closure_crossing_count(c) >= 3);
  CHECK(lv_closure_drift_count(c) == lv_closure_crossing_count(c) - 1);
  CHECK(lv_closure_drift(c, 0) > 0.005);
  CHECK(std::isnan(lv_closure_drift(c, 100000)));
  lv_closure_free(c);

  lv_trajectory* m = nullptr;
  lv_trajectory* ref = nullptr;
  REQUIRE(lv_simulate(LV_SCHEME_MICKENS, &kFig, LV_PHI_IDENTITY, 0.01, {5, 5}, 1000, &m) == LV_OK);
  REQUIRE(lv_simulate(LV_SCHEME_RK4, &kFig, LV_PHI_IDENTITY, 1e-4, {5, 5}, 100000, &ref) == LV_OK);
  lv_overlay_result o{};
  REQUIRE(lv_compare_overlay(m, ref, &o) == LV_OK);
  CHECK(o.compared_points == 1001);
  CHECK(o.sup_rel_error > 0);
  lv_trajectory* other = nullptr;
  REQUIRE(lv_simulate(LV_SCHEME_RK4, &kFig, LV_PHI_IDENTITY, 1e-2, {6, 6}, 10, &other) == LV_OK);
  CHECK(lv_compare_overlay(m, other, &o) == LV_INVALID_ARGUMENT);
  lv_trajectory_free(other);

  TempDir dir;
  const std::string csv = (dir.path / "m.csv").string();
  const std::string svg = (dir.path / "m.svg").string();
  CHECK(lv_write_csv(m, csv.c_str()) == LV_OK);
  const lv_trajectory* both[] = {m, ref};
  CHECK(lv_write_phase_svg(both, 2, svg.c_str()) == LV_OK);
  CHECK(lv_write_phase_svg(both, 0, svg.c_str()) == LV_INVALID_ARGUMENT);
  CHECK(lv_write_csv(m, (dir.path / "missing" / "m.csv").string().c_str()) == LV_IO_ERROR);
  CHECK(fs::file_size(csv) > 0);
  lv_trajectory_free(t);
  lv_trajectory_free(m);
  lv_trajectory_free(ref);
}

TEST_CASE("scenarios through the c interface") {
  REQUIRE(lv_preset_count() == 7);
  CHECK(std::string(lv_preset_name(0)) == "fig1-regions");
  CHECK(lv_preset_name(7) == nullptr);

  lv_scenario* sc = nullptr;
  CHECK(lv_scenario_from_preset("nope", &sc) == LV_NOT_FOUND);
  REQUIRE(lv_scenario_from_preset("fig7-euler-negative", &sc) == LV_OK);
  CHECK(std::string(lv_scenario_name(sc)) == "fig7-euler-negative");

  TempDir dir;
  lv_run* run = nullptr;
  REQUIRE(lv_run_scenario(sc, dir.path.c_str(), &run) == LV_OK);
  CHECK(fs::exists(lv_run_json_path(run)));
  CHECK(fs::exists(lv_run_svg_path(run)));
  CHECK(lv_run_csv_count(run) == 1);
  CHECK(fs::exists(lv_run_csv_path(run, 0)));
  CHECK(lv_run_csv_path(run, 1) == nullptr);
  CHECK(std::string(lv_run_summary(run)).find("9740") != std::string::npos);
  lv_run_free(run);
  lv_scenario_free(sc);

  lv_scenario_config cfg{"custom", kFig, LV_SCHEME_EULER, 5.0, LV_PHI_IDENTITY, {5, 5}, 200,
                         LV_ANALYSIS_STABILITY, -1, 0};
  REQUIRE(lv_scenario_create(&cfg, &sc) == LV_OK);
  run = nullptr;
  CHECK(lv_run_scenario(sc, dir.path.c_str(), &run) == LV_DIVERGED);
  REQUIRE(run != nullptr);
  CHECK(std::string(lv_run_json_path(run)).ends_with(".json.partial"));
  lv_run_free(run);
  lv_scenario_free(sc);

  cfg.name = "";
  CHECK(lv_scenario_create(&cfg, &sc) == LV_INVALID_ARGUMENT);
  cfg.name = "ok";
  cfg.h = -1;
  CHECK(lv_scenario_create(&cfg, &sc) == LV_INVALID_ARGUMENT);
  cfg.h = 0.01;
  cfg.analyses = LV_ANALYSIS_OVERLAY;
  CHECK(lv_scenario_create(&cfg, &sc) == LV_INVALID_ARGUMENT);
  cfg.overlay_reference = LV_SCHEME_RK4;
  REQUIRE(lv_scenario_create(&cfg, &sc) == LV_OK);

  const std::string file = (dir.path / "afile").string();
  std::FILE* f = std::fopen(file.c_str(), "w");
  std::fclose(f);
  run = nullptr;
  CHECK(lv_run_scenario(sc, file.c_str(), &run) == LV_IO_ERROR);
  CHECK(run == nullptr);
  lv_scenario_free(sc);
}
