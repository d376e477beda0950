// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <string>

#include <json.hpp>

#include "lv/error.hpp"
#include "lv/reporting.hpp"

namespace lv {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kOverlayTolerance = 0.05;

Json state_json(State s) { return Json{{"x", s.x}, {"y", s.y}}; }

template <typename T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename E>
Json opt_name(const std::optional<E>& v) {
  return v ? Json(std::string(to_string(*v))) : Json(nullptr);
}

Json scenario_json(const Scenario& sc) {
  Json j;
  j["name"] = sc.name;
  j["scheme"] = std::string(to_string(sc.scheme));
  j["params"] = Json{{"alpha", sc.params.alpha()},
                     {"beta", sc.params.beta()},
                     {"gamma", sc.params.gamma()},
                     {"delta", sc.params.delta()}};
  j["h"] = sc.h.value();
  j["phi"] = sc.phi;
  j["start"] = state_json(sc.start);
  j["extra_starts"] = Json::array();
  for (const State& s : sc.extra_starts) j["extra_starts"].push_back(state_json(s));
  j["n_steps"] = sc.n_steps;
  j["analyses"] = Json::array();
  for (Analysis a : sc.analyses) j["analyses"].push_back(std::string(to_string(a)));
  j["overlay_reference"] = opt_name(sc.overlay_reference);
  j["overlay_refinement"] = sc.overlay_refinement;
  return j;
}

Json stability_json(const StabilityReport& r) {
  Json j;
  j["system"] = std::string(to_string(r.kind));
  j["point"] = state_json(r.point);
  j["jacobian"] = Json{{"a", r.jacobian.a}, {"b", r.jacobian.b}, {"c", r.jacobian.c}, {"d", r.jacobian.d}};
  j["eigenvalues"] = Json::array({Json{{"re", r.eigen.first.real()}, {"im", r.eigen.first.imag()}},
                                  Json{{"re", r.eigen.second.real()}, {"im", r.eigen.second.imag()}}});
  j["moduli"] = Json::array({std::abs(r.eigen.first), std::abs(r.eigen.second)});
  j["classification"] = std::string(to_string(r.classification));
  j["note"] = r.note;
  return j;
}

}  // namespace

std::string report_json_text(const RunReport& r) {
  Json j;
  j["schema"] = std::string(kReportSchemaId);
  j["tool_version"] = r.tool_version;
  j["scenario"] = scenario_json(r.scenario);

  Json outputs;
  outputs["json"] = r.json_file.string();
  outputs["svg"] = r.svg_file.string();
  outputs["trajectories"] = Json::array();
  for (const auto& t : r.trajectories) {
    outputs["trajectories"].push_back(Json{{"start", state_json(t.start)},
                                           {"csv", t.csv_file.string()},
                                           {"points", t.points},
                                           {"divergence_step", opt(t.divergence_step)}});
  }
  j["outputs"] = outputs;
  j["diverged"] = r.diverged();

  if (r.stability) {
    j["stability"] = Json::array();
    for (const auto& s : *r.stability) j["stability"].push_back(stability_json(s));
  }

  const auto& sa = r.scenario.analyses;
  if (sa.contains(Analysis::Direction)) {
    j["direction"] = Json::array();
    for (const auto& t : r.trajectories) {
      const DirectionSummary& d = *t.direction;
      j["direction"].push_back(Json{{"start", state_json(t.start)},
                                    {"checked", d.checked},
                                    {"conforming", d.conforming},
                                    {"violations", d.checked - d.conforming},
                                    {"skipped", d.skipped},
                                    {"first_violation_step", opt(d.first_violation_step)}});
    }
  }

  if (sa.contains(Analysis::Positivity)) {
    j["positivity"] = Json::array();
    for (const auto& t : r.trajectories) {
      const PositivityReport& p = *t.positivity;
      j["positivity"].push_back(Json{{"start", state_json(t.start)},
                                     {"empty", p.empty()},
                                     {"first_negative_step", opt(p.first_negative_step)},
                                     {"negative_variable", opt_name(p.negative_variable)},
                                     {"recovered_positive_step", opt(p.recovered_positive_step)},
                                     {"exit_case", opt_name(p.exit_case)},
                                     {"predecessor_region", opt_name(p.predecessor_region)}});
    }
  }

  if (sa.contains(Analysis::Closure)) {
    j["closure"] = Json::array();
    for (const auto& t : r.trajectories) {
      const ClosureMetrics& c = *t.closure;
      j["closure"].push_back(Json{{"start", state_json(t.start)},
                                  {"verdict", std::string(to_string(c.verdict))},
                                  {"drift_threshold", kClosureDriftThreshold},
                                  {"crossings", c.crossings},
                                  {"crossing_times", c.crossing_times},
                                  {"drift_per_period", c.drift_per_period},
                                  {"first_integral_at_crossings", c.first_integral_at_crossings},
                                  {"first_integral_drift", opt(c.first_integral_drift)}});
    }
  }

  if (r.overlay) {
    const OverlayResult& o = *r.overlay;
    Json ov;
    ov["reference"] = opt_name(r.scenario.overlay_reference);
    ov["reference_h"] = r.scenario.h.value() / static_cast<double>(r.scenario.overlay_refinement);
    ov["sup_rel_error"] = o.sup_rel_error;
    ov["sup_rel_error_x"] = o.sup_rel_error_x;
    ov["sup_rel_error_y"] = o.sup_rel_error_y;
    ov["tolerance"] = kOverlayTolerance;
    ov["tolerance_note"] = "chosen threshold for visual overlap; not derived from theory";
    ov["within_tolerance"] = o.sup_rel_error < kOverlayTolerance;
    ov["series"] = Json{{"t", o.times}, {"rel_error_x", o.rel_error_x}, {"rel_error_y", o.rel_error_y}};
    j["overlay"] = ov;
  }

  j["wall_clock_seconds"] = r.wall_clock_seconds;
  return j.dump(2) + "\n";
}

void emit_report_json(const RunReport& r, const std::filesystem::path& path) {
  const std::string text = report_json_text(r);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  os.close();
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace lv
