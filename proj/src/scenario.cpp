// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <system_error>

#include "lv/error.hpp"
#include "lv/reporting.hpp"

namespace lv {

std::string_view to_string(Analysis a) noexcept {
  switch (a) {
    case Analysis::Stability: return "stability";
    case Analysis::Direction: return "direction";
    case Analysis::Positivity: return "positivity";
    case Analysis::Closure: return "closure";
    case Analysis::Overlay: return "overlay";
  }
  return "unknown";
}

Analysis parse_analysis(std::string_view name) {
  for (Analysis a : {Analysis::Stability, Analysis::Direction, Analysis::Positivity,
                     Analysis::Closure, Analysis::Overlay}) {
    if (to_string(a) == name) return a;
  }
  throw InvalidArgument("unknown analysis '" + std::string(name) + "'");
}

std::vector<State> Scenario::starts() const {
  std::vector<State> all{start};
  all.insert(all.end(), extra_starts.begin(), extra_starts.end());
  return all;
}

void validate(const Scenario& sc) {
  if (sc.name.empty()) throw InvalidArgument("scenario name must not be empty");
  const bool safe = std::all_of(sc.name.begin(), sc.name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '-' || c == '_' || c == '.';
  });
  if (!safe || sc.name.front() == '.') {
    throw InvalidArgument("scenario name may only use letters, digits, '-', '_' and '.'");
  }
  if (sc.n_steps < 1) throw InvalidArgument("n_steps must be at least 1");
  PhiFunction::named(sc.phi);

  const State centre = fixed_points(sc.params).coexistence;
  for (const State& s : sc.starts()) {
    if (!s.finite()) throw InvalidArgument("initial state must be finite");
    if (sc.scheme == SchemeId::Mickens && (s.x < 0.0 || s.y < 0.0)) {
      throw InvalidArgument("nonstandard scheme needs a non-negative initial state");
    }
    if (sc.analyses.contains(Analysis::Closure)) {
      if (!s.strictly_positive()) {
        throw InvalidArgument("closure analysis needs starts strictly inside the positive quadrant");
      }
      if (std::hypot(s.x - centre.x, s.y - centre.y) <= 1e-6) {
        throw InvalidArgument("closure analysis needs starts away from the coexistence point");
      }
    }
  }
  if (sc.analyses.contains(Analysis::Overlay)) {
    if (!sc.overlay_reference) throw InvalidArgument("overlay analysis needs a reference scheme");
    if (sc.overlay_refinement < 1) throw InvalidArgument("overlay refinement must be at least 1");
    if (*sc.overlay_reference == SchemeId::Mickens && (sc.start.x < 0.0 || sc.start.y < 0.0)) {
      throw InvalidArgument("nonstandard reference needs a non-negative initial state");
    }
  }
}

const std::vector<Scenario>& presets() {
  static const std::vector<Scenario> all = [] {
    const ModelParams fig{1.0, 0.1, 0.075, 0.75};
    using A = Analysis;
    std::vector<Scenario> v;
    // t in [0, 30] covers about four periods at these rates.
    v.push_back({"fig1-regions", fig, SchemeId::ReferenceRK4, StepSize(1e-3), "identity", {5, 5},
                 {}, 30000, {A::Stability, A::Direction}, std::nullopt, 100});
    v.push_back({"fig2-phase-portrait", fig, SchemeId::ReferenceRK4, StepSize(1e-3), "identity",
                 {5, 5}, {{7, 7}, {3, 12}, {15, 6}, {2, 4}}, 30000,
                 {A::Stability, A::Direction, A::Closure}, std::nullopt, 100});
    v.push_back({"fig3-oscillations", fig, SchemeId::ReferenceRK4, StepSize(1e-3), "identity",
                 {5, 5}, {}, 30000, {A::Stability, A::Closure}, std::nullopt, 100});
    v.push_back({"fig4-euler-spiral", fig, SchemeId::Euler, StepSize(0.02), "identity", {9, 9},
                 {}, 1500, {A::Stability, A::Direction, A::Closure}, std::nullopt, 100});
    v.push_back({"fig5-euler-oscillations", fig, SchemeId::Euler, StepSize(0.02), "identity",
                 {5, 5}, {}, 1500, {A::Stability, A::Positivity, A::Closure}, std::nullopt, 100});
    // The first negative prey value appears near step 9740.
    v.push_back({"fig7-euler-negative", fig, SchemeId::Euler, StepSize(0.03), "identity", {5, 5},
                 {}, 10000, {A::Stability, A::Positivity, A::Closure}, std::nullopt, 100});
    v.push_back({"fig8-mickens-overlay", fig, SchemeId::Mickens, StepSize(0.01), "identity",
                 {5, 5}, {}, 3000,
                 {A::Stability, A::Direction, A::Positivity, A::Closure, A::Overlay},
                 SchemeId::ReferenceRK4, 100});
    return v;
  }();
  return all;
}

std::optional<Scenario> find_preset(std::string_view name) {
  for (const auto& sc : presets()) {
    if (sc.name == name) return sc;
  }
  return std::nullopt;
}

bool RunReport::diverged() const noexcept {
  return std::any_of(trajectories.begin(), trajectories.end(),
                     [](const TrajectoryOutcome& t) { return t.divergence_step.has_value(); });
}

int exit_status(const RunReport& r) noexcept { return r.diverged() ? kExitDiverged : kExitOk; }

namespace {

Dynamics dynamics_for(SchemeId scheme, StepSize h, double phi_val) {
  switch (scheme) {
    case SchemeId::Euler: return EulerMap{h};
    case SchemeId::Mickens: return MickensMap{phi_val};
    case SchemeId::ReferenceRK4: break;
  }
  return ContinuousFlow{};
}

DirectionSummary summarize_direction(const Trajectory& tr, const Dynamics& dyn) {
  DirectionSummary sum;
  for (const auto& pt : tr.points) {
    const RegionId r = classify_region(tr.params, pt.s);
    if (r == RegionId::Exterior || r == RegionId::BoundaryX || r == RegionId::BoundaryY) {
      ++sum.skipped;
      continue;
    }
    ++sum.checked;
    if (check_direction(dyn, tr.params, pt.s).conforms) {
      ++sum.conforming;
    } else if (!sum.first_violation_step) {
      sum.first_violation_step = pt.step;
    }
  }
  return sum;
}

std::vector<StabilityReport> stability_reports(const Scenario& sc, double phi_val) {
  const FixedPointPair fp = fixed_points(sc.params);
  std::vector<StabilityReport> out;
  for (const State s : {fp.origin, fp.coexistence}) out.push_back(classify_continuous(sc.params, s));
  if (sc.scheme == SchemeId::Euler) {
    for (const State s : {fp.origin, fp.coexistence}) out.push_back(classify_euler(sc.params, sc.h, s));
  } else if (sc.scheme == SchemeId::Mickens) {
    for (const State s : {fp.origin, fp.coexistence}) {
      out.push_back(classify_mickens(sc.params, phi_val, s));
    }
  }
  return out;
}

// Removes every registered file unless released.
class OutputGuard {
 public:
  void add(std::filesystem::path p) { files_.push_back(std::move(p)); }
  void release() { files_.clear(); }
  ~OutputGuard() {
    for (const auto& f : files_) {
      std::error_code ec;
      std::filesystem::remove(f, ec);
    }
  }

 private:
  std::vector<std::filesystem::path> files_;
};

}  // namespace

RunReport run_scenario(const Scenario& sc, const std::filesystem::path& out_dir) {
  validate(sc);
  const auto t0 = std::chrono::steady_clock::now();

  const PhiFunction phi = PhiFunction::named(sc.phi);
  const double phi_val = phi(sc.h);
  const Dynamics dyn = dynamics_for(sc.scheme, sc.h, phi_val);

  std::vector<Trajectory> trajs;
  for (const State& s : sc.starts()) {
    trajs.push_back(simulate(sc.scheme, sc.params, phi, sc.h, s, sc.n_steps));
  }

  RunReport rep{sc, {}, {}, {}, std::nullopt, std::nullopt, std::string(kToolVersion), 0.0};
  const auto& an = sc.analyses;
  if (an.contains(Analysis::Stability)) rep.stability = stability_reports(sc, phi_val);

  bool diverged = false;
  for (const auto& tr : trajs) {
    TrajectoryOutcome o;
    o.start = tr.points.front().s;
    o.points = tr.points.size();
    o.divergence_step = tr.divergence_step;
    diverged = diverged || tr.diverged();
    if (an.contains(Analysis::Direction)) o.direction = summarize_direction(tr, dyn);
    if (an.contains(Analysis::Positivity)) o.positivity = monitor_positivity(tr);
    if (an.contains(Analysis::Closure)) o.closure = measure_closure(tr, sc.params);
    rep.trajectories.push_back(std::move(o));
  }

  if (an.contains(Analysis::Overlay)) {
    const StepSize h_ref(sc.h.value() / static_cast<double>(sc.overlay_refinement));
    const Trajectory ref = simulate(*sc.overlay_reference, sc.params, phi, h_ref, sc.start,
                                    sc.n_steps * sc.overlay_refinement);
    rep.overlay = compare_overlay(trajs.front(), ref);
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw IoError("cannot create output directory '" + out_dir.string() + "'");
  }

  const std::string suffix = diverged ? ".partial" : "";
  OutputGuard guard;
  for (std::size_t k = 0; k < trajs.size(); ++k) {
    const std::string stem = k == 0 ? sc.name : sc.name + "_start" + std::to_string(k + 1);
    const auto path = out_dir / (stem + ".csv" + suffix);
    guard.add(path);
    emit_csv(trajs[k], path);
    rep.trajectories[k].csv_file = path;
  }
  rep.svg_file = out_dir / (sc.name + ".svg" + suffix);
  guard.add(rep.svg_file);
  emit_phase_svg(trajs, sc.params, rep.svg_file);

  rep.json_file = out_dir / (sc.name + ".json" + suffix);
  rep.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  guard.add(rep.json_file);
  emit_report_json(rep, rep.json_file);
  guard.release();
  return rep;
}

}  // namespace lv
