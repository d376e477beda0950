// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lv/discretizers.hpp"
#include "lv/dynamics.hpp"
#include "lv/model.hpp"
#include "lv/stability.hpp"

namespace lv {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kReportSchemaId = "lv-lab/run-report/v1";

/// Process exit statuses shared by the C API and the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitDiverged = 3;
inline constexpr int kExitIoFailure = 4;

enum class Analysis { Stability, Direction, Positivity, Closure, Overlay };

std::string_view to_string(Analysis a) noexcept;
Analysis parse_analysis(std::string_view name);

struct Scenario {
  std::string name;
  ModelParams params;
  SchemeId scheme;
  StepSize h;
  std::string phi = "identity";
  State start;
  /// Additional initial conditions run with the same map (phase portraits).
  std::vector<State> extra_starts;
  std::size_t n_steps = 1;
  std::set<Analysis> analyses;
  /// Reference run for the overlay analysis, at step h / overlay_refinement.
  std::optional<SchemeId> overlay_reference;
  std::size_t overlay_refinement = 100;

  std::vector<State> starts() const;
};

/// Throws InvalidArgument on an empty or non-filename-safe name, n_steps of
/// zero, an unknown phi option, a non-finite start, a Mickens start with a
/// negative coordinate, or an overlay request without a reference scheme.
void validate(const Scenario& sc);

/// Figure-reproduction configurations, in listing order.
const std::vector<Scenario>& presets();
std::optional<Scenario> find_preset(std::string_view name);

struct DirectionSummary {
  std::size_t checked = 0;
  std::size_t conforming = 0;
  /// Points on a dividing line or outside the open quadrant.
  std::size_t skipped = 0;
  std::optional<std::size_t> first_violation_step;
};

struct TrajectoryOutcome {
  State start;
  std::filesystem::path csv_file;
  std::size_t points = 0;
  std::optional<std::size_t> divergence_step;
  std::optional<DirectionSummary> direction;
  std::optional<PositivityReport> positivity;
  std::optional<ClosureMetrics> closure;
};

struct RunReport {
  Scenario scenario;
  std::vector<TrajectoryOutcome> trajectories;
  std::filesystem::path json_file;
  std::filesystem::path svg_file;
  std::optional<std::vector<StabilityReport>> stability;
  std::optional<OverlayResult> overlay;
  std::string tool_version{kToolVersion};
  double wall_clock_seconds = 0.0;

  bool diverged() const noexcept;
};

/// Simulates every start, runs the requested analyses and writes
/// <name>.csv (plus <name>_start<k>.csv for extra starts), <name>.svg and
/// <name>.json into out_dir. When a trajectory diverges the files carry a
/// trailing ".partial" suffix. On I/O failure the files written so far are
/// removed and IoError is thrown.
RunReport run_scenario(const Scenario& sc, const std::filesystem::path& out_dir);

/// Maps a finished report to kExitOk or kExitDiverged.
int exit_status(const RunReport& r) noexcept;

/// Shortest decimal text that reads back to the same double (at most 17
/// significant digits).
std::string format_number(double v);

/// Header "step,t,x,y,V"; V is left empty when a coordinate is <= 0.
std::string format_csv(const Trajectory& traj);
void emit_csv(const Trajectory& traj, const std::filesystem::path& path);
/// Reads the rows back. Throws IoError on unreadable files and
/// InvalidArgument on malformed content.
std::vector<TrajectoryPoint> parse_csv(const std::filesystem::path& path);
std::vector<TrajectoryPoint> parse_csv_text(std::string_view text);

std::string report_json_text(const RunReport& r);
void emit_report_json(const RunReport& r, const std::filesystem::path& path);

/// Standalone SVG 1.1 phase portrait. Throws InvalidArgument on an empty
/// trajectory list.
std::string phase_svg_text(std::span<const Trajectory> trajs, const ModelParams& p);
void emit_phase_svg(std::span<const Trajectory> trajs, const ModelParams& p,
                    const std::filesystem::path& path);

}  // namespace lv
