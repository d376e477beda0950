// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "lv/discretizers.hpp"
#include "lv/model.hpp"

namespace lv {

/// Open regions of the positive quadrant cut by x = delta/gamma and
/// y = alpha/beta:
///   I:   x > delta/gamma, y > alpha/beta
///   II:  x < delta/gamma, y > alpha/beta
///   III: x < delta/gamma, y < alpha/beta
///   IV:  x > delta/gamma, y < alpha/beta
enum class RegionId { I, II, III, IV, BoundaryX, BoundaryY, Exterior };

std::string_view to_string(RegionId r) noexcept;

/// Exterior when a coordinate is <= 0, then BoundaryX / BoundaryY when
/// within 1e-12 (scaled by max(1, line)) of a dividing line.
RegionId classify_region(const ModelParams& p, State s) noexcept;

enum class Sign { Negative, Zero, Positive };

std::string_view to_string(Sign s) noexcept;

struct DirectionReport {
  RegionId region = RegionId::Exterior;
  Sign dx_sign = Sign::Zero;
  Sign dy_sign = Sign::Zero;
  bool conforms = false;
};

struct ContinuousFlow {};
struct EulerMap {
  StepSize h;
};
struct MickensMap {
  double phi_val;
};
using Dynamics = std::variant<ContinuousFlow, EulerMap, MickensMap>;

/// Compares the direction of motion at s against the region sign table:
/// x falls in I and II and rises in III and IV; y falls in II and III and
/// rises in I and IV. For the nonstandard map the expected y direction is
/// taken from the region of the updated x. Throws InvalidArgument when s
/// is on a dividing line or outside the open quadrant.
DirectionReport check_direction(const Dynamics& dyn, const ModelParams& p, State s);

enum class Variable { X, Y };
enum class ExitCase { RegionII_xCross, RegionIII_yCross };

std::string_view to_string(Variable v) noexcept;
std::string_view to_string(ExitCase c) noexcept;

struct PositivityReport {
  std::optional<std::size_t> first_negative_step;
  std::optional<Variable> negative_variable;
  std::optional<std::size_t> recovered_positive_step;
  /// x going negative is the region-II crossing case, y going negative the
  /// region-III one.
  std::optional<ExitCase> exit_case;
  /// Region of the state just before the first negative one.
  std::optional<RegionId> predecessor_region;

  bool empty() const noexcept { return !first_negative_step.has_value(); }
};

PositivityReport monitor_positivity(const Trajectory& traj);

enum class ClosureVerdict { Closed, SpiralOut, SpiralIn, Inconclusive };

std::string_view to_string(ClosureVerdict v) noexcept;

/// Relative per-period change in crossing x that separates Closed from a
/// spiral.
inline constexpr double kClosureDriftThreshold = 0.005;

struct ClosureMetrics {
  /// x coordinate of each upward crossing of {y = alpha/beta, x > delta/gamma}.
  std::vector<double> crossings;
  std::vector<double> crossing_times;
  /// (c[k+1] - c[k]) / c[k]; empty when fewer than 3 crossings exist.
  std::vector<double> drift_per_period;
  /// First integral evaluated at each crossing point.
  std::vector<double> first_integral_at_crossings;
  /// (V_last - V_first) / (V_first - V_min), V_min the value at the
  /// coexistence point. Present when drift_per_period is.
  std::optional<double> first_integral_drift;
  ClosureVerdict verdict = ClosureVerdict::Inconclusive;
};

/// Throws InvalidArgument when the trajectory is empty, starts on or outside
/// an axis, or starts within 1e-6 of the coexistence point.
ClosureMetrics measure_closure(const Trajectory& traj, const ModelParams& p);

struct OverlayResult {
  /// max of the two per-variable values.
  double sup_rel_error = 0.0;
  double sup_rel_error_x = 0.0;
  double sup_rel_error_y = 0.0;
  std::vector<double> times;
  std::vector<double> rel_error_x;
  std::vector<double> rel_error_y;
};

/// Pointwise comparison of a against b on the coarser of the two time grids,
/// resampling the finer one by linear interpolation. Errors are scaled by
/// the peak-to-peak range of b over the compared window. Throws
/// InvalidArgument on different params or starts, or disjoint time ranges.
OverlayResult compare_overlay(const Trajectory& a, const Trajectory& b);

}  // namespace lv
