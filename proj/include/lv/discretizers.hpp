// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lv/model.hpp"

namespace lv {

enum class SchemeId { Euler, Mickens, ReferenceRK4 };

std::string_view to_string(SchemeId id) noexcept;
/// Accepts "euler", "mickens" and "rk4". Throws InvalidArgument otherwise.
SchemeId parse_scheme(std::string_view name);

/// Positive, finite time increment.
class StepSize {
 public:
  explicit StepSize(double h);
  double value() const noexcept { return h_; }

 private:
  double h_;
};

/// Denominator function of the nonstandard scheme, phi(h) = h + O(h^2).
class PhiFunction {
 public:
  /// phi(h) = h.
  static PhiFunction identity();
  /// phi(h) = 1 - exp(-h), registered under the name "expm1".
  static PhiFunction one_minus_exp();
  /// Looks up a named option ("identity" or "expm1").
  static PhiFunction named(std::string_view name);

  /// Wraps a caller-supplied function. Throws InvalidArgument when phi is
  /// not positive on the probe grid, consistency_constant() is not finite,
  /// or |phi(h)/h - 1| / h grows more than tenfold from h >= 1e-3 to h < 1e-3.
  PhiFunction(std::string name, std::function<double(double)> fn);

  double operator()(StepSize h) const;
  const std::string& name() const noexcept { return name_; }

  /// Largest |phi(h)/h - 1| / h over h in {1e-1, ..., 1e-6}.
  double consistency_constant() const;

 private:
  std::string name_;
  std::function<double(double)> fn_;
};

struct TrajectoryPoint {
  std::size_t step = 0;
  double t = 0.0;
  State s;
};

/// Iterates of one step map. Times are step * h regardless of phi.
struct Trajectory {
  SchemeId scheme = SchemeId::ReferenceRK4;
  ModelParams params;
  StepSize h;
  std::string phi_name;
  std::vector<TrajectoryPoint> points;
  /// Step at which a non-finite state appeared; that state is not stored.
  std::optional<std::size_t> divergence_step;

  bool diverged() const noexcept { return divergence_step.has_value(); }
};

/// Forward Euler map. No clamping or sign handling.
State euler_step(const ModelParams& p, StepSize h, State s) noexcept;

/// Nonstandard map: x' from the nonlocal prey update, then y' from the
/// predator update using the fresh x'. Throws DomainError on negative input.
State mickens_step(const ModelParams& p, const PhiFunction& phi, StepSize h, State s);
/// Same map for an already-evaluated denominator value phi_val > 0.
State mickens_step(const ModelParams& p, double phi_val, State s);
/// Single-expression form of the nonstandard map, used to cross-check the
/// sequential path.
State mickens_step_closed_form(const ModelParams& p, double phi_val, State s);

/// Classical four-stage Runge-Kutta step of the continuous flow.
State rk4_step(const ModelParams& p, StepSize h, State s) noexcept;

/// Runs n_steps iterations of the chosen map from s0. Stops early, setting
/// divergence_step, when a coordinate becomes non-finite. phi is only read
/// by the Mickens scheme.
Trajectory simulate(SchemeId scheme, const ModelParams& p, const PhiFunction& phi, StepSize h,
                    State s0, std::size_t n_steps);

}  // namespace lv
