// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace lv {

/// Rates of the predator-prey system. All four are strictly positive.
///
/// alpha: prey growth, beta: predation, gamma: conversion, delta: predator
/// death. Construction throws InvalidArgument on non-positive or non-finite
/// input, so a ModelParams value is always valid.
class ModelParams {
 public:
  ModelParams(double alpha, double beta, double gamma, double delta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  double delta() const noexcept { return delta_; }

  /// x coordinate of the coexistence equilibrium, delta / gamma.
  double prey_equilibrium() const noexcept { return delta_ / gamma_; }
  /// y coordinate of the coexistence equilibrium, alpha / beta.
  double predator_equilibrium() const noexcept { return alpha_ / beta_; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double alpha_;
  double beta_;
  double gamma_;
  double delta_;
};

/// Prey (x) and predator (y) densities. Negative values are representable;
/// the Euler map produces them.
struct State {
  double x = 0.0;
  double y = 0.0;

  bool finite() const noexcept { return std::isfinite(x) && std::isfinite(y); }
  bool strictly_positive() const noexcept { return x > 0.0 && y > 0.0; }

  friend bool operator==(const State&, const State&) = default;
};

/// Time derivative of a State.
struct Rates {
  double dx = 0.0;
  double dy = 0.0;
};

/// Row-major 2x2 matrix ((a, b), (c, d)).
struct Matrix2 {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  double trace() const noexcept { return a + d; }
  double det() const noexcept { return a * d - b * c; }
  bool finite() const noexcept {
    return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d);
  }
};

struct FixedPointPair {
  State origin;
  State coexistence;
};

Rates vector_field(const ModelParams& p, State s) noexcept;

Matrix2 continuous_jacobian(const ModelParams& p, State s) noexcept;

/// (0, 0) and (delta/gamma, alpha/beta). Shared by the flow and by both
/// discrete maps.
FixedPointPair fixed_points(const ModelParams& p) noexcept;

/// Conserved quantity V = gamma x - delta ln x + beta y - alpha ln y of the
/// continuous flow. Throws DomainError unless x > 0 and y > 0.
double first_integral(const ModelParams& p, State s);

}  // namespace lv
