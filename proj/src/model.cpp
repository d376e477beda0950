// SPDX-License-Identifier: Apache-2.0
#include "lv/model.hpp"

#include <cmath>
#include <string>

#include "lv/error.hpp"

namespace lv {

namespace {

double require_rate(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw InvalidArgument(std::string("parameter ") + name +
                          " must be positive and finite, got " + std::to_string(v));
  }
  return v;
}

}  // namespace

ModelParams::ModelParams(double alpha, double beta, double gamma, double delta)
    : alpha_(require_rate(alpha, "alpha")),
      beta_(require_rate(beta, "beta")),
      gamma_(require_rate(gamma, "gamma")),
      delta_(require_rate(delta, "delta")) {}

Rates vector_field(const ModelParams& p, State s) noexcept {
  return {p.alpha() * s.x - p.beta() * s.x * s.y, -p.delta() * s.y + p.gamma() * s.x * s.y};
}

Matrix2 continuous_jacobian(const ModelParams& p, State s) noexcept {
  return {p.alpha() - p.beta() * s.y, -p.beta() * s.x, p.gamma() * s.y,
          p.gamma() * s.x - p.delta()};
}

FixedPointPair fixed_points(const ModelParams& p) noexcept {
  return {{0.0, 0.0}, {p.prey_equilibrium(), p.predator_equilibrium()}};
}

double first_integral(const ModelParams& p, State s) {
  if (!(s.x > 0.0) || !(s.y > 0.0)) {
    throw DomainError("first integral needs x > 0 and y > 0");
  }
  return p.gamma() * s.x - p.delta() * std::log(s.x) + p.beta() * s.y - p.alpha() * std::log(s.y);
}

}  // namespace lv
