// SPDX-License-Identifier: Apache-2.0
#include "lv/discretizers.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "lv/error.hpp"

namespace lv {

std::string_view to_string(SchemeId id) noexcept {
  switch (id) {
    case SchemeId::Euler: return "euler";
    case SchemeId::Mickens: return "mickens";
    case SchemeId::ReferenceRK4: return "rk4";
  }
  return "unknown";
}

SchemeId parse_scheme(std::string_view name) {
  if (name == "euler") return SchemeId::Euler;
  if (name == "mickens") return SchemeId::Mickens;
  if (name == "rk4") return SchemeId::ReferenceRK4;
  throw InvalidArgument("unknown scheme '" + std::string(name) + "'");
}

StepSize::StepSize(double h) : h_(h) {
  if (!std::isfinite(h) || h <= 0.0) {
    throw InvalidArgument("step size must be positive and finite, got " + std::to_string(h));
  }
}

PhiFunction PhiFunction::identity() {
  return PhiFunction("identity", [](double h) { return h; });
}

PhiFunction PhiFunction::one_minus_exp() {
  return PhiFunction("expm1", [](double h) { return -std::expm1(-h); });
}

PhiFunction PhiFunction::named(std::string_view name) {
  if (name == "identity") return identity();
  if (name == "expm1") return one_minus_exp();
  throw InvalidArgument("unknown phi option '" + std::string(name) + "'");
}

PhiFunction::PhiFunction(std::string name, std::function<double(double)> fn)
    : name_(std::move(name)), fn_(std::move(fn)) {
  if (!fn_) throw InvalidArgument("phi function is empty");
  bool ok = std::isfinite(consistency_constant());
  if (ok) {
    // |phi/h - 1| / h stays bounded for an O(h^2) defect; a ratio that keeps
    // growing on the fine probes means a lower-order defect.
    double coarse = 1.0;
    double fine = 0.0;
    for (int k = 1; k <= 6; ++k) {
      const double h = std::pow(10.0, -k);
      const double c = std::fabs(fn_(h) / h - 1.0) / h;
      (k <= 3 ? coarse : fine) = std::fmax(k <= 3 ? coarse : fine, c);
    }
    ok = fine <= 10.0 * coarse;
  }
  if (!ok) throw InvalidArgument("phi '" + name_ + "' is not positive with phi(h) = h + O(h^2)");
}

double PhiFunction::operator()(StepSize h) const {
  const double v = fn_(h.value());
  if (!std::isfinite(v) || v <= 0.0) {
    throw DomainError("phi '" + name_ + "' is not positive at h = " + std::to_string(h.value()));
  }
  return v;
}

double PhiFunction::consistency_constant() const {
  double c = 0.0;
  for (double h = 1e-1; h >= 0.5e-6; h /= 10.0) {
    const double v = fn_(h);
    if (!std::isfinite(v) || v <= 0.0) return INFINITY;
    c = std::fmax(c, std::fabs(v / h - 1.0) / h);
  }
  return c;
}

State euler_step(const ModelParams& p, StepSize h, State s) noexcept {
  const double dt = h.value();
  return {s.x + dt * (p.alpha() * s.x - p.beta() * s.x * s.y),
          s.y + dt * (p.gamma() * s.x * s.y - p.delta() * s.y)};
}

State mickens_step(const ModelParams& p, double phi_val, State s) {
  if (s.x < 0.0 || s.y < 0.0) {
    throw DomainError("nonstandard step needs non-negative coordinates");
  }
  const double f = phi_val;
  const double x_next = s.x * (2.0 * p.alpha() * f + 1.0) / (1.0 + p.alpha() * f + p.beta() * f * s.y);
  const double y_next =
      s.y * (2.0 * p.gamma() * f * x_next + 1.0) / (1.0 + p.gamma() * f * x_next + p.delta() * f);
  return {x_next, y_next};
}

State mickens_step(const ModelParams& p, const PhiFunction& phi, StepSize h, State s) {
  return mickens_step(p, phi(h), s);
}

State mickens_step_closed_form(const ModelParams& p, double phi_val, State s) {
  if (s.x < 0.0 || s.y < 0.0) {
    throw DomainError("nonstandard step needs non-negative coordinates");
  }
  const double f = phi_val;
  const double growth = 2.0 * p.alpha() * f + 1.0;
  const double x_den = 1.0 + p.alpha() * f + p.beta() * f * s.y;
  const double y_num = 2.0 * p.gamma() * f * s.x * s.y * growth + s.y * x_den;
  const double y_den = (1.0 + p.delta() * f) * x_den + p.gamma() * f * s.x * growth;
  return {s.x * growth / x_den, y_num / y_den};
}

State rk4_step(const ModelParams& p, StepSize h, State s) noexcept {
  const double dt = h.value();
  const Rates k1 = vector_field(p, s);
  const Rates k2 = vector_field(p, {s.x + 0.5 * dt * k1.dx, s.y + 0.5 * dt * k1.dy});
  const Rates k3 = vector_field(p, {s.x + 0.5 * dt * k2.dx, s.y + 0.5 * dt * k2.dy});
  const Rates k4 = vector_field(p, {s.x + dt * k3.dx, s.y + dt * k3.dy});
  return {s.x + dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
          s.y + dt / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy)};
}

Trajectory simulate(SchemeId scheme, const ModelParams& p, const PhiFunction& phi, StepSize h,
                    State s0, std::size_t n_steps) {
  if (!s0.finite()) throw InvalidArgument("initial state must be finite");
  if (scheme == SchemeId::Mickens && (s0.x < 0.0 || s0.y < 0.0)) {
    throw DomainError("nonstandard scheme needs a non-negative initial state");
  }

  Trajectory traj{scheme, p, h, phi.name(), {}, std::nullopt};
  traj.points.reserve(n_steps + 1);
  traj.points.push_back({0, 0.0, s0});

  // phi only changes the update, so it is evaluated once.
  const double phi_val = scheme == SchemeId::Mickens ? phi(h) : 0.0;

  State s = s0;
  for (std::size_t i = 1; i <= n_steps; ++i) {
    switch (scheme) {
      case SchemeId::Euler: s = euler_step(p, h, s); break;
      case SchemeId::Mickens: s = mickens_step(p, phi_val, s); break;
      case SchemeId::ReferenceRK4: s = rk4_step(p, h, s); break;
    }
    if (!s.finite()) {
      traj.divergence_step = i;
      break;
    }
    traj.points.push_back({i, static_cast<double>(i) * h.value(), s});
  }
  return traj;
}

}  // namespace lv
