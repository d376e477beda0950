// SPDX-License-Identifier: Apache-2.0
#include "lv/stability.hpp"

#include <cmath>

#include "lv/error.hpp"

namespace lv {

std::string_view to_string(Classification c) noexcept {
  switch (c) {
    case Classification::SaddlePoint: return "SaddlePoint";
    case Classification::Source: return "Source";
    case Classification::Sink: return "Sink";
    case Classification::UnstableFocus: return "UnstableFocus";
    case Classification::StableFocus: return "StableFocus";
    case Classification::LinearCenter: return "LinearCenter";
    case Classification::NonHyperbolic: return "NonHyperbolic";
  }
  return "unknown";
}

std::string_view to_string(SystemKind k) noexcept {
  switch (k) {
    case SystemKind::Continuous: return "continuous";
    case SystemKind::Euler: return "euler";
    case SystemKind::Mickens: return "mickens";
  }
  return "unknown";
}

Eigenpair eig2(const Matrix2& m) noexcept {
  const double half_tr = 0.5 * (m.a + m.d);
  // ((a - d)/2)^2 + bc equals (tr/2)^2 - det without the cancellation.
  const double half_diff = 0.5 * (m.a - m.d);
  const double disc = half_diff * half_diff + m.b * m.c;
  if (disc < 0.0) {
    const double im = std::sqrt(-disc);
    return {{half_tr, im}, {half_tr, -im}};
  }
  const double root = std::sqrt(disc);
  // Larger-magnitude root first, the other from det / root to avoid
  // subtracting nearly equal numbers.
  const double big = half_tr >= 0.0 ? half_tr + root : half_tr - root;
  if (big == 0.0) return {{0.0, 0.0}, {0.0, 0.0}};
  const double small = m.det() / big;
  return {{big, 0.0}, {small, 0.0}};
}

namespace {

Classification classify_by(double m1, double m2, bool complex_pair, double pivot) {
  const bool on1 = std::fabs(m1 - pivot) <= kThresholdBand;
  const bool on2 = std::fabs(m2 - pivot) <= kThresholdBand;
  if (on1 || on2) {
    return complex_pair && on1 && on2 ? Classification::LinearCenter
                                      : Classification::NonHyperbolic;
  }
  if (m1 < pivot && m2 < pivot) {
    return complex_pair ? Classification::StableFocus : Classification::Sink;
  }
  if (m1 > pivot && m2 > pivot) {
    return complex_pair ? Classification::UnstableFocus : Classification::Source;
  }
  return Classification::SaddlePoint;
}

void require_fixed_point(const ModelParams& p, State point) {
  const Rates r = vector_field(p, point);
  if (!point.finite() || !(std::fabs(r.dx) <= 1e-9) || !(std::fabs(r.dy) <= 1e-9)) {
    throw InvalidArgument("point is not a fixed point of the system");
  }
}

bool is_origin(State point) { return point.x == 0.0 && point.y == 0.0; }

StabilityReport make_report(SystemKind kind, State point, const Matrix2& j) {
  StabilityReport rep;
  rep.kind = kind;
  rep.point = point;
  rep.jacobian = j;
  rep.eigen = eig2(j);
  rep.classification = kind == SystemKind::Continuous ? classify_continuous_eigen(rep.eigen)
                                                      : classify_discrete_eigen(rep.eigen);
  return rep;
}

}  // namespace

Classification classify_continuous_eigen(const Eigenpair& e) noexcept {
  return classify_by(e.first.real(), e.second.real(), !e.real(), 0.0);
}

Classification classify_discrete_eigen(const Eigenpair& e) noexcept {
  return classify_by(std::abs(e.first), std::abs(e.second), !e.real(), 1.0);
}

Matrix2 euler_jacobian(const ModelParams& p, StepSize h, State s) noexcept {
  const double dt = h.value();
  return {1.0 + p.alpha() * dt - p.beta() * dt * s.y, -p.beta() * dt * s.x,
          p.gamma() * dt * s.y, 1.0 + p.gamma() * dt * s.x - p.delta() * dt};
}

Matrix2 mickens_jacobian(const ModelParams& p, double phi_val, State s) noexcept {
  const double f = phi_val;
  const double x = s.x;
  const double y = s.y;
  const double growth = 2.0 * p.alpha() * f + 1.0;                 // 2 alpha phi + 1
  const double x_den = p.beta() * f * y + p.alpha() * f + 1.0;     // beta phi y + alpha phi + 1
  const double damp = p.delta() * f + 1.0;                         // delta phi + 1
  const double y_den = growth * p.gamma() * f * x + x_den * damp;
  const double y_num = 2.0 * growth * p.gamma() * f * x * y + x_den * y;

  Matrix2 j;
  j.a = growth / x_den;
  j.b = -growth * p.beta() * f * x / (x_den * x_den);
  j.c = 2.0 * growth * p.gamma() * f * y / y_den -
        y_num * growth * p.gamma() * f / (y_den * y_den);
  j.d = -y_num * damp * p.beta() * f / (y_den * y_den) +
        (2.0 * growth * p.gamma() * f * x + 2.0 * p.beta() * f * y + p.alpha() * f + 1.0) / y_den;
  return j;
}

StabilityReport classify_continuous(const ModelParams& p, State point) {
  require_fixed_point(p, point);
  StabilityReport rep = make_report(SystemKind::Continuous, point, continuous_jacobian(p, point));
  if (rep.classification == Classification::LinearCenter) {
    rep.note = "linear center: stability of the nonlinear system is not determined by the linearization";
  }
  return rep;
}

StabilityReport classify_euler(const ModelParams& p, StepSize h, State point) {
  require_fixed_point(p, point);
  StabilityReport rep = make_report(SystemKind::Euler, point, euler_jacobian(p, h, point));
  if (is_origin(point)) {
    if (rep.classification == Classification::NonHyperbolic) {
      rep.note = "h is at the threshold 2/delta";
    }
  } else {
    rep.note = "eigenvalues are the complex pair 1 +/- i*sqrt(alpha*delta)*h with modulus "
               "sqrt(1 + alpha*delta*h^2)";
  }
  return rep;
}

StabilityReport classify_mickens(const ModelParams& p, double phi_val, State point) {
  if (!std::isfinite(phi_val) || phi_val <= 0.0) {
    throw InvalidArgument("phi value must be positive and finite");
  }
  require_fixed_point(p, point);
  StabilityReport rep = make_report(SystemKind::Mickens, point, mickens_jacobian(p, phi_val, point));
  if (rep.classification == Classification::LinearCenter) {
    rep.note = "eigenvalues on the unit circle: center of the linearized map only";
  }
  return rep;
}

}  // namespace lv
