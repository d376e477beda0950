// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <string>
#include <string_view>

#include "lv/discretizers.hpp"
#include "lv/model.hpp"

namespace lv {

struct Eigenpair {
  std::complex<double> first;
  std::complex<double> second;

  bool real() const noexcept { return first.imag() == 0.0 && second.imag() == 0.0; }
};

enum class Classification {
  SaddlePoint,
  Source,
  Sink,
  UnstableFocus,
  StableFocus,
  LinearCenter,
  NonHyperbolic,
};

enum class SystemKind { Continuous, Euler, Mickens };

std::string_view to_string(Classification c) noexcept;
std::string_view to_string(SystemKind k) noexcept;

struct StabilityReport {
  SystemKind kind = SystemKind::Continuous;
  State point;
  Matrix2 jacobian;
  Eigenpair eigen;
  Classification classification = Classification::NonHyperbolic;
  /// Free-text caveat, e.g. that a linear center says nothing about the
  /// nonlinear system. Empty when there is nothing to add.
  std::string note;
};

/// Moduli within this distance of 1 (discrete) or real parts within this
/// distance of 0 (continuous) are treated as on the threshold.
inline constexpr double kThresholdBand = 1e-9;

/// Roots of lambda^2 - tr lambda + det. A negative discriminant yields a
/// conjugate pair with first.imag() > 0.
Eigenpair eig2(const Matrix2& m) noexcept;

Classification classify_continuous_eigen(const Eigenpair& e) noexcept;
Classification classify_discrete_eigen(const Eigenpair& e) noexcept;

Matrix2 euler_jacobian(const ModelParams& p, StepSize h, State s) noexcept;
/// Jacobian of the nonstandard map at (x, y) for denominator value phi_val.
Matrix2 mickens_jacobian(const ModelParams& p, double phi_val, State s) noexcept;

/// The classify_* functions throw InvalidArgument unless point is one of
/// fixed_points(p) (vector field residual at most 1e-9).
StabilityReport classify_continuous(const ModelParams& p, State point);
StabilityReport classify_euler(const ModelParams& p, StepSize h, State point);
StabilityReport classify_mickens(const ModelParams& p, double phi_val, State point);

}  // namespace lv
