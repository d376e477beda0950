// SPDX-License-Identifier: Apache-2.0
// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lv/discretizers.hpp"
#include "lv/dynamics.hpp"
#include "lv/model.hpp"
#include "lv/stability.hpp"
#include "test_support.hpp"

using namespace lv;

namespace {

constexpr double kStepResidual = 1e-13;
constexpr double kThresholdOffset = 1e-3;
constexpr double kModulusTol = 1e-12;
constexpr double kUnitModulusTol = 1e-9;
constexpr double kClosureDrift = 0.005;
constexpr double kGrowthFactor = 1.001;
constexpr double kOverlayTol = 0.05;
constexpr double kOrderLo = 0.8;
constexpr double kOrderHi = 1.2;
constexpr double kPhiOrderGap = 0.1;
constexpr double kFdTol = 1e-6;
constexpr double kEigResidual = 1e-10;
constexpr double kFirstIntegralDrift = 1e-6;

const ModelParams kFig{1.0, 0.1, 0.075, 0.75};

struct Outcome {
  bool pass = true;
  std::string detail;
};

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double modulus_min(const Eigenpair& e) { return std::min(std::abs(e.first), std::abs(e.second)); }
double modulus_max(const Eigenpair& e) { return std::max(std::abs(e.first), std::abs(e.second)); }

Outcome fixed_points_shared() {
  lvtest::Sampler rnd(101);
  double worst = 0;
  bool all_fixed = true;
  for (int i = 0; i < 100; ++i) {
    const auto p = rnd.params();
    const auto fp = fixed_points(p);
    all_fixed = all_fixed && fp.origin == State{0, 0} && fp.coexistence.x == p.delta() / p.gamma() &&
                fp.coexistence.y == p.alpha() / p.beta();
    const double h = rnd.log_uniform(1e-4, 1.0);
    const double phi = PhiFunction::identity()(StepSize(h));
    for (const State s : {fp.origin, fp.coexistence}) {
      const Rates r = vector_field(p, s);
      const double scale = std::max({1.0, std::fabs(s.x), std::fabs(s.y)});
      worst = std::max({worst, std::fabs(r.dx) / scale, std::fabs(r.dy) / scale});
      for (const State n : {euler_step(p, StepSize(h), s), mickens_step(p, phi, s)}) {
        worst = std::max({worst, std::fabs(n.x - s.x) / scale, std::fabs(n.y - s.y) / scale});
      }
    }
  }
  return {all_fixed && worst < kStepResidual, fmt("max residual %.3g", worst)};
}

Outcome euler_origin_threshold() {
  const auto t0 = std::chrono::steady_clock::now();
  lvtest::Sampler rnd(102);
  int wrong = 0;
  for (int i = 0; i < 200; ++i) {
    const auto p = rnd.params();
    const double hc = 2.0 / p.delta();
    wrong += classify_euler(p, StepSize(hc - kThresholdOffset), {0, 0}).classification != Classification::SaddlePoint;
    wrong += classify_euler(p, StepSize(hc + kThresholdOffset), {0, 0}).classification != Classification::Source;
  }
  const double fig_hc = 2.0 / kFig.delta();
  const bool exact = fig_hc == 8.0 / 3.0 &&
                     classify_euler(kFig, StepSize(8.0 / 3.0), {0, 0}).classification == Classification::NonHyperbolic;
  const double secs = elapsed(t0);
  return {wrong == 0 && exact && secs < 1.0,
          fmt("%.0f misclassified, threshold 8/3 exact: %.0f, %.3f s", wrong, exact, secs)};
}

Outcome euler_coexistence_modulus() {
  lvtest::Sampler rnd(103);
  double worst = 0;
  bool above = true;
  for (int i = 0; i < 200; ++i) {
    const auto p = rnd.params();
    const double h = rnd.log_uniform(1e-6, 10);
    const auto rep = classify_euler(p, StepSize(h), fixed_points(p).coexistence);
    const double want = std::sqrt(1 + p.alpha() * p.delta() * h * h);
    worst = std::max({worst, std::fabs(std::abs(rep.eigen.first) - want), std::fabs(std::abs(rep.eigen.second) - want)});
    above = above && modulus_min(rep.eigen) > 1.0;
  }
  return {worst < kModulusTol && above, fmt("max |modulus - sqrt(1+ad h^2)| = %.3g", worst)};
}

Outcome mickens_moduli() {
  lvtest::Sampler rnd(104);
  double worst = 0;
  bool saddle = true;
  for (int i = 0; i < 200; ++i) {
    const auto p = rnd.params();
    const double phi = rnd.log_uniform(1e-4, 10);
    const auto o = classify_mickens(p, phi, {0, 0});
    saddle = saddle && modulus_min(o.eigen) < 1.0 && modulus_max(o.eigen) > 1.0;
    const auto c = classify_mickens(p, phi, fixed_points(p).coexistence);
    worst = std::max({worst, std::fabs(std::abs(c.eigen.first) - 1), std::fabs(std::abs(c.eigen.second) - 1)});
  }
  return {saddle && worst < kUnitModulusTol, fmt("origin saddle: %.0f, max ||lambda| - 1| at p2 = %.3g", saddle, worst)};
}

Outcome euler_negative_prey() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto tr = simulate(SchemeId::Euler, kFig, PhiFunction::identity(), StepSize(0.03), {5, 5}, 10000);
  const auto rep = monitor_positivity(tr);
  const double secs = elapsed(t0);
  const bool neg = rep.first_negative_step && *rep.negative_variable == Variable::X;
  const bool back = rep.recovered_positive_step.has_value();
  return {neg && back && secs < 1.0,
          fmt("first negative x at step %.0f, positive again at %.0f, %.3f s",
              neg ? static_cast<double>(*rep.first_negative_step) : -1,
              back ? static_cast<double>(*rep.recovered_positive_step) : -1, secs)};
}

Outcome euler_spiral() {
  const auto tr = simulate(SchemeId::Euler, kFig, PhiFunction::identity(), StepSize(0.02), {5, 5}, 5000);
  const auto m = measure_closure(tr, kFig);
  std::size_t run = m.crossings.empty() ? 0 : 1;
  std::size_t best = run;
  for (std::size_t k = 1; k < m.crossings.size(); ++k) {
    run = m.crossings[k] > kGrowthFactor * m.crossings[k - 1] ? run + 1 : 1;
    best = std::max(best, run);
  }
  return {m.verdict == ClosureVerdict::SpiralOut && best >= 5,
          "verdict " + std::string(to_string(m.verdict)) + fmt(", %.0f growing crossings", static_cast<double>(best))};
}

Outcome mickens_closed_positive_overlay() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto phi = PhiFunction::identity();
  const auto longrun = simulate(SchemeId::Mickens, kFig, phi, StepSize(0.01), {5, 5}, 100000);
  const auto m = measure_closure(longrun, kFig);
  double max_drift = 0;
  for (double d : m.drift_per_period) max_drift = std::max(max_drift, std::fabs(d));
  const bool closed = m.verdict == ClosureVerdict::Closed;
  const bool positive = longrun.points.size() == 100001 &&
                        std::all_of(longrun.points.begin(), longrun.points.end(),
                                    [](const TrajectoryPoint& p) { return p.s.x > 0 && p.s.y > 0; });
  const auto a = simulate(SchemeId::Mickens, kFig, phi, StepSize(0.01), {5, 5}, 2000);
  const auto ref = simulate(SchemeId::ReferenceRK4, kFig, phi, StepSize(1e-4), {5, 5}, 200000);
  const auto ov = compare_overlay(a, ref);
  const double secs = elapsed(t0);
  return {closed && max_drift < kClosureDrift && positive && ov.sup_rel_error < kOverlayTol && secs < 10.0,
          fmt("closed: %.0f (max drift %.3g), positive: %.0f, overlay sup error %.4f, ", closed, max_drift, positive,
              ov.sup_rel_error) +
              fmt("%.2f s", secs)};
}

// Largest Euclidean distance to the reference over the coarse grid.
double global_error(SchemeId scheme, const PhiFunction& phi, double h) {
  const double t_end = 5.0;
  const auto n = static_cast<std::size_t>(std::llround(t_end / h));
  const auto tr = simulate(scheme, kFig, phi, StepSize(h), {5, 5}, n);
  const auto ref = simulate(SchemeId::ReferenceRK4, kFig, phi, StepSize(h / 100), {5, 5}, n * 100);
  double e = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    const State r = ref.points[i * 100].s;
    e = std::max(e, std::hypot(tr.points[i].s.x - r.x, tr.points[i].s.y - r.y));
  }
  return e;
}

Outcome convergence_order() {
  const std::vector<double> hs{0.02, 0.01, 0.005};
  struct Case {
    const char* name;
    SchemeId scheme;
    PhiFunction phi;
  };
  const std::vector<Case> cases{{"euler", SchemeId::Euler, PhiFunction::identity()},
                                {"mickens", SchemeId::Mickens, PhiFunction::identity()},
                                {"mickens-expm1", SchemeId::Mickens, PhiFunction::one_minus_exp()}};
  bool ok = true;
  std::string detail;
  std::vector<std::vector<double>> orders;
  for (const auto& c : cases) {
    std::vector<double> e;
    for (double h : hs) e.push_back(global_error(c.scheme, c.phi, h));
    std::vector<double> ord;
    for (std::size_t k = 0; k + 1 < e.size(); ++k) {
      ord.push_back(std::log2(e[k] / e[k + 1]));
      ok = ok && ord.back() >= kOrderLo && ord.back() <= kOrderHi;
    }
    detail += std::string(c.name) + fmt(" %.3f/%.3f ", ord[0], ord[1]);
    orders.push_back(ord);
  }
  for (std::size_t k = 0; k < orders[1].size(); ++k) ok = ok && std::fabs(orders[1][k] - orders[2][k]) < kPhiOrderGap;
  return {ok, detail};
}

Outcome direction_conformity() {
  lvtest::Sampler rnd(109);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto p = rnd.params();
    const State s = rnd.interior(p, 1e-6);
    violations += !check_direction(ContinuousFlow{}, p, s).conforms;
    violations += !check_direction(EulerMap{StepSize(rnd.log_uniform(1e-6, 100))}, p, s).conforms;
    violations += !check_direction(MickensMap{rnd.log_uniform(1e-6, 100)}, p, s).conforms;
  }
  return {violations == 0, fmt("%.0f violations over 3000 checks", violations)};
}

Outcome oracle_consistency() {
  lvtest::Sampler rnd(110);
  double fd = 0;
  for (int i = 0; i < 200; ++i) {
    const auto p = rnd.params();
    const State s = rnd.interior(p);
    const double h = rnd.log_uniform(1e-3, 1);
    const double phi = rnd.log_uniform(1e-3, 1);
    const auto fe = lvtest::fd_jacobian([&](State q) { return euler_step(p, StepSize(h), q); }, s);
    const auto fm = lvtest::fd_jacobian([&](State q) { return mickens_step(p, phi, q); }, s);
    fd = std::max({fd, lvtest::max_abs_diff(fe, euler_jacobian(p, StepSize(h), s)),
                   lvtest::max_abs_diff(fm, mickens_jacobian(p, phi, s))});
  }

  double eig = 0;
  for (int i = 0; i < 10000; ++i) {
    const Matrix2 m{rnd.uniform(-10, 10), rnd.uniform(-10, 10), rnd.uniform(-10, 10), rnd.uniform(-10, 10)};
    const auto e = eig2(m);
    for (const auto l : {e.first, e.second}) {
      const double res = std::abs(l * l - m.trace() * l + m.det()) / (1 + std::fabs(m.trace()) + std::fabs(m.det()));
      eig = std::max(eig, res);
    }
  }

  const auto tr = simulate(SchemeId::ReferenceRK4, kFig, PhiFunction::identity(), StepSize(1e-3), {5, 5}, 20000);
  const double v0 = first_integral(kFig, tr.points.front().s);
  double drift = 0;
  for (const auto& pt : tr.points) drift = std::max(drift, std::fabs(first_integral(kFig, pt.s) - v0) / std::fabs(v0));

  return {fd < kFdTol && eig < kEigResidual && drift < kFirstIntegralDrift,
          fmt("jacobian fd %.3g, eig2 residual %.3g, V drift %.3g", fd, eig, drift)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"fixed points shared by flow and maps", fixed_points_shared},
      {"euler origin threshold h = 2/delta", euler_origin_threshold},
      {"euler coexistence modulus", euler_coexistence_modulus},
      {"nonstandard scheme moduli", mickens_moduli},
      {"euler h = 0.03 negative prey and recovery", euler_negative_prey},
      {"euler h = 0.02 spirals out", euler_spiral},
      {"nonstandard h = 0.01 closed, positive, overlays rk4", mickens_closed_positive_overlay},
      {"first-order convergence", convergence_order},
      {"direction sign table", direction_conformity},
      {"oracle consistency", oracle_consistency},
  };
  int failed = 0;
  int idx = 1;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", idx++, name, o.detail.c_str());
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
