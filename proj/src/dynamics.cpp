// SPDX-License-Identifier: Apache-2.0
#include "lv/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "lv/error.hpp"

namespace lv {

std::string_view to_string(RegionId r) noexcept {
  switch (r) {
    case RegionId::I: return "I";
    case RegionId::II: return "II";
    case RegionId::III: return "III";
    case RegionId::IV: return "IV";
    case RegionId::BoundaryX: return "BoundaryX";
    case RegionId::BoundaryY: return "BoundaryY";
    case RegionId::Exterior: return "Exterior";
  }
  return "unknown";
}

std::string_view to_string(Sign s) noexcept {
  switch (s) {
    case Sign::Negative: return "-";
    case Sign::Zero: return "0";
    case Sign::Positive: return "+";
  }
  return "?";
}

std::string_view to_string(Variable v) noexcept { return v == Variable::X ? "x" : "y"; }

std::string_view to_string(ExitCase c) noexcept {
  return c == ExitCase::RegionII_xCross ? "RegionII_xCross" : "RegionIII_yCross";
}

std::string_view to_string(ClosureVerdict v) noexcept {
  switch (v) {
    case ClosureVerdict::Closed: return "Closed";
    case ClosureVerdict::SpiralOut: return "SpiralOut";
    case ClosureVerdict::SpiralIn: return "SpiralIn";
    case ClosureVerdict::Inconclusive: return "Inconclusive";
  }
  return "unknown";
}

namespace {

constexpr double kBoundaryBand = 1e-12;

bool near_line(double v, double line) {
  return std::fabs(v - line) <= kBoundaryBand * std::max(1.0, std::fabs(line));
}

Sign sign_of(double v) {
  if (v > 0.0) return Sign::Positive;
  if (v < 0.0) return Sign::Negative;
  return Sign::Zero;
}

}  // namespace

RegionId classify_region(const ModelParams& p, State s) noexcept {
  if (!(s.x > 0.0) || !(s.y > 0.0)) return RegionId::Exterior;
  const double x_line = p.prey_equilibrium();
  const double y_line = p.predator_equilibrium();
  if (near_line(s.x, x_line)) return RegionId::BoundaryX;
  if (near_line(s.y, y_line)) return RegionId::BoundaryY;
  const bool right = s.x > x_line;
  const bool up = s.y > y_line;
  if (up) return right ? RegionId::I : RegionId::II;
  return right ? RegionId::IV : RegionId::III;
}

DirectionReport check_direction(const Dynamics& dyn, const ModelParams& p, State s) {
  const RegionId region = classify_region(p, s);
  if (region == RegionId::Exterior || region == RegionId::BoundaryX ||
      region == RegionId::BoundaryY) {
    throw InvalidArgument("direction check needs a state strictly inside one region");
  }

  double dx = 0.0;
  double dy = 0.0;
  // x coordinate whose side of x = delta/gamma decides the y direction.
  double x_for_y = s.x;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ContinuousFlow>) {
          const Rates r = vector_field(p, s);
          dx = r.dx;
          dy = r.dy;
        } else if constexpr (std::is_same_v<T, EulerMap>) {
          const State next = euler_step(p, d.h, s);
          dx = next.x - s.x;
          dy = next.y - s.y;
        } else {
          const State next = mickens_step(p, d.phi_val, s);
          dx = next.x - s.x;
          dy = next.y - s.y;
          x_for_y = next.x;
        }
      },
      dyn);

  DirectionReport rep;
  rep.region = region;
  rep.dx_sign = sign_of(dx);
  rep.dy_sign = sign_of(dy);

  const Sign want_dx = s.y > p.predator_equilibrium() ? Sign::Negative : Sign::Positive;
  const bool x_ok = rep.dx_sign == want_dx;
  bool y_ok = true;
  // An updated x landing on the dividing line leaves the y direction open.
  if (!near_line(x_for_y, p.prey_equilibrium())) {
    const Sign want_dy = x_for_y > p.prey_equilibrium() ? Sign::Positive : Sign::Negative;
    y_ok = rep.dy_sign == want_dy;
  }
  rep.conforms = x_ok && y_ok;
  return rep;
}

PositivityReport monitor_positivity(const Trajectory& traj) {
  PositivityReport rep;
  const auto& pts = traj.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const State s = pts[i].s;
    if (!(s.x < 0.0) && !(s.y < 0.0)) continue;
    const Variable var = s.x < 0.0 ? Variable::X : Variable::Y;
    rep.first_negative_step = pts[i].step;
    rep.negative_variable = var;
    if (i > 0) {
      rep.exit_case = var == Variable::X ? ExitCase::RegionII_xCross : ExitCase::RegionIII_yCross;
      rep.predecessor_region = classify_region(traj.params, pts[i - 1].s);
    }
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double v = var == Variable::X ? pts[j].s.x : pts[j].s.y;
      if (v > 0.0) {
        rep.recovered_positive_step = pts[j].step;
        break;
      }
    }
    break;
  }
  return rep;
}

ClosureMetrics measure_closure(const Trajectory& traj, const ModelParams& p) {
  if (traj.points.empty()) throw InvalidArgument("closure needs a non-empty trajectory");
  const State start = traj.points.front().s;
  if (!start.strictly_positive()) {
    throw InvalidArgument("closure needs a start strictly inside the positive quadrant");
  }
  const State centre = fixed_points(p).coexistence;
  if (std::hypot(start.x - centre.x, start.y - centre.y) <= 1e-6) {
    throw InvalidArgument("closure needs a start away from the coexistence point");
  }

  const double x_line = p.prey_equilibrium();
  const double y_line = p.predator_equilibrium();
  ClosureMetrics m;
  for (std::size_t i = 0; i + 1 < traj.points.size(); ++i) {
    const auto& a = traj.points[i];
    const auto& b = traj.points[i + 1];
    if (!(a.s.y < y_line && b.s.y >= y_line)) continue;
    const double w = (y_line - a.s.y) / (b.s.y - a.s.y);
    const double xc = a.s.x + w * (b.s.x - a.s.x);
    if (!(xc > x_line)) continue;
    m.crossings.push_back(xc);
    m.crossing_times.push_back(a.t + w * (b.t - a.t));
    m.first_integral_at_crossings.push_back(first_integral(p, {xc, y_line}));
  }

  if (m.crossings.size() < 3) return m;

  for (std::size_t k = 0; k + 1 < m.crossings.size(); ++k) {
    m.drift_per_period.push_back((m.crossings[k + 1] - m.crossings[k]) / m.crossings[k]);
  }
  const double v_min = first_integral(p, centre);
  const double v_first = m.first_integral_at_crossings.front();
  m.first_integral_drift = (m.first_integral_at_crossings.back() - v_first) / (v_first - v_min);

  const auto& d = m.drift_per_period;
  const auto all = [&](auto pred) { return std::all_of(d.begin(), d.end(), pred); };
  if (all([](double v) { return std::fabs(v) < kClosureDriftThreshold; })) {
    m.verdict = ClosureVerdict::Closed;
  } else if (all([](double v) { return v > kClosureDriftThreshold; })) {
    m.verdict = ClosureVerdict::SpiralOut;
  } else if (all([](double v) { return v < -kClosureDriftThreshold; })) {
    m.verdict = ClosureVerdict::SpiralIn;
  }
  return m;
}

namespace {

// Linear interpolation of a uniformly stepped trajectory at time t, which
// must lie inside its time range.
State sample_at(const Trajectory& tr, double t) {
  const auto& pts = tr.points;
  const double h = tr.h.value();
  auto k = static_cast<std::size_t>(std::floor(t / h));
  if (k >= pts.size() - 1) k = pts.size() - 2;
  // Guard against t / h rounding to the wrong side of a grid node.
  while (k > 0 && pts[k].t > t) --k;
  while (k + 2 < pts.size() && pts[k + 1].t < t) ++k;
  const auto& a = pts[k];
  const auto& b = pts[k + 1];
  if (b.t == t) return b.s;
  const double w = (t - a.t) / (b.t - a.t);
  return {a.s.x + w * (b.s.x - a.s.x), a.s.y + w * (b.s.y - a.s.y)};
}

}  // namespace

OverlayResult compare_overlay(const Trajectory& a, const Trajectory& b) {
  if (a.points.empty() || b.points.empty()) {
    throw InvalidArgument("overlay needs non-empty trajectories");
  }
  if (!(a.params == b.params)) throw InvalidArgument("overlay needs identical parameters");
  if (!(a.points.front().s == b.points.front().s)) {
    throw InvalidArgument("overlay needs identical starting states");
  }
  const double t_lo = std::max(a.points.front().t, b.points.front().t);
  const double t_hi = std::min(a.points.back().t, b.points.back().t);
  if (t_hi < t_lo) throw InvalidArgument("overlay time ranges are disjoint");

  const bool a_coarse = a.h.value() >= b.h.value();
  const Trajectory& coarse = a_coarse ? a : b;
  const Trajectory& fine = a_coarse ? b : a;

  std::vector<double> times;
  std::vector<State> va;
  std::vector<State> vb;
  for (const auto& pt : coarse.points) {
    if (pt.t < t_lo || pt.t > t_hi) continue;
    const State other = fine.points.size() == 1 ? fine.points.front().s : sample_at(fine, pt.t);
    times.push_back(pt.t);
    va.push_back(a_coarse ? pt.s : other);
    vb.push_back(a_coarse ? other : pt.s);
  }

  const auto range = [&](auto get) {
    double lo = get(vb.front());
    double hi = lo;
    for (const State& s : vb) {
      lo = std::min(lo, get(s));
      hi = std::max(hi, get(s));
    }
    return hi > lo ? hi - lo : 1.0;
  };
  const double scale_x = range([](State s) { return s.x; });
  const double scale_y = range([](State s) { return s.y; });

  OverlayResult r;
  r.times = std::move(times);
  r.rel_error_x.reserve(va.size());
  r.rel_error_y.reserve(va.size());
  for (std::size_t i = 0; i < va.size(); ++i) {
    const double ex = std::fabs(va[i].x - vb[i].x) / scale_x;
    const double ey = std::fabs(va[i].y - vb[i].y) / scale_y;
    r.rel_error_x.push_back(ex);
    r.rel_error_y.push_back(ey);
    r.sup_rel_error_x = std::max(r.sup_rel_error_x, ex);
    r.sup_rel_error_y = std::max(r.sup_rel_error_y, ey);
  }
  r.sup_rel_error = std::max(r.sup_rel_error_x, r.sup_rel_error_y);
  return r;
}

}  // namespace lv
