// SPDX-License-Identifier: Apache-2.0
#include "lv/lv.h"

#include <cmath>
#include <cstdio>
#include <memory>
#include <new>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lv/discretizers.hpp"
#include "lv/dynamics.hpp"
#include "lv/error.hpp"
#include "lv/model.hpp"
#include "lv/reporting.hpp"
#include "lv/stability.hpp"

struct lv_trajectory {
  lv::Trajectory traj;
};

struct lv_closure {
  lv::ClosureMetrics metrics;
};

struct lv_scenario {
  lv::Scenario sc;
};

struct lv_run {
  lv::RunReport report;
  std::string json;
  std::string svg;
  std::vector<std::string> csv;
  std::string summary;
};

namespace {

thread_local std::string g_last_error;

lv_status fail(lv_status st, const char* what) {
  g_last_error = what;
  return st;
}

template <typename Fn>
lv_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const lv::InvalidArgument& e) {
    return fail(LV_INVALID_ARGUMENT, e.what());
  } catch (const lv::DomainError& e) {
    return fail(LV_DOMAIN_ERROR, e.what());
  } catch (const lv::IoError& e) {
    return fail(LV_IO_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LV_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(LV_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(LV_INTERNAL_ERROR, "unknown error");
  }
}

#define LV_REQUIRE(ptr)                                                  \
  do {                                                                   \
    if ((ptr) == nullptr) throw lv::InvalidArgument(#ptr " is null");    \
  } while (0)

lv::ModelParams to_params(const lv_params* p) {
  LV_REQUIRE(p);
  return {p->alpha, p->beta, p->gamma, p->delta};
}

lv::State to_state(lv_state s) { return {s.x, s.y}; }
lv_state from_state(lv::State s) { return {s.x, s.y}; }
lv_matrix2 from_matrix(const lv::Matrix2& m) { return {m.a, m.b, m.c, m.d}; }

lv::SchemeId to_scheme(int s) {
  switch (s) {
    case LV_SCHEME_EULER: return lv::SchemeId::Euler;
    case LV_SCHEME_MICKENS: return lv::SchemeId::Mickens;
    case LV_SCHEME_RK4: return lv::SchemeId::ReferenceRK4;
  }
  throw lv::InvalidArgument("unknown scheme value");
}

lv::PhiFunction to_phi(lv_phi phi) {
  switch (phi) {
    case LV_PHI_IDENTITY: return lv::PhiFunction::identity();
    case LV_PHI_EXPM1: return lv::PhiFunction::one_minus_exp();
  }
  throw lv::InvalidArgument("unknown phi value");
}

const char* phi_name(lv_phi phi) { return phi == LV_PHI_EXPM1 ? "expm1" : "identity"; }

lv::Dynamics to_dynamics(lv_system system, double h_or_phi) {
  switch (system) {
    case LV_SYSTEM_CONTINUOUS: return lv::ContinuousFlow{};
    case LV_SYSTEM_EULER: return lv::EulerMap{lv::StepSize(h_or_phi)};
    case LV_SYSTEM_MICKENS:
      if (!(h_or_phi > 0.0) || !std::isfinite(h_or_phi)) {
        throw lv::InvalidArgument("phi value must be positive and finite");
      }
      return lv::MickensMap{h_or_phi};
  }
  throw lv::InvalidArgument("unknown system value");
}

int sign_int(lv::Sign s) {
  return s == lv::Sign::Positive ? 1 : s == lv::Sign::Negative ? -1 : 0;
}

std::string run_summary(const lv::RunReport& r) {
  std::ostringstream os;
  os << "scenario " << r.scenario.name << " (" << lv::to_string(r.scenario.scheme)
     << ", h=" << lv::format_number(r.scenario.h.value()) << ", " << r.scenario.n_steps
     << " steps)\n";
  if (r.stability) {
    for (const auto& s : *r.stability) {
      os << "  stability " << lv::to_string(s.kind) << " (" << lv::format_number(s.point.x) << ", "
         << lv::format_number(s.point.y) << "): " << lv::to_string(s.classification) << "\n";
    }
  }
  for (std::size_t k = 0; k < r.trajectories.size(); ++k) {
    const auto& t = r.trajectories[k];
    os << "  trajectory " << k + 1 << " from (" << lv::format_number(t.start.x) << ", "
       << lv::format_number(t.start.y) << "): " << t.points << " points";
    if (t.divergence_step) os << ", diverged at step " << *t.divergence_step;
    os << "\n";
    if (t.direction) {
      os << "    direction: " << t.direction->conforming << "/" << t.direction->checked
         << " conforming\n";
    }
    if (t.positivity) {
      if (t.positivity->empty()) {
        os << "    positivity: all states non-negative\n";
      } else {
        os << "    positivity: " << lv::to_string(*t.positivity->negative_variable)
           << " negative at step " << *t.positivity->first_negative_step;
        if (t.positivity->recovered_positive_step) {
          os << ", positive again at step " << *t.positivity->recovered_positive_step;
        }
        os << "\n";
      }
    }
    if (t.closure) {
      os << "    closure: " << lv::to_string(t.closure->verdict) << " over "
         << t.closure->crossings.size() << " crossings\n";
    }
  }
  if (r.overlay) {
    os << "  overlay: sup relative error " << lv::format_number(r.overlay->sup_rel_error) << "\n";
  }
  os << "  report: " << r.json_file.string() << "\n";
  return os.str();
}

}  // namespace

extern "C" {

const char* lv_version(void) { return lv::kToolVersion.data(); }

const char* lv_last_error(void) { return g_last_error.c_str(); }

const char* lv_status_string(lv_status status) {
  switch (status) {
    case LV_OK: return "ok";
    case LV_INVALID_ARGUMENT: return "invalid argument";
    case LV_DOMAIN_ERROR: return "domain error";
    case LV_IO_ERROR: return "i/o error";
    case LV_DIVERGED: return "diverged";
    case LV_NOT_FOUND: return "not found";
    case LV_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

int lv_exit_code(lv_status status) {
  switch (status) {
    case LV_OK: return LV_EXIT_OK;
    case LV_INVALID_ARGUMENT:
    case LV_DOMAIN_ERROR:
    case LV_NOT_FOUND: return LV_EXIT_INVALID_CONFIG;
    case LV_DIVERGED: return LV_EXIT_DIVERGED;
    case LV_IO_ERROR: return LV_EXIT_IO_FAILURE;
    case LV_INTERNAL_ERROR: break;
  }
  return 1;
}

lv_status lv_params_check(const lv_params* p) {
  return guarded([&] {
    to_params(p);
    return LV_OK;
  });
}

lv_status lv_vector_field(const lv_params* p, lv_state s, lv_state* out_rates) {
  return guarded([&] {
    LV_REQUIRE(out_rates);
    const lv::Rates r = lv::vector_field(to_params(p), to_state(s));
    *out_rates = {r.dx, r.dy};
    return LV_OK;
  });
}

lv_status lv_continuous_jacobian(const lv_params* p, lv_state s, lv_matrix2* out) {
  return guarded([&] {
    LV_REQUIRE(out);
    *out = from_matrix(lv::continuous_jacobian(to_params(p), to_state(s)));
    return LV_OK;
  });
}

lv_status lv_fixed_points(const lv_params* p, lv_state* origin, lv_state* coexistence) {
  return guarded([&] {
    LV_REQUIRE(origin);
    LV_REQUIRE(coexistence);
    const lv::FixedPointPair fp = lv::fixed_points(to_params(p));
    *origin = from_state(fp.origin);
    *coexistence = from_state(fp.coexistence);
    return LV_OK;
  });
}

lv_status lv_first_integral(const lv_params* p, lv_state s, double* out) {
  return guarded([&] {
    LV_REQUIRE(out);
    *out = lv::first_integral(to_params(p), to_state(s));
    return LV_OK;
  });
}

lv_status lv_step(lv_scheme scheme, const lv_params* p, lv_phi phi, double h, lv_state s,
                  lv_state* out) {
  return guarded([&] {
    LV_REQUIRE(out);
    const lv::ModelParams mp = to_params(p);
    const lv::StepSize step(h);
    lv::State next;
    switch (to_scheme(scheme)) {
      case lv::SchemeId::Euler: next = lv::euler_step(mp, step, to_state(s)); break;
      case lv::SchemeId::Mickens: next = lv::mickens_step(mp, to_phi(phi), step, to_state(s)); break;
      case lv::SchemeId::ReferenceRK4: next = lv::rk4_step(mp, step, to_state(s)); break;
    }
    *out = from_state(next);
    return LV_OK;
  });
}

lv_status lv_simulate(lv_scheme scheme, const lv_params* p, lv_phi phi, double h, lv_state s0,
                      size_t n_steps, lv_trajectory** out) {
  return guarded([&] {
    LV_REQUIRE(out);
    *out = nullptr;
    auto traj = lv::simulate(to_scheme(scheme), to_params(p), to_phi(phi), lv::StepSize(h),
                             to_state(s0), n_steps);
    *out = new lv_trajectory{std::move(traj)};
    return LV_OK;
  });
}

void lv_trajectory_free(lv_trajectory* traj) { delete traj; }

size_t lv_trajectory_size(const lv_trajectory* traj) {
  return traj ? traj->traj.points.size() : 0;
}

lv_status lv_trajectory_point(const lv_trajectory* traj, size_t index, size_t* step, double* t,
                              lv_state* s) {
  return guarded([&] {
    LV_REQUIRE(traj);
    if (index >= traj->traj.points.size()) throw lv::InvalidArgument("point index out of range");
    const auto& pt = traj->traj.points[index];
    if (step) *step = pt.step;
    if (t) *t = pt.t;
    if (s) *s = from_state(pt.s);
    return LV_OK;
  });
}

int lv_trajectory_divergence(const lv_trajectory* traj, size_t* step) {
  if (!traj || !traj->traj.divergence_step) return 0;
  if (step) *step = *traj->traj.divergence_step;
  return 1;
}

lv_status lv_eig2(lv_matrix2 m, lv_complex out[2]) {
  return guarded([&] {
    LV_REQUIRE(out);
    const lv::Matrix2 mm{m.a, m.b, m.c, m.d};
    if (!mm.finite()) throw lv::InvalidArgument("matrix entries must be finite");
    const lv::Eigenpair e = lv::eig2(mm);
    out[0] = {e.first.real(), e.first.imag()};
    out[1] = {e.second.real(), e.second.imag()};
    return LV_OK;
  });
}

lv_status lv_jacobian(lv_system system, const lv_params* p, double h_or_phi, lv_state s,
                      lv_matrix2* out) {
  return guarded([&] {
    LV_REQUIRE(out);
    const lv::ModelParams mp = to_params(p);
    const lv::Dynamics dyn = to_dynamics(system, h_or_phi);
    if (const auto* e = std::get_if<lv::EulerMap>(&dyn)) {
      *out = from_matrix(lv::euler_jacobian(mp, e->h, to_state(s)));
    } else if (const auto* m = std::get_if<lv::MickensMap>(&dyn)) {
      *out = from_matrix(lv::mickens_jacobian(mp, m->phi_val, to_state(s)));
    } else {
      *out = from_matrix(lv::continuous_jacobian(mp, to_state(s)));
    }
    return LV_OK;
  });
}

lv_status lv_classify(lv_system system, const lv_params* p, double h_or_phi, lv_state point,
                      lv_stability_report* out) {
  return guarded([&] {
    LV_REQUIRE(out);
    const lv::ModelParams mp = to_params(p);
    const lv::Dynamics dyn = to_dynamics(system, h_or_phi);
    lv::StabilityReport r;
    if (const auto* e = std::get_if<lv::EulerMap>(&dyn)) {
      r = lv::classify_euler(mp, e->h, to_state(point));
    } else if (const auto* m = std::get_if<lv::MickensMap>(&dyn)) {
      r = lv::classify_mickens(mp, m->phi_val, to_state(point));
    } else {
      r = lv::classify_continuous(mp, to_state(point));
    }
    out->system = system;
    out->point = from_state(r.point);
    out->jacobian = from_matrix(r.jacobian);
    out->eigen[0] = {r.eigen.first.real(), r.eigen.first.imag()};
    out->eigen[1] = {r.eigen.second.real(), r.eigen.second.imag()};
    out->classification = static_cast<lv_classification>(r.classification);
    return LV_OK;
  });
}

lv_status lv_classify_region(const lv_params* p, lv_state s, lv_region* out) {
  return guarded([&] {
    LV_REQUIRE(out);
    *out = static_cast<lv_region>(lv::classify_region(to_params(p), to_state(s)));
    return LV_OK;
  });
}

lv_status lv_check_direction(lv_system system, const lv_params* p, double h_or_phi, lv_state s,
                             lv_direction_report* out) {
  return guarded([&] {
    LV_REQUIRE(out);
    const lv::DirectionReport r =
        lv::check_direction(to_dynamics(system, h_or_phi), to_params(p), to_state(s));
    out->region = static_cast<lv_region>(r.region);
    out->dx_sign = sign_int(r.dx_sign);
    out->dy_sign = sign_int(r.dy_sign);
    out->conforms = r.conforms ? 1 : 0;
    return LV_OK;
  });
}

lv_status lv_monitor_positivity(const lv_trajectory* traj, lv_positivity_report* out) {
  return guarded([&] {
    LV_REQUIRE(traj);
    LV_REQUIRE(out);
    const lv::PositivityReport r = lv::monitor_positivity(traj->traj);
    *out = {};
    out->has_negative = r.first_negative_step.has_value();
    out->first_negative_step = r.first_negative_step.value_or(0);
    out->negative_variable = r.negative_variable == lv::Variable::Y ? 1 : 0;
    out->has_recovery = r.recovered_positive_step.has_value();
    out->recovered_positive_step = r.recovered_positive_step.value_or(0);
    out->exit_case = r.exit_case ? static_cast<int>(*r.exit_case) : -1;
    out->predecessor_region = r.predecessor_region ? static_cast<int>(*r.predecessor_region) : -1;
    return LV_OK;
  });
}

lv_status lv_measure_closure(const lv_trajectory* traj, lv_closure** out) {
  return guarded([&] {
    LV_REQUIRE(traj);
    LV_REQUIRE(out);
    *out = nullptr;
    *out = new lv_closure{lv::measure_closure(traj->traj, traj->traj.params)};
    return LV_OK;
  });
}

void lv_closure_free(lv_closure* c) { delete c; }

lv_verdict lv_closure_verdict(const lv_closure* c) {
  return c ? static_cast<lv_verdict>(c->metrics.verdict) : LV_VERDICT_INCONCLUSIVE;
}

size_t lv_closure_crossing_count(const lv_closure* c) {
  return c ? c->metrics.crossings.size() : 0;
}

double lv_closure_crossing(const lv_closure* c, size_t index) {
  if (!c || index >= c->metrics.crossings.size()) return NAN;
  return c->metrics.crossings[index];
}

size_t lv_closure_drift_count(const lv_closure* c) {
  return c ? c->metrics.drift_per_period.size() : 0;
}

double lv_closure_drift(const lv_closure* c, size_t index) {
  if (!c || index >= c->metrics.drift_per_period.size()) return NAN;
  return c->metrics.drift_per_period[index];
}

lv_status lv_compare_overlay(const lv_trajectory* a, const lv_trajectory* b,
                             lv_overlay_result* out) {
  return guarded([&] {
    LV_REQUIRE(a);
    LV_REQUIRE(b);
    LV_REQUIRE(out);
    const lv::OverlayResult r = lv::compare_overlay(a->traj, b->traj);
    *out = {r.sup_rel_error, r.sup_rel_error_x, r.sup_rel_error_y, r.times.size()};
    return LV_OK;
  });
}

lv_status lv_write_csv(const lv_trajectory* traj, const char* path) {
  return guarded([&] {
    LV_REQUIRE(traj);
    LV_REQUIRE(path);
    lv::emit_csv(traj->traj, path);
    return LV_OK;
  });
}

lv_status lv_write_phase_svg(const lv_trajectory* const* trajs, size_t count, const char* path) {
  return guarded([&] {
    LV_REQUIRE(path);
    if (count > 0) LV_REQUIRE(trajs);
    std::vector<lv::Trajectory> all;
    for (size_t i = 0; i < count; ++i) {
      LV_REQUIRE(trajs[i]);
      all.push_back(trajs[i]->traj);
    }
    if (all.empty()) throw lv::InvalidArgument("phase portrait needs at least one trajectory");
    lv::emit_phase_svg(all, all.front().params, path);
    return LV_OK;
  });
}

size_t lv_preset_count(void) { return lv::presets().size(); }

const char* lv_preset_name(size_t index) {
  const auto& all = lv::presets();
  return index < all.size() ? all[index].name.c_str() : nullptr;
}

lv_status lv_scenario_create(const lv_scenario_config* cfg, lv_scenario** out) {
  return guarded([&] {
    LV_REQUIRE(cfg);
    LV_REQUIRE(out);
    *out = nullptr;
    if (cfg->name == nullptr) throw lv::InvalidArgument("scenario name must not be empty");
    std::set<lv::Analysis> analyses;
    if (cfg->analyses & LV_ANALYSIS_STABILITY) analyses.insert(lv::Analysis::Stability);
    if (cfg->analyses & LV_ANALYSIS_DIRECTION) analyses.insert(lv::Analysis::Direction);
    if (cfg->analyses & LV_ANALYSIS_POSITIVITY) analyses.insert(lv::Analysis::Positivity);
    if (cfg->analyses & LV_ANALYSIS_CLOSURE) analyses.insert(lv::Analysis::Closure);
    if (cfg->analyses & LV_ANALYSIS_OVERLAY) analyses.insert(lv::Analysis::Overlay);
    if (cfg->analyses & ~0x1Fu) throw lv::InvalidArgument("unknown analysis bits");
    std::optional<lv::SchemeId> ref;
    if (cfg->overlay_reference >= 0) ref = to_scheme(cfg->overlay_reference);
    if (cfg->phi != LV_PHI_IDENTITY && cfg->phi != LV_PHI_EXPM1) {
      throw lv::InvalidArgument("unknown phi value");
    }
    lv::Scenario sc{cfg->name,
                    to_params(&cfg->params),
                    to_scheme(cfg->scheme),
                    lv::StepSize(cfg->h),
                    phi_name(cfg->phi),
                    to_state(cfg->start),
                    {},
                    cfg->n_steps,
                    std::move(analyses),
                    ref,
                    cfg->overlay_refinement == 0 ? 100 : cfg->overlay_refinement};
    lv::validate(sc);
    *out = new lv_scenario{std::move(sc)};
    return LV_OK;
  });
}

lv_status lv_scenario_from_preset(const char* name, lv_scenario** out) {
  return guarded([&] {
    LV_REQUIRE(name);
    LV_REQUIRE(out);
    *out = nullptr;
    auto sc = lv::find_preset(name);
    if (!sc) return fail(LV_NOT_FOUND, (std::string("no preset named '") + name + "'").c_str());
    *out = new lv_scenario{std::move(*sc)};
    return LV_OK;
  });
}

void lv_scenario_free(lv_scenario* sc) { delete sc; }

const char* lv_scenario_name(const lv_scenario* sc) { return sc ? sc->sc.name.c_str() : nullptr; }

lv_status lv_run_scenario(const lv_scenario* sc, const char* out_dir, lv_run** out) {
  return guarded([&] {
    LV_REQUIRE(sc);
    LV_REQUIRE(out_dir);
    LV_REQUIRE(out);
    *out = nullptr;
    auto run = std::make_unique<lv_run>(lv_run{lv::run_scenario(sc->sc, out_dir), {}, {}, {}, {}});
    run->json = run->report.json_file.string();
    run->svg = run->report.svg_file.string();
    for (const auto& t : run->report.trajectories) run->csv.push_back(t.csv_file.string());
    run->summary = run_summary(run->report);
    const bool diverged = run->report.diverged();
    *out = run.release();
    if (diverged) return fail(LV_DIVERGED, "trajectory diverged; outputs written with .partial suffix");
    return LV_OK;
  });
}

void lv_run_free(lv_run* run) { delete run; }

const char* lv_run_json_path(const lv_run* run) { return run ? run->json.c_str() : nullptr; }

const char* lv_run_svg_path(const lv_run* run) { return run ? run->svg.c_str() : nullptr; }

size_t lv_run_csv_count(const lv_run* run) { return run ? run->csv.size() : 0; }

const char* lv_run_csv_path(const lv_run* run, size_t index) {
  return run && index < run->csv.size() ? run->csv[index].c_str() : nullptr;
}

const char* lv_run_summary(const lv_run* run) { return run ? run->summary.c_str() : nullptr; }

}  // extern "C"
