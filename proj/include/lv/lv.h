/* SPDX-License-Identifier: Apache-2.0 */
/*
 * C interface to the predator-prey numerical laboratory.
 *
 * Values (parameters, states, matrices, small reports) are passed as plain
 * structs. Variable-length results (trajectories, closure metrics,
 * scenarios, runs) live behind opaque handles that the caller releases
 * with the matching *_free function. Every fallible call returns an
 * lv_status; on failure lv_last_error() describes the problem for the
 * calling thread.
 */
#ifndef LV_LV_H
#define LV_LV_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(LV_BUILDING_LIBRARY)
#    define LV_API __declspec(dllexport)
#  else
#    define LV_API __declspec(dllimport)
#  endif
#else
#  define LV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lv_status {
  LV_OK = 0,
  LV_INVALID_ARGUMENT = 1,
  LV_DOMAIN_ERROR = 2,
  LV_IO_ERROR = 3,
  LV_DIVERGED = 4,
  LV_NOT_FOUND = 5,
  LV_INTERNAL_ERROR = 6
} lv_status;

typedef enum lv_scheme { LV_SCHEME_EULER = 0, LV_SCHEME_MICKENS = 1, LV_SCHEME_RK4 = 2 } lv_scheme;

/* Denominator function of the nonstandard scheme: phi(h) = h or 1 - exp(-h). */
typedef enum lv_phi { LV_PHI_IDENTITY = 0, LV_PHI_EXPM1 = 1 } lv_phi;

typedef enum lv_system {
  LV_SYSTEM_CONTINUOUS = 0,
  LV_SYSTEM_EULER = 1,
  LV_SYSTEM_MICKENS = 2
} lv_system;

typedef enum lv_classification {
  LV_SADDLE_POINT = 0,
  LV_SOURCE = 1,
  LV_SINK = 2,
  LV_UNSTABLE_FOCUS = 3,
  LV_STABLE_FOCUS = 4,
  LV_LINEAR_CENTER = 5,
  LV_NON_HYPERBOLIC = 6
} lv_classification;

typedef enum lv_region {
  LV_REGION_I = 0,
  LV_REGION_II = 1,
  LV_REGION_III = 2,
  LV_REGION_IV = 3,
  LV_REGION_BOUNDARY_X = 4,
  LV_REGION_BOUNDARY_Y = 5,
  LV_REGION_EXTERIOR = 6
} lv_region;

typedef enum lv_verdict {
  LV_VERDICT_CLOSED = 0,
  LV_VERDICT_SPIRAL_OUT = 1,
  LV_VERDICT_SPIRAL_IN = 2,
  LV_VERDICT_INCONCLUSIVE = 3
} lv_verdict;

#define LV_ANALYSIS_STABILITY 0x01u
#define LV_ANALYSIS_DIRECTION 0x02u
#define LV_ANALYSIS_POSITIVITY 0x04u
#define LV_ANALYSIS_CLOSURE 0x08u
#define LV_ANALYSIS_OVERLAY 0x10u

/* Process exit statuses used by the command-line tool. */
#define LV_EXIT_OK 0
#define LV_EXIT_INVALID_CONFIG 2
#define LV_EXIT_DIVERGED 3
#define LV_EXIT_IO_FAILURE 4

typedef struct lv_params {
  double alpha;
  double beta;
  double gamma;
  double delta;
} lv_params;

typedef struct lv_state {
  double x;
  double y;
} lv_state;

typedef struct lv_matrix2 {
  double a, b, c, d;
} lv_matrix2;

typedef struct lv_complex {
  double re;
  double im;
} lv_complex;

typedef struct lv_stability_report {
  lv_system system;
  lv_state point;
  lv_matrix2 jacobian;
  lv_complex eigen[2];
  lv_classification classification;
} lv_stability_report;

typedef struct lv_direction_report {
  lv_region region;
  int dx_sign; /* -1, 0 or +1 */
  int dy_sign;
  int conforms;
} lv_direction_report;

typedef struct lv_positivity_report {
  int has_negative;
  size_t first_negative_step;
  int negative_variable; /* 0 = x, 1 = y */
  int has_recovery;
  size_t recovered_positive_step;
  int exit_case;          /* -1 none, 0 region-II x crossing, 1 region-III y crossing */
  int predecessor_region; /* lv_region, or -1 */
} lv_positivity_report;

typedef struct lv_overlay_result {
  double sup_rel_error;
  double sup_rel_error_x;
  double sup_rel_error_y;
  size_t compared_points;
} lv_overlay_result;

typedef struct lv_scenario_config {
  const char* name;
  lv_params params;
  lv_scheme scheme;
  double h;
  lv_phi phi;
  lv_state start;
  size_t n_steps;
  unsigned analyses; /* LV_ANALYSIS_* bits */
  int overlay_reference; /* lv_scheme, or -1 for none */
  size_t overlay_refinement; /* 0 selects the default of 100 */
} lv_scenario_config;

typedef struct lv_trajectory lv_trajectory;
typedef struct lv_closure lv_closure;
typedef struct lv_scenario lv_scenario;
typedef struct lv_run lv_run;

LV_API const char* lv_version(void);
LV_API const char* lv_last_error(void);
LV_API const char* lv_status_string(lv_status status);
/* Maps a status to one of the LV_EXIT_* process exit codes. */
LV_API int lv_exit_code(lv_status status);

/* Model */
LV_API lv_status lv_params_check(const lv_params* p);
LV_API lv_status lv_vector_field(const lv_params* p, lv_state s, lv_state* out_rates);
LV_API lv_status lv_continuous_jacobian(const lv_params* p, lv_state s, lv_matrix2* out);
LV_API lv_status lv_fixed_points(const lv_params* p, lv_state* origin, lv_state* coexistence);
LV_API lv_status lv_first_integral(const lv_params* p, lv_state s, double* out);

/* Discretizers */
LV_API lv_status lv_step(lv_scheme scheme, const lv_params* p, lv_phi phi, double h, lv_state s,
                         lv_state* out);
LV_API lv_status lv_simulate(lv_scheme scheme, const lv_params* p, lv_phi phi, double h,
                             lv_state s0, size_t n_steps, lv_trajectory** out);
LV_API void lv_trajectory_free(lv_trajectory* traj);
LV_API size_t lv_trajectory_size(const lv_trajectory* traj);
LV_API lv_status lv_trajectory_point(const lv_trajectory* traj, size_t index, size_t* step,
                                     double* t, lv_state* s);
/* Returns 1 and stores the step when the run stopped on a non-finite state. */
LV_API int lv_trajectory_divergence(const lv_trajectory* traj, size_t* step);

/* Stability. h_or_phi is the step size for Euler and the phi value for Mickens;
 * it is ignored for the continuous system. */
LV_API lv_status lv_eig2(lv_matrix2 m, lv_complex out[2]);
LV_API lv_status lv_jacobian(lv_system system, const lv_params* p, double h_or_phi, lv_state s,
                             lv_matrix2* out);
LV_API lv_status lv_classify(lv_system system, const lv_params* p, double h_or_phi,
                             lv_state point, lv_stability_report* out);

/* Dynamics properties */
LV_API lv_status lv_classify_region(const lv_params* p, lv_state s, lv_region* out);
LV_API lv_status lv_check_direction(lv_system system, const lv_params* p, double h_or_phi,
                                    lv_state s, lv_direction_report* out);
LV_API lv_status lv_monitor_positivity(const lv_trajectory* traj, lv_positivity_report* out);
LV_API lv_status lv_measure_closure(const lv_trajectory* traj, lv_closure** out);
LV_API void lv_closure_free(lv_closure* c);
LV_API lv_verdict lv_closure_verdict(const lv_closure* c);
LV_API size_t lv_closure_crossing_count(const lv_closure* c);
LV_API double lv_closure_crossing(const lv_closure* c, size_t index);
/* drift_per_period has crossing_count - 1 entries when there are >= 3 crossings. */
LV_API size_t lv_closure_drift_count(const lv_closure* c);
LV_API double lv_closure_drift(const lv_closure* c, size_t index);
LV_API lv_status lv_compare_overlay(const lv_trajectory* a, const lv_trajectory* b,
                                    lv_overlay_result* out);

/* Files */
LV_API lv_status lv_write_csv(const lv_trajectory* traj, const char* path);
LV_API lv_status lv_write_phase_svg(const lv_trajectory* const* trajs, size_t count,
                                    const char* path);

/* Scenarios */
LV_API size_t lv_preset_count(void);
LV_API const char* lv_preset_name(size_t index);
LV_API lv_status lv_scenario_create(const lv_scenario_config* cfg, lv_scenario** out);
LV_API lv_status lv_scenario_from_preset(const char* name, lv_scenario** out);
LV_API void lv_scenario_free(lv_scenario* sc);
LV_API const char* lv_scenario_name(const lv_scenario* sc);
/* Writes CSV, SVG and JSON into out_dir. Returns LV_DIVERGED (with *out set
 * and ".partial" file names) when a trajectory was truncated. */
LV_API lv_status lv_run_scenario(const lv_scenario* sc, const char* out_dir, lv_run** out);
LV_API void lv_run_free(lv_run* run);
LV_API const char* lv_run_json_path(const lv_run* run);
LV_API const char* lv_run_svg_path(const lv_run* run);
LV_API size_t lv_run_csv_count(const lv_run* run);
LV_API const char* lv_run_csv_path(const lv_run* run, size_t index);
/* Human-readable multi-line digest of the analyses. */
LV_API const char* lv_run_summary(const lv_run* run);

#ifdef __cplusplus
}
#endif

#endif /* LV_LV_H */
