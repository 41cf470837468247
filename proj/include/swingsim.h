/*
 * C API for the swing-leg propulsion simulator.
 *
 * All entry points are thread-safe. Objects returned through out-parameters
 * are owned by the caller and released with the matching *_free function.
 * Functions returning swingsim_status set a thread-local error message
 * readable via swingsim_last_error() on failure.
 */
#ifndef SWINGSIM_H
#define SWINGSIM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum swingsim_status {
  SWINGSIM_OK = 0,
  SWINGSIM_ERR_INVALID_ARGUMENT = 1,
  SWINGSIM_ERR_PARSE = 2,            /* config text could not be parsed */
  SWINGSIM_ERR_VALIDATION = 3,       /* a parameter violates its invariant */
  SWINGSIM_ERR_SINGULAR = 4,         /* singular leg/wheel configuration */
  SWINGSIM_ERR_INSUFFICIENT_DATA = 5,
  SWINGSIM_ERR_RANK_DEFICIENT = 6,
  SWINGSIM_ERR_PATH_LOST = 7,        /* line sensor lost the path */
  SWINGSIM_ERR_IO = 8,
  SWINGSIM_ERR_INTERNAL = 9
} swingsim_status;

const char* swingsim_version(void);
const char* swingsim_status_name(swingsim_status status);

/* Message of the last failure on this thread; empty string if none. */
const char* swingsim_last_error(void);

/* ------------------------------------------------------------------ */
/* Configuration                                                       */

typedef struct swingsim_config swingsim_config;

/* Baseline-platform defaults. */
swingsim_status swingsim_config_create(swingsim_config** out);

/* key = value text with [section] headers and # comments. */
swingsim_status swingsim_config_parse(const char* text, swingsim_config** out);
swingsim_status swingsim_config_load(const char* path, swingsim_config** out);

/* Sets one dotted key, e.g. "gait.omega_in". */
swingsim_status swingsim_config_set(swingsim_config* config, const char* key,
                                    const char* value);

/* Canonical config text; free with swingsim_string_free. */
swingsim_status swingsim_config_dump(const swingsim_config* config, char** out_text);

/* Checks every invariant without running anything. */
swingsim_status swingsim_config_validate(const swingsim_config* config);

void swingsim_config_free(swingsim_config* config);
void swingsim_string_free(char* text);

/* ------------------------------------------------------------------ */
/* Runs and traces                                                     */

typedef struct swingsim_trace swingsim_trace;

/* Open-loop run of the configured scenario. On SWINGSIM_ERR_SINGULAR or
 * SWINGSIM_ERR_PATH_LOST the rows recorded before the failure are still
 * returned through *out. */
swingsim_status swingsim_run(const swingsim_config* config, swingsim_trace** out);

/* Closed-loop velocity control of the inward stroke rate. The targets are
 * held as equal-length plateaus over the configured duration. */
swingsim_status swingsim_run_velocity_control(const swingsim_config* config,
                                              const double* plateau_targets,
                                              size_t n_targets, swingsim_trace** out);

/* Line-sensor trajectory following of the configured path at target_speed. */
swingsim_status swingsim_run_follow(const swingsim_config* config, double target_speed,
                                    swingsim_trace** out);

/* Downslope coast with frozen legs over slope_length_m. use_brake != 0
 * enables the bang-bang brake about target_speed. */
swingsim_status swingsim_run_descent(const swingsim_config* config,
                                     double slope_length_m, double target_speed,
                                     int use_brake, swingsim_trace** out);

size_t swingsim_trace_row_count(const swingsim_trace* trace);
size_t swingsim_trace_column_count(const swingsim_trace* trace);
const char* swingsim_trace_column_name(const swingsim_trace* trace, size_t column);

/* Numeric cell value; the phase column is encoded 0=Inward 1=Outward 2=Pause. */
double swingsim_trace_value(const swingsim_trace* trace, size_t row, size_t column);

/* CSV with 9-significant-digit floats; free with swingsim_string_free. */
swingsim_status swingsim_trace_to_csv(const swingsim_trace* trace, char** out_text);
swingsim_status swingsim_trace_write_csv(const swingsim_trace* trace, const char* path);

/* Mean velocity over the last two gait cycles of the config's gait. */
swingsim_status swingsim_trace_steady_velocity(const swingsim_trace* trace,
                                               const swingsim_config* config,
                                               double* out);

/* Mean velocity over gait cycle [k*T, (k+1)*T). */
swingsim_status swingsim_trace_cycle_mean(const swingsim_trace* trace,
                                          const swingsim_config* config, size_t cycle,
                                          double* out);

void swingsim_trace_free(swingsim_trace* trace);

/* ------------------------------------------------------------------ */
/* Parameter studies                                                   */

typedef enum swingsim_sweep_axis {
  SWINGSIM_SWEEP_OMEGA_IN = 0,
  SWINGSIM_SWEEP_OMEGA_OUT = 1
} swingsim_sweep_axis;

/* Steady velocity per swept value. out_ok[i] == 0 marks a failed row (its
 * velocity slot is meaningless); the sweep itself still succeeds. Runs in
 * parallel, capped by the SWINGSIM_THREADS environment variable (0/unset =
 * hardware concurrency). */
swingsim_status swingsim_sweep(const swingsim_config* config, swingsim_sweep_axis axis,
                               const double* values, size_t n, double* out_velocity,
                               int* out_ok);

/* Steady climb velocity per uphill slope angle (radians). Failed climbs
 * report 0. */
swingsim_status swingsim_slope_climb(const swingsim_config* config,
                                     const double* alphas_rad, size_t n,
                                     double* out_velocity, int* out_ok);

/* ------------------------------------------------------------------ */
/* Speed-model identification                                          */
/* Model: v = c0*w_in + c1*w_in^2 + c2*w_out + c3*w_out^2              */

/* Least-squares fit of the quadratic speed model. out_stderr and out_rms may
 * be NULL. */
swingsim_status swingsim_fit_speed_model(const double* omega_in, const double* omega_out,
                                         const double* speed, size_t n,
                                         double out_coef[4], double out_stderr[4],
                                         double* out_rms);

/* Runs the default stroke-rate grid through the simulator and fits it. */
swingsim_status swingsim_fit_from_simulation(const swingsim_config* config,
                                             double out_coef[4], double out_stderr[4],
                                             double* out_rms);

double swingsim_speed_model_eval(const double coef[4], double omega_in,
                                 double omega_out);

/* Built-in reference coefficients for the baseline platform. */
void swingsim_reference_speed_model(double out_coef[4]);
void swingsim_reference_speed_model_measured(double out_coef[4]);

/* Velocity-space gap between two models over an n x n stroke-rate grid. */
swingsim_status swingsim_compare_speed_models(const double a[4], const double b[4],
                                              double omega_in_lo, double omega_in_hi,
                                              double omega_out_lo, double omega_out_hi,
                                              int n, double* out_max_abs,
                                              double* out_rms);

#ifdef __cplusplus
}
#endif

#endif /* SWINGSIM_H */
