/* zopt: sampling-based zeroth-order global optimization. C interface. */
#ifndef ZOPT_ZOPT_H
#define ZOPT_ZOPT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ZOPT_API __declspec(dllexport)
#else
#define ZOPT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zopt_status {
  ZOPT_OK = 0,
  ZOPT_ERR_INVALID_ARGUMENT = 1,
  ZOPT_ERR_UNKNOWN_NAME = 2,
  ZOPT_ERR_DEGENERATE_WEIGHTS = 3,
  ZOPT_ERR_NUMERIC = 4,
  ZOPT_ERR_IO = 5,
  ZOPT_ERR_PARSE = 6,
  ZOPT_ERR_INTERNAL = 7
} zopt_status;

/* Message for the most recent failing call on this thread ("" if none). */
ZOPT_API const char* zopt_last_error(void);
ZOPT_API const char* zopt_status_string(zopt_status status);
ZOPT_API const char* zopt_version(void);

/* ---- objectives ---- */

typedef struct zopt_objective zopt_objective;

ZOPT_API zopt_status zopt_objective_create(const char* name, size_t dim, zopt_objective** out);
ZOPT_API void zopt_objective_destroy(zopt_objective* objective);
ZOPT_API size_t zopt_objective_dim(const zopt_objective* objective);
ZOPT_API zopt_status zopt_objective_eval(const zopt_objective* objective, const double* x,
                                         double* value);
/* lower and upper each receive dim values. */
ZOPT_API zopt_status zopt_objective_box(const zopt_objective* objective, double* lower,
                                        double* upper);
/* Number of registered function ids; names are stable for the library lifetime. */
ZOPT_API size_t zopt_objective_name_count(void);
ZOPT_API const char* zopt_objective_name(size_t index);

/* ---- sampler ---- */

typedef struct zopt_sampler_config {
  size_t particle_count;
  size_t step_count;
  double lambda;
  double gamma;   /* <= 0: default (1) */
  double epsilon; /* <= 0: equal to gamma */
  int redraw_particles;
} zopt_sampler_config;

ZOPT_API void zopt_sampler_config_default(zopt_sampler_config* config);

/* Draws `count` samples from exp(-theta U) restricted to the objective's box.
   config may be NULL for defaults. out receives count * dim values, row-major. */
ZOPT_API zopt_status zopt_sample_gibbs(const zopt_objective* objective, double theta,
                                       const zopt_sampler_config* config, size_t count,
                                       uint64_t seed, double* out);

/* ---- optimizer ---- */

typedef enum zopt_zoom_strategy { ZOPT_ZOOM_EDU = 0, ZOPT_ZOOM_SVU = 1 } zopt_zoom_strategy;

typedef struct zopt_zoom_config {
  double theta;
  size_t samples_per_iter;
  size_t max_iters;
  double alpha_min;
  double alpha_max;
  zopt_zoom_strategy strategy;
  int edu_fixed_base;
  zopt_sampler_config sampler; /* gamma <= 0: (max half-width of the box)^2 */
} zopt_zoom_config;

ZOPT_API void zopt_zoom_config_default(zopt_zoom_config* config);

typedef struct zopt_result zopt_result;

/* algorithm: "so" or a baseline id (pso, de, bfgs, sa, shc, adam). zoom may be
   NULL for defaults; for baselines only max_iters is read. */
ZOPT_API zopt_status zopt_optimize(const zopt_objective* objective, const char* algorithm,
                                   const zopt_zoom_config* zoom, uint64_t seed,
                                   zopt_result** out);
ZOPT_API void zopt_result_destroy(zopt_result* result);
ZOPT_API double zopt_result_value(const zopt_result* result);
/* x receives dim values. */
ZOPT_API void zopt_result_point(const zopt_result* result, double* x);
ZOPT_API uint64_t zopt_result_evaluations(const zopt_result* result);
ZOPT_API size_t zopt_result_degenerate_iterations(const zopt_result* result);
ZOPT_API size_t zopt_result_trace_length(const zopt_result* result);
ZOPT_API zopt_status zopt_result_trace_entry(const zopt_result* result, size_t index,
                                             double* best_value, uint64_t* fevals,
                                             double* elapsed_ms);

/* ---- experiment plans ---- */

typedef struct zopt_plan zopt_plan;
typedef struct zopt_runs zopt_runs;

/* key=value text; see the README for the accepted keys. */
ZOPT_API zopt_status zopt_plan_parse(const char* text, zopt_plan** out);
ZOPT_API void zopt_plan_destroy(zopt_plan* plan);
ZOPT_API size_t zopt_plan_warning_count(const zopt_plan* plan);
ZOPT_API const char* zopt_plan_warning(const zopt_plan* plan, size_t index);
ZOPT_API void zopt_plan_set_seed(zopt_plan* plan, uint64_t seed);
ZOPT_API zopt_status zopt_plan_set_out_dir(zopt_plan* plan, const char* dir);
ZOPT_API size_t zopt_plan_run_count(const zopt_plan* plan);

/* Called after each finished run; error is NULL on success. */
typedef void (*zopt_progress_fn)(void* user, const char* algorithm, const char* function,
                                 size_t dim, size_t trial, const char* error, size_t done,
                                 size_t total);

ZOPT_API zopt_status zopt_plan_run(const zopt_plan* plan, zopt_progress_fn progress,
                                   void* user, zopt_runs** out);
ZOPT_API void zopt_runs_destroy(zopt_runs* runs);
ZOPT_API size_t zopt_runs_count(const zopt_runs* runs);
ZOPT_API size_t zopt_runs_failures(const zopt_runs* runs);
/* Writes trace.csv, summary.csv and SVG charts into the plan's output directory. */
ZOPT_API zopt_status zopt_runs_write(const zopt_runs* runs, const zopt_plan* plan);

/* ---- theory checks ---- */

typedef struct zopt_theory zopt_theory;

/* check: lemma21, th24, th28, th29, th45 or all. */
ZOPT_API zopt_status zopt_theory_run(const char* check, uint64_t seed, zopt_theory** out);
ZOPT_API void zopt_theory_destroy(zopt_theory* theory);
ZOPT_API size_t zopt_theory_count(const zopt_theory* theory);
ZOPT_API const char* zopt_theory_name(const zopt_theory* theory, size_t index);
ZOPT_API int zopt_theory_passed(const zopt_theory* theory, size_t index);
ZOPT_API const char* zopt_theory_summary(const zopt_theory* theory, size_t index);
ZOPT_API zopt_status zopt_theory_write_csv(const zopt_theory* theory, const char* path);

/* ---- files ---- */

/* Header x0..x{dim-1}, one row per sample. */
ZOPT_API zopt_status zopt_write_samples_csv(const double* samples, size_t count, size_t dim,
                                            const char* path);

#ifdef __cplusplus
}
#endif

#endif
