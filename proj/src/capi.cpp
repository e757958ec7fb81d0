#include "zopt/zopt.h"

#include <algorithm>
#include <memory>
#include <new>
#include <string>

#include "baselines.hpp"
#include "error.hpp"
#include "harness.hpp"
#include "objectives.hpp"
#include "sampler.hpp"
#include "theory.hpp"
#include "zoom.hpp"

struct zopt_objective {
  zopt::Objective objective;
};

struct zopt_result {
  zopt::OptimizeResult result;
};

struct zopt_plan {
  zopt::ExperimentPlan plan;
};

struct zopt_runs {
  std::vector<zopt::RunRecord> records;
};

struct zopt_theory {
  std::vector<zopt::TheoryCheckReport> reports;
};

namespace {

thread_local std::string g_last_error;

zopt_status set_error(zopt_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

zopt_status map_code(zopt::ErrorCode code) {
  switch (code) {
    case zopt::ErrorCode::kInvalidArgument: return ZOPT_ERR_INVALID_ARGUMENT;
    case zopt::ErrorCode::kUnknownName: return ZOPT_ERR_UNKNOWN_NAME;
    case zopt::ErrorCode::kDegenerateWeights: return ZOPT_ERR_DEGENERATE_WEIGHTS;
    case zopt::ErrorCode::kNumeric: return ZOPT_ERR_NUMERIC;
    case zopt::ErrorCode::kIo: return ZOPT_ERR_IO;
    case zopt::ErrorCode::kParse: return ZOPT_ERR_PARSE;
  }
  return ZOPT_ERR_INTERNAL;
}

template <typename F>
zopt_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return ZOPT_OK;
  } catch (const zopt::Error& e) {
    return set_error(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(ZOPT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(ZOPT_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw zopt::InvalidArgument(what);
}

zopt::SamplerParams to_sampler(const zopt_sampler_config& c) {
  zopt::SamplerParams p;
  p.particle_count = c.particle_count;
  p.step_count = c.step_count;
  p.lambda = c.lambda;
  p.gamma = c.gamma;
  p.epsilon = c.epsilon > 0.0 ? c.epsilon : c.gamma;
  p.redraw_particles = c.redraw_particles != 0;
  return p;
}

}  // namespace

extern "C" {

const char* zopt_last_error(void) { return g_last_error.c_str(); }

const char* zopt_status_string(zopt_status status) {
  switch (status) {
    case ZOPT_OK: return "ok";
    case ZOPT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ZOPT_ERR_UNKNOWN_NAME: return "unknown name";
    case ZOPT_ERR_DEGENERATE_WEIGHTS: return "degenerate weights";
    case ZOPT_ERR_NUMERIC: return "numeric error";
    case ZOPT_ERR_IO: return "i/o error";
    case ZOPT_ERR_PARSE: return "parse error";
    case ZOPT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* zopt_version(void) { return "1.0.0"; }

zopt_status zopt_objective_create(const char* name, size_t dim, zopt_objective** out) {
  return guarded([&] {
    require(name && out, "name and out must not be null");
    *out = nullptr;
    *out = new zopt_objective{zopt::make_objective(name, dim)};
  });
}

void zopt_objective_destroy(zopt_objective* objective) { delete objective; }

size_t zopt_objective_dim(const zopt_objective* objective) {
  return objective ? objective->objective.spec.dimension : 0;
}

zopt_status zopt_objective_eval(const zopt_objective* objective, const double* x,
                                double* value) {
  return guarded([&] {
    require(objective && x && value, "objective, x and value must not be null");
    *value = objective->objective.fn({x, objective->objective.spec.dimension});
  });
}

zopt_status zopt_objective_box(const zopt_objective* objective, double* lower, double* upper) {
  return guarded([&] {
    require(objective && lower && upper, "objective, lower and upper must not be null");
    const zopt::SearchBox& box = objective->objective.spec.box;
    std::copy(box.lower.begin(), box.lower.end(), lower);
    std::copy(box.upper.begin(), box.upper.end(), upper);
  });
}

size_t zopt_objective_name_count(void) { return zopt::objective_names().size(); }

const char* zopt_objective_name(size_t index) {
  const auto& names = zopt::objective_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

void zopt_sampler_config_default(zopt_sampler_config* config) {
  if (!config) return;
  const zopt::SamplerParams p;
  config->particle_count = p.particle_count;
  config->step_count = p.step_count;
  config->lambda = p.lambda;
  config->gamma = 0.0;
  config->epsilon = 0.0;
  config->redraw_particles = p.redraw_particles ? 1 : 0;
}

zopt_status zopt_sample_gibbs(const zopt_objective* objective, double theta,
                              const zopt_sampler_config* config, size_t count, uint64_t seed,
                              double* out) {
  return guarded([&] {
    require(objective && (out || count == 0), "objective and out must not be null");
    require(theta > 0.0, "theta must be positive");
    const zopt::Objective& obj = objective->objective;
    const zopt::SearchBox& box = obj.spec.box;
    zopt_sampler_config defaults;
    zopt_sampler_config_default(&defaults);
    const zopt_sampler_config& cfg = config ? *config : defaults;
    zopt::SamplerParams params = to_sampler(cfg);
    if (!(cfg.gamma > 0.0)) {
      params.gamma = zopt::SamplerParams{}.gamma;
      if (!(cfg.epsilon > 0.0)) params.epsilon = params.gamma;
    }
    auto fn = obj.fn;
    const zopt::LogTarget target = zopt::make_log_target(
        [fn, theta](std::span<const double> x) { return -theta * fn(x); }, box);
    const auto samples =
        zopt::sample_batch(target, params, count, zopt::Rng(seed, zopt::hash_label("sample")));
    const std::size_t d = box.dim();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      std::copy(samples[i].begin(), samples[i].end(), out + i * d);
    }
  });
}

void zopt_zoom_config_default(zopt_zoom_config* config) {
  if (!config) return;
  const zopt::ZoomParams p;
  config->theta = p.theta;
  config->samples_per_iter = p.samples_per_iter;
  config->max_iters = p.max_iters;
  config->alpha_min = p.alpha_min;
  config->alpha_max = p.alpha_max;
  config->strategy = ZOPT_ZOOM_EDU;
  config->edu_fixed_base = 0;
  zopt_sampler_config_default(&config->sampler);
}

zopt_status zopt_optimize(const zopt_objective* objective, const char* algorithm,
                          const zopt_zoom_config* zoom, uint64_t seed, zopt_result** out) {
  return guarded([&] {
    require(objective && algorithm && out, "objective, algorithm and out must not be null");
    *out = nullptr;
    zopt_zoom_config cfg;
    zopt_zoom_config_default(&cfg);
    if (zoom) cfg = *zoom;
    const zopt::Rng rng(seed, zopt::hash_label(algorithm));
    const std::string algo(algorithm);
    auto holder = std::make_unique<zopt_result>();
    if (algo == "so") {
      zopt::ZoomParams p;
      p.theta = cfg.theta;
      p.samples_per_iter = cfg.samples_per_iter;
      p.max_iters = cfg.max_iters;
      p.alpha_min = cfg.alpha_min;
      p.alpha_max = cfg.alpha_max;
      p.strategy = cfg.strategy == ZOPT_ZOOM_SVU ? zopt::ZoomStrategy::kSvu
                                                 : zopt::ZoomStrategy::kEdu;
      p.edu_fixed_base = cfg.edu_fixed_base != 0;
      p.auto_gamma = !(cfg.sampler.gamma > 0.0);
      p.sampler = to_sampler(cfg.sampler);
      if (p.auto_gamma) p.sampler.gamma = p.sampler.epsilon = 1.0;
      holder->result = zopt::optimize(objective->objective, p, rng);
    } else {
      zopt::BaselineParams p;
      p.iterations = cfg.max_iters;
      if (auto g = zopt::analytic_gradient(objective->objective.spec.name)) {
        p.gradient.mode = zopt::GradientOracle::Mode::kAnalytic;
        p.gradient.analytic = std::move(*g);
      }
      holder->result = zopt::run_baseline(algo, objective->objective, p, rng);
    }
    *out = holder.release();
  });
}

void zopt_result_destroy(zopt_result* result) { delete result; }

double zopt_result_value(const zopt_result* result) { return result ? result->result.value : 0.0; }

void zopt_result_point(const zopt_result* result, double* x) {
  if (result && x) std::copy(result->result.x_best.begin(), result->result.x_best.end(), x);
}

uint64_t zopt_result_evaluations(const zopt_result* result) {
  return result ? result->result.evaluations : 0;
}

size_t zopt_result_degenerate_iterations(const zopt_result* result) {
  return result ? result->result.degenerate_iterations : 0;
}

size_t zopt_result_trace_length(const zopt_result* result) {
  return result ? result->result.trace.size() : 0;
}

zopt_status zopt_result_trace_entry(const zopt_result* result, size_t index, double* best_value,
                                    uint64_t* fevals, double* elapsed_ms) {
  return guarded([&] {
    require(result != nullptr, "result must not be null");
    require(index < result->result.trace.size(), "trace index out of range");
    const zopt::IterationRecord& r = result->result.trace[index];
    if (best_value) *best_value = r.best_value;
    if (fevals) *fevals = r.fevals;
    if (elapsed_ms) *elapsed_ms = r.elapsed_ms;
  });
}

zopt_status zopt_plan_parse(const char* text, zopt_plan** out) {
  return guarded([&] {
    require(text && out, "text and out must not be null");
    *out = nullptr;
    *out = new zopt_plan{zopt::parse_plan(text)};
  });
}

void zopt_plan_destroy(zopt_plan* plan) { delete plan; }

size_t zopt_plan_warning_count(const zopt_plan* plan) {
  return plan ? plan->plan.warnings.size() : 0;
}

const char* zopt_plan_warning(const zopt_plan* plan, size_t index) {
  if (!plan || index >= plan->plan.warnings.size()) return nullptr;
  return plan->plan.warnings[index].c_str();
}

void zopt_plan_set_seed(zopt_plan* plan, uint64_t seed) {
  if (plan) plan->plan.seed = seed;
}

zopt_status zopt_plan_set_out_dir(zopt_plan* plan, const char* dir) {
  return guarded([&] {
    require(plan && dir && *dir, "plan and a non-empty dir are required");
    plan->plan.out_dir = dir;
  });
}

size_t zopt_plan_run_count(const zopt_plan* plan) {
  if (!plan) return 0;
  const zopt::ExperimentPlan& p = plan->plan;
  return p.functions.size() * p.dimensions.size() * p.algorithms.size() * p.trials;
}

zopt_status zopt_plan_run(const zopt_plan* plan, zopt_progress_fn progress, void* user,
                          zopt_runs** out) {
  return guarded([&] {
    require(plan && out, "plan and out must not be null");
    *out = nullptr;
    zopt::ProgressFn cb;
    if (progress) {
      cb = [progress, user](const zopt::RunRecord& r, std::size_t done, std::size_t total) {
        progress(user, r.algorithm.c_str(), r.function.c_str(), r.dimension, r.trial,
                 r.ok() ? nullptr : r.error.c_str(), done, total);
      };
    }
    *out = new zopt_runs{zopt::run_plan(plan->plan, cb)};
  });
}

void zopt_runs_destroy(zopt_runs* runs) { delete runs; }

size_t zopt_runs_count(const zopt_runs* runs) { return runs ? runs->records.size() : 0; }

size_t zopt_runs_failures(const zopt_runs* runs) {
  if (!runs) return 0;
  std::size_t n = 0;
  for (const auto& r : runs->records) n += r.ok() ? 0 : 1;
  return n;
}

zopt_status zopt_runs_write(const zopt_runs* runs, const zopt_plan* plan) {
  return guarded([&] {
    require(runs && plan, "runs and plan must not be null");
    zopt::write_bench_outputs(plan->plan, runs->records);
  });
}

zopt_status zopt_theory_run(const char* check, uint64_t seed, zopt_theory** out) {
  return guarded([&] {
    require(check && out, "check and out must not be null");
    *out = nullptr;
    *out = new zopt_theory{zopt::run_theory_check(check, seed)};
  });
}

void zopt_theory_destroy(zopt_theory* theory) { delete theory; }

size_t zopt_theory_count(const zopt_theory* theory) {
  return theory ? theory->reports.size() : 0;
}

const char* zopt_theory_name(const zopt_theory* theory, size_t index) {
  if (!theory || index >= theory->reports.size()) return nullptr;
  return theory->reports[index].name.c_str();
}

int zopt_theory_passed(const zopt_theory* theory, size_t index) {
  if (!theory || index >= theory->reports.size()) return 0;
  return theory->reports[index].passed ? 1 : 0;
}

const char* zopt_theory_summary(const zopt_theory* theory, size_t index) {
  if (!theory || index >= theory->reports.size()) return nullptr;
  return theory->reports[index].summary.c_str();
}

zopt_status zopt_theory_write_csv(const zopt_theory* theory, const char* path) {
  return guarded([&] {
    require(theory && path, "theory and path must not be null");
    zopt::write_text_file(path, zopt::theory_csv(theory->reports));
  });
}

zopt_status zopt_write_samples_csv(const double* samples, size_t count, size_t dim,
                                   const char* path) {
  return guarded([&] {
    require(path != nullptr && (samples != nullptr || count == 0), "samples and path required");
    std::vector<zopt::Vector> rows(count, zopt::Vector(dim));
    for (std::size_t i = 0; i < count; ++i) {
      std::copy(samples + i * dim, samples + (i + 1) * dim, rows[i].begin());
    }
    zopt::write_text_file(path, zopt::samples_csv(rows));
  });
}

}  // extern "C"
