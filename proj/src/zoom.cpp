#include "zoom.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace zopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

void ZoomParams::validate(std::size_t dim) const {
  if (!(theta > 0.0)) throw InvalidArgument("theta must be positive");
  if (samples_per_iter == 0) throw InvalidArgument("samples_per_iter must be positive");
  if (!(alpha_min > 0.0 && alpha_min <= alpha_max && alpha_max <= 1.0)) {
    throw InvalidArgument("zoom bounds must satisfy 0 < alpha_min <= alpha_max <= 1");
  }
  if (initial_center && initial_center->size() != dim) {
    throw InvalidArgument("initial_center has the wrong dimension");
  }
  if (!auto_gamma) sampler.validate();
}

LogTarget scaled_log_target(const CountedObjective& objective, double theta,
                            std::span<const double> alpha, std::span<const double> center,
                            const SearchBox& box) {
  const std::size_t d = box.dim();
  if (alpha.size() != d || center.size() != d) {
    throw InvalidArgument("zoom vector and center must match the box dimension");
  }
  SearchBox scaled{Vector(d), Vector(d)};
  for (std::size_t i = 0; i < d; ++i) {
    if (!(alpha[i] > 0.0)) throw InvalidArgument("zoom components must be positive");
    scaled.lower[i] = (box.lower[i] - center[i]) / alpha[i];
    scaled.upper[i] = (box.upper[i] - center[i]) / alpha[i];
  }
  Vector a(alpha.begin(), alpha.end());
  Vector c(center.begin(), center.end());
  auto log_density = [objective, theta, a = std::move(a), c = std::move(c),
                      &box](std::span<const double> x) -> double {
    thread_local Vector z;
    z.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = a[i] * x[i] + c[i];
    if (!box.contains(z)) return -kInf;
    const double u = objective(z);
    if (!(u < kInf)) return -kInf;
    return -theta * u;
  };
  return make_log_target(std::move(log_density), std::move(scaled));
}

Vector edu_power(std::span<const double> base, std::size_t k) {
  Vector alpha(base.size());
  const double e = static_cast<double>(k + 1);
  for (std::size_t i = 0; i < base.size(); ++i) {
    alpha[i] = std::max(std::pow(base[i], e), kAlphaFloor);
  }
  return alpha;
}

Vector edu_update(std::size_t k, Rng& rng, const ZoomParams& params, std::size_t dim) {
  Vector base(dim);
  for (double& b : base) b = rng.uniform(params.alpha_min, params.alpha_max);
  return edu_power(base, k);
}

Vector svu_update(std::span<const double> alpha, const std::vector<Vector>& samples) {
  Vector out(alpha.begin(), alpha.end());
  if (samples.empty()) return out;
  const std::size_t d = alpha.size();
  const double n = static_cast<double>(samples.size());
  Vector var(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    double mean = 0.0;
    for (const Vector& y : samples) mean += y[i];
    mean /= n;
    double ss = 0.0;
    for (const Vector& y : samples) ss += (y[i] - mean) * (y[i] - mean);
    var[i] = ss / n;
  }
  double norm = 0.0;
  for (double v : var) norm += v * v;
  norm = std::sqrt(norm);
  if (!(norm > 0.0) || !std::isfinite(norm)) return out;
  for (std::size_t i = 0; i < d; ++i) {
    out[i] = std::max(out[i] * (var[i] / norm), kAlphaFloor);
  }
  return out;
}

SamplerParams effective_sampler_params(const ZoomParams& params, const SearchBox& box) {
  SamplerParams sp = params.sampler;
  if (params.auto_gamma) {
    const double hw = box.max_half_width();
    sp.gamma = hw * hw;
    sp.epsilon = sp.gamma;
  }
  return sp;
}

ZoomState initial_zoom_state(const ObjectiveSpec& spec, const ZoomParams& params,
                             const Rng& rng) {
  const std::size_t d = spec.dimension;
  ZoomState state;
  state.center = params.initial_center ? *params.initial_center : Vector(d, 0.0);
  state.alpha = Vector(d, 1.0);
  state.incumbent_value = kInf;
  state.incumbent_point = state.center;
  if (params.strategy == ZoomStrategy::kEdu && params.edu_fixed_base) {
    Rng base_rng = rng.derive("edu-base");
    state.edu_base.resize(d);
    for (double& b : state.edu_base) b = base_rng.uniform(params.alpha_min, params.alpha_max);
  }
  return state;
}

std::pair<ZoomState, IterationRecord> zoom_step(ZoomState state,
                                                const CountedObjective& objective,
                                                const ZoomParams& params, const Rng& rng) {
  const SearchBox& box = objective.spec().box;
  const std::size_t d = box.dim();
  const std::size_t k = state.iteration;
  const Rng iter_rng = rng.derive(k);

  const LogTarget target =
      scaled_log_target(objective, params.theta, state.alpha, state.center, box);
  const SamplerParams sp = effective_sampler_params(params, box);

  std::vector<Vector> samples;
  try {
    samples = sample_batch(target, sp, params.samples_per_iter, iter_rng.derive("samples"));
  } catch (const DegenerateWeights&) {
    ++state.degenerate_iterations;
    samples.clear();
  }

  // Decode and select; out-of-box samples score +inf, ties keep the lowest index.
  std::size_t best = samples.size();
  double best_value = kInf;
  Vector best_point;
  Vector z(d);
  for (std::size_t n = 0; n < samples.size(); ++n) {
    for (std::size_t i = 0; i < d; ++i) z[i] = state.alpha[i] * samples[n][i] + state.center[i];
    if (!box.contains(z)) continue;
    const double u = objective(z);
    if (u < best_value) {
      best_value = u;
      best = n;
      best_point = z;
    }
  }
  if (best < samples.size() && best_value < state.incumbent_value) {
    state.incumbent_value = best_value;
    state.incumbent_point = best_point;
    state.center = best_point;
  }

  if (params.strategy == ZoomStrategy::kEdu) {
    if (params.edu_fixed_base) {
      state.alpha = edu_power(state.edu_base, k);
    } else {
      Rng alpha_rng = iter_rng.derive("alpha");
      state.alpha = edu_update(k, alpha_rng, params, d);
    }
  } else {
    state.alpha = svu_update(state.alpha, samples);
  }
  ++state.iteration;

  IterationRecord record;
  record.iteration = k;
  record.best_value = state.incumbent_value;
  record.fevals = objective.evaluations();
  return {std::move(state), record};
}

OptimizeResult optimize(const Objective& objective, const ZoomParams& params,
                        const Rng& rng) {
  const ObjectiveSpec& spec = objective.spec;
  spec.box.validate();
  params.validate(spec.dimension);

  EvalCounter counter;
  const CountedObjective counted(objective, counter);
  ZoomState state = initial_zoom_state(spec, params, rng);

  OptimizeResult result;
  result.trace.reserve(params.max_iters);
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t k = 0; k < params.max_iters; ++k) {
    auto [next, record] = zoom_step(std::move(state), counted, params, rng);
    state = std::move(next);
    record.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    result.trace.push_back(record);
  }
  if (state.incumbent_value < kInf) {
    result.x_best = state.incumbent_point;
    result.value = state.incumbent_value;
  } else {
    result.x_best = state.center;
    result.value = counted(state.center);
  }
  result.degenerate_iterations = state.degenerate_iterations;
  result.evaluations = counter.count();
  return result;
}

}  // namespace zopt
