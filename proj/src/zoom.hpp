#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "objectives.hpp"
#include "rng.hpp"
#include "sampler.hpp"

namespace zopt {

enum class ZoomStrategy { kEdu, kSvu };

/// Smallest zoom component; keeps alpha strictly positive after many
/// contractions (alpha^(1+k) underflows otherwise).
inline constexpr double kAlphaFloor = 1e-300;

struct ZoomParams {
  // Only ever multiplies U inside log-space; at 1e100 the softmax over
  // particles acts as an argmin selector.
  double theta = 1e100;
  std::size_t samples_per_iter = 10;
  std::size_t max_iters = 200;
  double alpha_min = 0.1;
  double alpha_max = 1.0;
  ZoomStrategy strategy = ZoomStrategy::kEdu;
  // EDU: redraw the base alpha every iteration (default) or draw it once.
  bool edu_fixed_base = false;
  SamplerParams sampler;
  // When set, gamma = epsilon = (max half-width of the box)^2.
  bool auto_gamma = true;
  std::optional<Vector> initial_center;

  void validate(std::size_t dim) const;
};

struct ZoomState {
  Vector center;
  Vector alpha;
  double incumbent_value = 0.0;  // +inf until the first accepted sample
  Vector incumbent_point;
  std::size_t iteration = 0;
  std::size_t degenerate_iterations = 0;
  Vector edu_base;  // used only with edu_fixed_base
};

struct IterationRecord {
  std::size_t iteration = 0;
  double best_value = 0.0;
  std::uint64_t fevals = 0;
  double elapsed_ms = 0.0;
};

struct OptimizeResult {
  Vector x_best;
  double value = 0.0;
  std::vector<IterationRecord> trace;
  std::size_t degenerate_iterations = 0;
  std::uint64_t evaluations = 0;
};

/// Log-density x -> -theta U(alpha (.) x + center) on the zoomed box;
/// -inf wherever the decoded point leaves `box`.
LogTarget scaled_log_target(const CountedObjective& objective, double theta,
                            std::span<const double> alpha, std::span<const double> center,
                            const SearchBox& box);

/// EDU: base ~ U[alpha_min, alpha_max]^d, returns base^(1+k).
Vector edu_update(std::size_t k, Rng& rng, const ZoomParams& params, std::size_t dim);
/// EDU with a given base vector.
Vector edu_power(std::span<const double> base, std::size_t k);

/// SVU: alpha (.) (v / |v|) with v the coordinate-wise sample variances.
/// Returns alpha unchanged when every variance is zero.
Vector svu_update(std::span<const double> alpha, const std::vector<Vector>& samples);

ZoomState initial_zoom_state(const ObjectiveSpec& spec, const ZoomParams& params,
                             const Rng& rng);

/// Inner sampler parameters actually used for `box` (auto gamma resolved).
SamplerParams effective_sampler_params(const ZoomParams& params, const SearchBox& box);

std::pair<ZoomState, IterationRecord> zoom_step(ZoomState state,
                                                const CountedObjective& objective,
                                                const ZoomParams& params, const Rng& rng);

/// Runs max_iters zoom steps from x0 = initial_center, alpha0 = 1.
OptimizeResult optimize(const Objective& objective, const ZoomParams& params,
                        const Rng& rng);

}  // namespace zopt
