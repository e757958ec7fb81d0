#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "objectives.hpp"
#include "rng.hpp"

namespace zopt {

/// Interpolation schedule sigma_t = 1 - t, beta_t = t and the derived
/// quantities the drift needs at one time point.
struct ScheduleValues {
  double sigma = 1.0;
  double beta = 0.0;
  double dsigma = -1.0;
  double dbeta = 1.0;
  double ell = 1.0;  // epsilon * beta + gamma * sigma
  double tau = 1.0;  // sqrt(lambda * ell / sigma)
};

struct SamplerParams {
  std::size_t particle_count = 1000;
  std::size_t step_count = 10;
  double lambda = 9.0;
  double gamma = 1.0;    // variance of the initial state X_0 ~ N(0, gamma I)
  double epsilon = 1.0;  // Brownian coefficient, 0 < epsilon <= gamma
  bool redraw_particles = false;

  /// Throws InvalidArgument on a violated hypothesis; returns advisory
  /// warnings (lambda below 9).
  std::vector<std::string> validate() const;
};

/// Unnormalized log-density with a bounded support box.
struct LogTarget {
  std::function<double(std::span<const double>)> log_density;
  SearchBox support_box;
  double support_bound = 0.0;  // radius of a ball containing support_box

  std::size_t dim() const { return support_box.dim(); }
  /// -inf outside the support box, log_density otherwise.
  double operator()(std::span<const double> x) const;
};

/// Builds a target whose support bound is derived from the box.
LogTarget make_log_target(std::function<double(std::span<const double>)> log_density,
                          SearchBox box);

/// N standard-normal particles in R^d, stored row-major.
class ParticleSet {
 public:
  ParticleSet() = default;
  ParticleSet(std::size_t count, std::size_t dim);
  static ParticleSet draw(std::size_t count, std::size_t dim, Rng& rng);

  std::size_t size() const { return count_; }
  std::size_t dim() const { return dim_; }
  std::span<const double> operator[](std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<double> mutable_row(std::size_t i) {
    return {data_.data() + i * dim_, dim_};
  }
  /// ||xi_i||^2 / 2, cached at construction time.
  double half_norm2(std::size_t i) const { return half_norm2_[i]; }
  void refresh_norms();

 private:
  std::size_t count_ = 0;
  std::size_t dim_ = 0;
  Vector data_;
  Vector half_norm2_;
};

struct DriftDiagnostics {
  double max_log_weight = 0.0;
  double effective_sample_size = 0.0;
};

struct DriftResult {
  Vector drift;
  DriftDiagnostics diagnostics;
};

struct ChainState {
  Vector position;
  std::size_t step_index = 0;
};

/// Schedule and drift coefficients at t in [0, 1). Throws at t >= 1.
ScheduleValues schedule_eval(double t, const SamplerParams& params);

/// log H_t(x, xi) = -sigma |x + tau beta xi|^2 / (2 ell) + |xi|^2 / 2
///                  + log f(x - tau sigma xi).
double log_weight(std::span<const double> x, std::span<const double> xi, double t,
                  const LogTarget& target, const SamplerParams& params);

/// Log-weights of every particle at (x, t).
Vector log_weights(std::span<const double> x, double t, const ParticleSet& particles,
                   const LogTarget& target, const SamplerParams& params);

/// Softmax-weighted mean of the particles scaled by `scale`, computed with a
/// max shift. Throws DegenerateWeights if every log-weight is -inf.
DriftResult drift_from_log_weights(std::span<const double> log_w,
                                   const ParticleSet& particles, double scale);

/// Monte-Carlo drift b_t(x) = tau sigma' * sum(w_i xi_i) / sum(w_i).
DriftResult drift_mc(std::span<const double> x, double t, const ParticleSet& particles,
                     const LogTarget& target, const SamplerParams& params);

/// Same estimator in the form (sigma'/sigma) [x - sum(w_i (x - tau sigma xi_i)) / sum(w_i)].
Vector drift_mc_displacement_form(std::span<const double> x, double t,
                                  const ParticleSet& particles, const LogTarget& target,
                                  const SamplerParams& params);

/// Exact drift when the target is N(0, s^2 I).
Vector exact_drift_gaussian(std::span<const double> x, double t, double s,
                            const SamplerParams& params);

/// One Euler-Maruyama step X <- X + b dt + sqrt(epsilon beta'(t) dt) zeta.
ChainState euler_step(ChainState chain, double t, double dt, std::span<const double> drift,
                      const SamplerParams& params, std::span<const double> noise);

/// Integrates the SDE on t_k = k / M for k = 0..M-1 and returns X_M.
Vector run_chain(const LogTarget& target, const SamplerParams& params, Rng& rng);

/// `count` independent chains; chain i uses rng.derive(i).
std::vector<Vector> sample_batch(const LogTarget& target, const SamplerParams& params,
                                 std::size_t count, const Rng& rng);

/// Estimate of the density of X_t at x: (tau sqrt(sigma/ell))^d * mean(H_t).
/// Meaningful when the target log-density is normalized.
double marginal_density_mc(std::span<const double> x, double t,
                           const ParticleSet& particles, const LogTarget& target,
                           const SamplerParams& params);

}  // namespace zopt
