#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>

#include "objectives.hpp"
#include "rng.hpp"
#include "zoom.hpp"

namespace zopt {

using GradientFn = std::function<Vector(std::span<const double>)>;

/// Gradient source for BFGS and Adam. Central differences use the relative
/// step h * max(1, |x_i|).
struct GradientOracle {
  enum class Mode { kAnalytic, kCentral };
  Mode mode = Mode::kCentral;
  double h = 1e-6;
  GradientFn analytic;
};

/// Hand-written gradients for the objectives that have a convenient one.
std::optional<GradientFn> analytic_gradient(std::string_view objective_name);

struct PsoParams {
  std::size_t swarm = 30;
  double inertia = 0.7;
  double c1 = 1.5;
  double c2 = 1.5;
};

struct DeParams {
  std::size_t population = 30;
  double f = 0.5;
  double cr = 0.9;
};

struct SaParams {
  // Initial temperature; <= 0 means "estimate from the objective range".
  double t0 = 0.0;
  std::size_t range_probes = 100;
  double cooling = 0.95;
  double proposal_fraction = 0.1;  // proposal sd as a fraction of half-width
};

struct ShcParams {
  double radius_fraction = 0.1;  // initial neighborhood sd / half-width
  double decay = 0.99;
};

struct AdamParams {
  double lr_fraction = 0.01;  // learning rate as a fraction of half-width
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct BfgsParams {
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  std::size_t max_backtracks = 60;
  double gradient_tolerance = 0.0;  // stop when |g|_inf <= tolerance
};

struct BaselineParams {
  std::size_t iterations = 500;
  PsoParams pso;
  DeParams de;
  SaParams sa;
  ShcParams shc;
  AdamParams adam;
  BfgsParams bfgs;
  GradientOracle gradient;
  // BFGS / SA / SHC / Adam start; uniform in the box when unset.
  std::optional<Vector> start;

  void validate() const;
};

/// Central-difference gradient (U(x + h e_i) - U(x - h e_i)) / (2 h).
template <typename F>
Vector fd_gradient(const F& u, std::span<const double> x, const GradientOracle& oracle) {
  Vector g(x.size());
  Vector probe(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = oracle.h * std::max(1.0, std::abs(x[i]));
    probe[i] = x[i] + h;
    const double up = u(probe);
    probe[i] = x[i] - h;
    const double down = u(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

OptimizeResult pso_run(const Objective& objective, const BaselineParams& params,
                       const Rng& rng);
OptimizeResult de_run(const Objective& objective, const BaselineParams& params,
                      const Rng& rng);
OptimizeResult bfgs_run(const Objective& objective, const BaselineParams& params,
                        const Rng& rng);
OptimizeResult sa_run(const Objective& objective, const BaselineParams& params,
                      const Rng& rng);
OptimizeResult shc_run(const Objective& objective, const BaselineParams& params,
                       const Rng& rng);
OptimizeResult adam_run(const Objective& objective, const BaselineParams& params,
                        const Rng& rng);

/// Metropolis acceptance probability min(1, exp(-delta / temperature)).
double metropolis_acceptance(double delta, double temperature);

/// Baseline identifiers: pso, de, bfgs, sa, shc, adam.
const std::vector<std::string>& baseline_names();

/// Dispatch by identifier. Throws UnknownName.
OptimizeResult run_baseline(std::string_view name, const Objective& objective,
                            const BaselineParams& params, const Rng& rng);

/// Exact evaluation count of a fixed-budget baseline run; nullopt for BFGS,
/// whose line search makes the count data dependent.
std::optional<std::uint64_t> baseline_eval_budget(std::string_view name,
                                                  const BaselineParams& params,
                                                  std::size_t dim, bool analytic_gradient);

}  // namespace zopt
