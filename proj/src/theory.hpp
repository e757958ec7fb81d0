#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "objectives.hpp"
#include "rng.hpp"

namespace zopt {

/// U(x) = kappa |x|^m in dimension d, tilted at temperature theta.
struct RadialPotentialSpec {
  std::size_t dimension = 1;
  double exponent = 2.0;
  double kappa = 1.0;
  double theta = 1.0;

  void validate() const;
};

/// Gibbs mass of {U < r}: P(d/m, theta r). Independent of kappa.
double ell_theta_radial(const RadialPotentialSpec& spec, double r);

/// Exact i.i.d. draws from the density proportional to exp(-theta kappa |x|^m).
std::vector<Vector> gibbs_radial_sampler(const RadialPotentialSpec& spec, std::size_t n,
                                         Rng& rng);

/// sup |F_n - F| against a continuous CDF.
double ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf);
/// sup |F_a - F_b|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);
/// Max over coordinates of the two-sample KS distance.
double ks_coordinatewise(const std::vector<Vector>& a, const std::vector<Vector>& b);

struct RateFitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

/// Least squares of log y on log x.
RateFitResult fit_loglog(std::span<const double> x, std::span<const double> y);

struct TheoryCheckReport {
  std::string name;
  std::vector<std::pair<std::string, double>> measured;
  std::vector<std::pair<std::string, double>> bounds;
  bool passed = false;
  std::size_t replicates = 0;
  std::string summary;
};

struct SupRateConfig {
  std::vector<std::size_t> sample_sizes = {10, 100, 1000, 10000};
  std::size_t replicates = 2000;
  double band = 0.25;  // relative half-width around 1/(2 pi)
};

struct MinGapConfig {
  std::size_t dimension = 3;
  double theta = 1e3;
  std::size_t sample_size = 20;
  std::size_t replicates = 500;
};

struct ConcentrationConfig {
  std::size_t dimension = 5;
  std::vector<double> thetas = {10.0, 100.0, 1000.0, 10000.0};
  std::size_t draws = 100000;
  double slope_tolerance = 0.05;
  double moment_theta = 100.0;
  std::size_t moment_draws = 1000000;
  double moment_tolerance = 0.02;
};

struct TailBoundConfig {
  std::vector<std::size_t> sample_sizes = {10, 50, 200};
  double p = 1.0;
  std::size_t replicates = 2000;
};

struct FidelityConfig {
  std::size_t draws = 2000;
  std::size_t oracle_draws = 5000;
  std::size_t particles = 2000;
  std::size_t particles_low = 100;
  std::size_t steps = 20;
  double lambda = 9.0;
  double gamma = 1.0;  // epsilon = gamma
  std::size_t seeds = 10;
  std::size_t trend_required = 8;
  double ks_threshold = 0.08;
};

/// Right side of the tail bound for the triangular density 1 - |x| on [-1, 1]:
/// p int_0^1 exp(-N (2r - r^2)) r^(p-1) dr by composite Simpson.
double triangular_tail_bound(std::size_t n, double p);

/// Exact draws from the d = 3 two-component mixture at +-2 (variance 0.25)
/// truncated to [-6, 6]^3.
std::vector<Vector> mixture_oracle(std::size_t n, Rng& rng);
/// Unnormalized log-density of the same mixture.
double mixture_log_density(std::span<const double> x);

TheoryCheckReport check_sup_rate(const SupRateConfig& config, const Rng& rng);
TheoryCheckReport check_min_gap(const MinGapConfig& config, const Rng& rng);
TheoryCheckReport check_concentration(const ConcentrationConfig& config, const Rng& rng,
                                      RateFitResult* fit = nullptr);
TheoryCheckReport check_lemma_tail_bound(const TailBoundConfig& config, const Rng& rng);
TheoryCheckReport check_sampler_fidelity(const FidelityConfig& config, const Rng& rng);

/// Check ids: lemma21, th24, th28, th29, th45.
const std::vector<std::string>& theory_check_names();

/// Runs one check by id, or every check for "all". Throws UnknownName.
std::vector<TheoryCheckReport> run_theory_check(std::string_view id, std::uint64_t seed);

}  // namespace zopt
