#include "sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"

namespace zopt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string format_vector(std::span<const double> v) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace

std::vector<std::string> SamplerParams::validate() const {
  if (particle_count == 0) throw InvalidArgument("particle_count must be positive");
  if (step_count == 0) throw InvalidArgument("step_count must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be positive");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("gamma must be positive");
  }
  if (!(epsilon > 0.0) || !(epsilon <= gamma)) {
    throw InvalidArgument("epsilon must lie in (0, gamma]");
  }
  std::vector<std::string> warnings;
  if (lambda < 9.0) {
    warnings.push_back("lambda < 9: the particle-approximation error bound assumes lambda >= 9");
  }
  return warnings;
}

double LogTarget::operator()(std::span<const double> x) const {
  if (!support_box.contains(x)) return kNegInf;
  return log_density(x);
}

LogTarget make_log_target(std::function<double(std::span<const double>)> log_density,
                          SearchBox box) {
  box.validate();
  double r2 = 0.0;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const double m = std::max(std::abs(box.lower[i]), std::abs(box.upper[i]));
    r2 += m * m;
  }
  LogTarget target;
  target.log_density = std::move(log_density);
  target.support_box = std::move(box);
  target.support_bound = std::sqrt(r2);
  return target;
}

ParticleSet::ParticleSet(std::size_t count, std::size_t dim)
    : count_(count), dim_(dim), data_(count * dim, 0.0), half_norm2_(count, 0.0) {}

ParticleSet ParticleSet::draw(std::size_t count, std::size_t dim, Rng& rng) {
  ParticleSet p(count, dim);
  for (double& v : p.data_) v = rng.normal();
  p.refresh_norms();
  return p;
}

void ParticleSet::refresh_norms() {
  for (std::size_t i = 0; i < count_; ++i) {
    double s = 0.0;
    for (double v : (*this)[i]) s += v * v;
    half_norm2_[i] = 0.5 * s;
  }
}

ScheduleValues schedule_eval(double t, const SamplerParams& params) {
  if (!(t >= 0.0 && t < 1.0)) {
    throw InvalidArgument("schedule evaluated at t = " + std::to_string(t) +
                          "; sigma_t vanishes at t = 1");
  }
  ScheduleValues s;
  s.sigma = 1.0 - t;
  s.beta = t;
  s.dsigma = -1.0;
  s.dbeta = 1.0;
  s.ell = params.epsilon * s.beta + params.gamma * s.sigma;
  s.tau = std::sqrt(params.lambda * s.ell / s.sigma);
  return s;
}

namespace {

// Shared inner loop: log-weight of one particle given the schedule.
double log_weight_at(std::span<const double> x, std::span<const double> xi,
                     double half_xi2, const ScheduleValues& s, const LogTarget& target,
                     std::span<double> scratch) {
  const double fwd = s.tau * s.beta;
  const double back = s.tau * s.sigma;
  double a2 = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double a = x[j] + fwd * xi[j];
    a2 += a * a;
    scratch[j] = x[j] - back * xi[j];
  }
  const double lf = target(scratch);
  if (lf == kNegInf) return kNegInf;
  return -s.sigma * a2 / (2.0 * s.ell) + half_xi2 + lf;
}

}  // namespace

double log_weight(std::span<const double> x, std::span<const double> xi, double t,
                  const LogTarget& target, const SamplerParams& params) {
  const ScheduleValues s = schedule_eval(t, params);
  double half_xi2 = 0.0;
  for (double v : xi) half_xi2 += 0.5 * v * v;
  Vector scratch(x.size());
  return log_weight_at(x, xi, half_xi2, s, target, scratch);
}

Vector log_weights(std::span<const double> x, double t, const ParticleSet& particles,
                   const LogTarget& target, const SamplerParams& params) {
  const ScheduleValues s = schedule_eval(t, params);
  Vector scratch(x.size());
  Vector lw(particles.size());
  for (std::size_t i = 0; i < particles.size(); ++i) {
    lw[i] = log_weight_at(x, particles[i], particles.half_norm2(i), s, target, scratch);
  }
  return lw;
}

DriftResult drift_from_log_weights(std::span<const double> log_w,
                                   const ParticleSet& particles, double scale) {
  if (log_w.size() != particles.size() || log_w.empty()) {
    throw InvalidArgument("log-weight count does not match the particle count");
  }
  const double max_lw = *std::max_element(log_w.begin(), log_w.end());
  if (max_lw == kNegInf || std::isnan(max_lw)) {
    throw DegenerateWeights(
        "all importance weights vanished; widen gamma, add particles or lower theta");
  }
  const std::size_t d = particles.dim();
  Vector acc(d, 0.0);
  double sum_w = 0.0;
  double sum_w2 = 0.0;
  for (std::size_t i = 0; i < particles.size(); ++i) {
    const double w = std::exp(log_w[i] - max_lw);
    if (w == 0.0) continue;
    sum_w += w;
    sum_w2 += w * w;
    const auto xi = particles[i];
    for (std::size_t j = 0; j < d; ++j) acc[j] += w * xi[j];
  }
  DriftResult out;
  out.drift.resize(d);
  for (std::size_t j = 0; j < d; ++j) out.drift[j] = scale * (acc[j] / sum_w);
  out.diagnostics.max_log_weight = max_lw;
  out.diagnostics.effective_sample_size = sum_w * sum_w / sum_w2;
  return out;
}

DriftResult drift_mc(std::span<const double> x, double t, const ParticleSet& particles,
                     const LogTarget& target, const SamplerParams& params) {
  const ScheduleValues s = schedule_eval(t, params);
  const Vector lw = log_weights(x, t, particles, target, params);
  return drift_from_log_weights(lw, particles, s.tau * s.dsigma);
}

Vector drift_mc_displacement_form(std::span<const double> x, double t,
                                  const ParticleSet& particles, const LogTarget& target,
                                  const SamplerParams& params) {
  const ScheduleValues s = schedule_eval(t, params);
  const Vector lw = log_weights(x, t, particles, target, params);
  const double max_lw = *std::max_element(lw.begin(), lw.end());
  if (max_lw == kNegInf) throw DegenerateWeights("all importance weights vanished");
  const std::size_t d = x.size();
  Vector acc(d, 0.0);
  double sum_w = 0.0;
  for (std::size_t i = 0; i < particles.size(); ++i) {
    const double w = std::exp(lw[i] - max_lw);
    if (w == 0.0) continue;
    sum_w += w;
    const auto xi = particles[i];
    for (std::size_t j = 0; j < d; ++j) acc[j] += w * (x[j] - s.tau * s.sigma * xi[j]);
  }
  Vector b(d);
  for (std::size_t j = 0; j < d; ++j) b[j] = (s.dsigma / s.sigma) * (x[j] - acc[j] / sum_w);
  return b;
}

Vector exact_drift_gaussian(std::span<const double> x, double t, double s,
                            const SamplerParams& params) {
  const ScheduleValues sv = schedule_eval(t, params);
  if (!(t > 0.0)) throw InvalidArgument("exact drift requires t in (0, 1)");
  const double s2 = s * s;
  const double shrink =
      1.0 - sv.beta * s2 / (sv.ell * sv.sigma + sv.beta * sv.beta * s2);
  Vector b(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) b[j] = (sv.dsigma / sv.sigma) * x[j] * shrink;
  return b;
}

ChainState euler_step(ChainState chain, double t, double dt, std::span<const double> drift,
                      const SamplerParams& params, std::span<const double> noise) {
  if (!(dt > 0.0)) throw InvalidArgument("euler_step requires dt > 0");
  const ScheduleValues s = schedule_eval(t, params);
  const double diffusion = std::sqrt(params.epsilon * s.dbeta * dt);
  for (std::size_t j = 0; j < chain.position.size(); ++j) {
    chain.position[j] += drift[j] * dt + diffusion * noise[j];
  }
  for (double v : chain.position) {
    if (!std::isfinite(v)) {
      throw NumericError("non-finite chain position at step " +
                         std::to_string(chain.step_index) + ", t = " + std::to_string(t) +
                         ", drift " + format_vector(drift));
    }
  }
  ++chain.step_index;
  return chain;
}

Vector run_chain(const LogTarget& target, const SamplerParams& params, Rng& rng) {
  params.validate();
  const std::size_t d = target.dim();
  // Separate substreams so chains that differ only in particle_count share
  // their initial point and Brownian increments.
  Rng x0_rng = rng.derive("x0");
  Rng particle_rng = rng.derive("particles");
  Rng noise_rng = rng.derive("noise");
  ChainState chain;
  chain.position.resize(d);
  const double sd0 = std::sqrt(params.gamma);
  for (double& v : chain.position) v = sd0 * x0_rng.normal();
  ParticleSet particles = ParticleSet::draw(params.particle_count, d, particle_rng);

  const double dt = 1.0 / static_cast<double>(params.step_count);
  Vector noise(d);
  for (std::size_t k = 0; k < params.step_count; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (params.redraw_particles && k > 0) {
      particles = ParticleSet::draw(params.particle_count, d, particle_rng);
    }
    const DriftResult b = drift_mc(chain.position, t, particles, target, params);
    for (double& v : noise) v = noise_rng.normal();
    chain = euler_step(std::move(chain), t, dt, b.drift, params, noise);
  }
  return chain.position;
}

std::vector<Vector> sample_batch(const LogTarget& target, const SamplerParams& params,
                                 std::size_t count, const Rng& rng) {
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng chain_rng = rng.derive(i);
    try {
      out.push_back(run_chain(target, params, chain_rng));
    } catch (const DegenerateWeights& e) {
      throw DegenerateWeights("chain " + std::to_string(i) + ": " + e.what());
    } catch (const NumericError& e) {
      throw NumericError("chain " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

double marginal_density_mc(std::span<const double> x, double t,
                           const ParticleSet& particles, const LogTarget& target,
                           const SamplerParams& params) {
  const ScheduleValues s = schedule_eval(t, params);
  const Vector lw = log_weights(x, t, particles, target, params);
  const double max_lw = *std::max_element(lw.begin(), lw.end());
  if (max_lw == kNegInf) return 0.0;
  double sum = 0.0;
  for (double v : lw) sum += std::exp(v - max_lw);
  const double d = static_cast<double>(x.size());
  const double log_mean = max_lw + std::log(sum / static_cast<double>(lw.size()));
  return std::exp(d * std::log(s.tau * std::sqrt(s.sigma / s.ell)) + log_mean);
}

}  // namespace zopt
