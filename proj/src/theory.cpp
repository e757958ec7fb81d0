#include "theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "error.hpp"
#include "sampler.hpp"
#include "special.hpp"

namespace zopt {

namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(std::span<const double> v) {
  MeanSe out;
  if (v.empty()) return out;
  const double n = static_cast<double>(v.size());
  for (double x : v) out.mean += x;
  out.mean /= n;
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    out.se = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::vector<double> column(const std::vector<Vector>& rows, std::size_t j) {
  std::vector<double> c(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) c[i] = rows[i][j];
  return c;
}

constexpr double kMixtureCenter = 2.0;
constexpr double kMixtureVariance = 0.25;
constexpr double kMixtureHalfWidth = 6.0;
constexpr std::size_t kMixtureDim = 3;

}  // namespace

void RadialPotentialSpec::validate() const {
  if (dimension == 0) throw InvalidArgument("radial potential needs d >= 1");
  if (!(exponent > 0.0) || !(kappa > 0.0) || !(theta > 0.0)) {
    throw InvalidArgument("radial potential needs m, kappa, theta > 0");
  }
}

double ell_theta_radial(const RadialPotentialSpec& spec, double r) {
  spec.validate();
  if (!(r >= 0.0)) throw InvalidArgument("ell_theta_radial requires r >= 0");
  return gamma_p(static_cast<double>(spec.dimension) / spec.exponent, r * spec.theta);
}

std::vector<Vector> gibbs_radial_sampler(const RadialPotentialSpec& spec, std::size_t n,
                                         Rng& rng) {
  spec.validate();
  if (n == 0) throw InvalidArgument("gibbs_radial_sampler requires n >= 1");
  const std::size_t d = spec.dimension;
  const double shape = static_cast<double>(d) / spec.exponent;
  std::vector<Vector> out(n, Vector(d));
  for (Vector& x : out) {
    // theta kappa rho^m ~ Gamma(d/m, 1)
    const double g = gamma_p_inverse(shape, rng.uniform());
    const double rho = std::pow(g / (spec.theta * spec.kappa), 1.0 / spec.exponent);
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (double& v : x) {
        v = rng.normal();
        norm2 += v * v;
      }
    } while (norm2 == 0.0);
    const double s = rho / std::sqrt(norm2);
    for (double& v : x) v *= s;
  }
  return out;
}

double ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InvalidArgument("KS statistic of an empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("KS statistic of an empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_coordinatewise(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  if (a.empty() || b.empty()) throw InvalidArgument("KS statistic of an empty sample");
  double d = 0.0;
  for (std::size_t j = 0; j < a.front().size(); ++j) {
    d = std::max(d, ks_two_sample(column(a, j), column(b, j)));
  }
  return d;
}

RateFitResult fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidArgument("log-log fit needs at least two matching points");
  }
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidArgument("log-log fit needs positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("log-log fit needs distinct abscissae");
  RateFitResult r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  for (std::size_t i = 0; i < n; ++i) {
    r.max_residual = std::max(r.max_residual, std::abs(ly[i] - (r.intercept + r.slope * lx[i])));
  }
  return r;
}

double triangular_tail_bound(std::size_t n, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("tail bound quadrature supports p >= 1");
  constexpr std::size_t kIntervals = 200000;
  const double h = 1.0 / kIntervals;
  const double nn = static_cast<double>(n);
  auto g = [&](double r) { return std::exp(-nn * (2.0 * r - r * r)) * std::pow(r, p - 1.0); };
  double sum = g(0.0) + g(1.0);
  for (std::size_t i = 1; i < kIntervals; ++i) {
    sum += (i % 2 ? 4.0 : 2.0) * g(static_cast<double>(i) * h);
  }
  return p * sum * h / 3.0;
}

double mixture_log_density(std::span<const double> x) {
  double a = 0.0, b = 0.0;
  for (double v : x) {
    a += (v - kMixtureCenter) * (v - kMixtureCenter);
    b += (v + kMixtureCenter) * (v + kMixtureCenter);
  }
  a *= -0.5 / kMixtureVariance;
  b *= -0.5 / kMixtureVariance;
  const double m = std::max(a, b);
  return m + std::log(0.5 * std::exp(a - m) + 0.5 * std::exp(b - m));
}

std::vector<Vector> mixture_oracle(std::size_t n, Rng& rng) {
  const double sd = std::sqrt(kMixtureVariance);
  std::vector<Vector> out;
  out.reserve(n);
  Vector x(kMixtureDim);
  while (out.size() < n) {
    const double c = rng.uniform() < 0.5 ? kMixtureCenter : -kMixtureCenter;
    bool inside = true;
    for (double& v : x) {
      v = c + sd * rng.normal();
      inside = inside && std::abs(v) <= kMixtureHalfWidth;
    }
    if (inside) out.push_back(x);
  }
  return out;
}

TheoryCheckReport check_sup_rate(const SupRateConfig& config, const Rng& rng) {
  if (config.sample_sizes.empty() || config.replicates == 0) {
    throw InvalidArgument("sup-rate check needs sample sizes and replicates");
  }
  const double f_star = 1.0 / (2.0 * std::numbers::pi);
  TheoryCheckReport report;
  report.name = "th24";
  report.replicates = config.replicates;
  double last = 0.0;
  for (std::size_t n : config.sample_sizes) {
    Rng r = rng.derive("th24").derive(n);
    std::vector<double> gaps(config.replicates);
    for (double& gap : gaps) {
      double min_r2 = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        const double a = r.normal();
        const double b = r.normal();
        min_r2 = std::min(min_r2, a * a + b * b);
      }
      gap = -f_star * std::expm1(-0.5 * min_r2);
    }
    const MeanSe ms = mean_se(gaps);
    last = static_cast<double>(n) * ms.mean;
    report.measured.emplace_back("N*gap@N=" + std::to_string(n), last);
  }
  const double lo = (1.0 - config.band) * f_star;
  const double hi = (1.0 + config.band) * f_star;
  report.bounds = {{"lower", lo}, {"upper", hi}, {"1/(2pi)", f_star}};
  report.passed = last >= lo && last <= hi;
  report.summary = "N*E[f*-max f] = " + fmt(last) + " vs [" + fmt(lo) + ", " + fmt(hi) + "]";
  return report;
}

TheoryCheckReport check_min_gap(const MinGapConfig& config, const Rng& rng) {
  RadialPotentialSpec spec{config.dimension, 2.0, 1.0, config.theta};
  Rng r = rng.derive("th28");
  std::vector<double> stat(config.replicates);
  for (double& s : stat) {
    const std::vector<Vector> xs = gibbs_radial_sampler(spec, config.sample_size, r);
    double min_u = std::numeric_limits<double>::infinity();
    for (const Vector& x : xs) {
      double u = 0.0;
      for (double v : x) u += v * v;
      min_u = std::min(min_u, u);
    }
    s = -std::expm1(-min_u);
  }
  const MeanSe ms = mean_se(stat);
  const double d = static_cast<double>(config.dimension);
  const double bound =
      d / (config.theta * 2.0) + std::exp(-static_cast<double>(config.sample_size) / 2.0);
  TheoryCheckReport report;
  report.name = "th28";
  report.replicates = config.replicates;
  report.measured = {{"E[1-exp(-min U)]", ms.mean}, {"standard_error", ms.se}};
  report.bounds = {{"bound", bound}, {"bound+3se", bound + 3.0 * ms.se}};
  report.passed = ms.mean <= bound + 3.0 * ms.se;
  report.summary = fmt(ms.mean) + " <= " + fmt(bound) + " + 3*" + fmt(ms.se);
  return report;
}

TheoryCheckReport check_concentration(const ConcentrationConfig& config, const Rng& rng,
                                      RateFitResult* fit_out) {
  if (config.thetas.size() < 2) throw InvalidArgument("concentration check needs >= 2 thetas");
  std::vector<double> means;
  TheoryCheckReport report;
  report.name = "th29";
  report.replicates = config.draws;
  for (double theta : config.thetas) {
    Rng r = rng.derive("th29").derive(std::to_string(theta));
    const RadialPotentialSpec spec{config.dimension, 2.0, 1.0, theta};
    const std::vector<Vector> xs = gibbs_radial_sampler(spec, config.draws, r);
    double sum = 0.0;
    for (const Vector& x : xs) {
      double n2 = 0.0;
      for (double v : x) n2 += v * v;
      sum += std::sqrt(n2);
    }
    means.push_back(sum / static_cast<double>(xs.size()));
    report.measured.emplace_back("E|X|@theta=" + fmt(theta), means.back());
  }
  const RateFitResult fit = fit_loglog(config.thetas, means);
  if (fit_out) *fit_out = fit;

  Rng r = rng.derive("th29-moment");
  const RadialPotentialSpec mspec{config.dimension, 2.0, 1.0, config.moment_theta};
  const std::vector<Vector> xs = gibbs_radial_sampler(mspec, config.moment_draws, r);
  double m2 = 0.0;
  for (const Vector& x : xs) {
    for (double v : x) m2 += v * v;
  }
  m2 /= static_cast<double>(xs.size());
  const double exact = static_cast<double>(config.dimension) / (2.0 * config.moment_theta);
  const double rel = std::abs(m2 / exact - 1.0);

  report.measured.emplace_back("slope", fit.slope);
  report.measured.emplace_back("max_residual", fit.max_residual);
  report.measured.emplace_back("E|X|^2", m2);
  report.measured.emplace_back("moment_relative_error", rel);
  report.bounds = {{"slope_target", -0.5},
                   {"slope_tolerance", config.slope_tolerance},
                   {"E|X|^2_exact", exact},
                   {"moment_tolerance", config.moment_tolerance}};
  const bool slope_ok = std::abs(fit.slope + 0.5) <= config.slope_tolerance;
  const bool moment_ok = rel <= config.moment_tolerance;
  report.passed = slope_ok && moment_ok;
  report.summary = "slope " + fmt(fit.slope) + ", E|X|^2 relative error " + fmt(rel);
  return report;
}

TheoryCheckReport check_lemma_tail_bound(const TailBoundConfig& config, const Rng& rng) {
  TheoryCheckReport report;
  report.name = "lemma21";
  report.replicates = config.replicates;
  report.passed = true;
  std::ostringstream summary;
  for (std::size_t n : config.sample_sizes) {
    Rng r = rng.derive("lemma21").derive(n);
    std::vector<double> lhs(config.replicates);
    for (double& v : lhs) {
      // max f = 1 - min |X| for the triangular density.
      double min_abs = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double x = r.uniform() + r.uniform() - 1.0;
        min_abs = std::min(min_abs, std::abs(x));
      }
      v = std::pow(min_abs, config.p);
    }
    const MeanSe ms = mean_se(lhs);
    const double rhs = triangular_tail_bound(n, config.p);
    const bool ok = ms.mean <= rhs + 3.0 * ms.se;
    report.passed = report.passed && ok;
    report.measured.emplace_back("lhs@N=" + std::to_string(n), ms.mean);
    report.measured.emplace_back("se@N=" + std::to_string(n), ms.se);
    report.bounds.emplace_back("rhs@N=" + std::to_string(n), rhs);
    summary << "N=" << n << ": " << fmt(ms.mean) << " <= " << fmt(rhs) << (ok ? "" : " FAILED")
            << "; ";
  }
  report.summary = summary.str();
  return report;
}

TheoryCheckReport check_sampler_fidelity(const FidelityConfig& config, const Rng& rng) {
  if (config.seeds == 0) throw InvalidArgument("fidelity check needs at least one seed");
  SearchBox box = SearchBox::cube(kMixtureDim, -kMixtureHalfWidth, kMixtureHalfWidth);
  const LogTarget target = make_log_target(mixture_log_density, box);
  SamplerParams params;
  params.step_count = config.steps;
  params.lambda = config.lambda;
  params.gamma = config.gamma;
  params.epsilon = config.gamma;

  TheoryCheckReport report;
  report.name = "th45";
  report.replicates = config.draws;
  std::size_t wins = 0;
  double ks_main = 0.0;
  for (std::size_t s = 0; s < config.seeds; ++s) {
    const Rng seed_rng = rng.derive("th45").derive(s);
    Rng oracle_rng = seed_rng.derive("oracle");
    const std::vector<Vector> oracle = mixture_oracle(config.oracle_draws, oracle_rng);
    params.particle_count = config.particles;
    const double ks_high = ks_coordinatewise(
        sample_batch(target, params, config.draws, seed_rng.derive("high")), oracle);
    params.particle_count = config.particles_low;
    const double ks_low = ks_coordinatewise(
        sample_batch(target, params, config.draws, seed_rng.derive("low")), oracle);
    if (s == 0) ks_main = ks_high;
    if (ks_high < ks_low) ++wins;
    report.measured.emplace_back("ks_high@seed=" + std::to_string(s), ks_high);
    report.measured.emplace_back("ks_low@seed=" + std::to_string(s), ks_low);
  }
  report.measured.insert(report.measured.begin(),
                         {{"ks", ks_main}, {"trend_wins", static_cast<double>(wins)}});
  report.bounds = {{"ks_threshold", config.ks_threshold},
                   {"trend_required", static_cast<double>(config.trend_required)}};
  report.passed = ks_main < config.ks_threshold && wins >= config.trend_required;
  report.summary = "KS " + fmt(ks_main) + " (threshold " + fmt(config.ks_threshold) +
                   "), trend " + std::to_string(wins) + "/" + std::to_string(config.seeds);
  return report;
}

const std::vector<std::string>& theory_check_names() {
  static const std::vector<std::string> names = {"lemma21", "th24", "th28", "th29", "th45"};
  return names;
}

std::vector<TheoryCheckReport> run_theory_check(std::string_view id, std::uint64_t seed) {
  const Rng rng(seed, hash_label("theory"));
  auto one = [&](std::string_view name) -> TheoryCheckReport {
    if (name == "lemma21") return check_lemma_tail_bound({}, rng);
    if (name == "th24") return check_sup_rate({}, rng);
    if (name == "th28") return check_min_gap({}, rng);
    if (name == "th29") return check_concentration({}, rng);
    if (name == "th45") return check_sampler_fidelity({}, rng);
    throw UnknownName("unknown check '" + std::string(name) +
                      "'; expected lemma21, th24, th28, th29, th45 or all");
  };
  std::vector<TheoryCheckReport> out;
  if (id == "all") {
    for (const std::string& name : theory_check_names()) out.push_back(one(name));
  } else {
    out.push_back(one(id));
  }
  return out;
}

}  // namespace zopt
