#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "error.hpp"
#include "special.hpp"
#include "theory.hpp"

using namespace zopt;

namespace {

double normal_cdf(double x, double sd) { return 0.5 * std::erfc(-x / (sd * std::numbers::sqrt2)); }

double sq_norm(const Vector& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace

TEST(EllTheta, ExponentialCase) {
  for (std::size_t d : {1u, 2u, 4u}) {
    const RadialPotentialSpec spec{d, static_cast<double>(d), 3.0, 7.0};
    for (double r : {0.0, 0.01, 0.2, 1.0}) {
      EXPECT_NEAR(ell_theta_radial(spec, r), 1.0 - std::exp(-r * 7.0), 1e-13);
    }
  }
}

// The small-ball bound m r^(d/m) / (d Gamma(d/m)) holds as an upper bound;
// the matching lower bound carries the factor e^(-theta r).
TEST(EllTheta, SmallBallBounds) {
  for (std::size_t d : {1u, 3u, 6u}) {
    for (double m : {0.5, 1.0, 2.0, 3.0}) {
      for (double theta : {1.0, 4.0}) {
        const RadialPotentialSpec spec{d, m, 1.0, theta};
        const double a = static_cast<double>(d) / m;
        for (double r = 0.0; r <= 1.0; r += 0.05) {
          const double poly = m * std::pow(theta * r, a) / (static_cast<double>(d) * gamma_fn(a));
          const double ell = ell_theta_radial(spec, r);
          EXPECT_LE(ell, poly * (1.0 + 1e-12) + 1e-300) << d << " " << m << " " << r;
          EXPECT_GE(ell, std::exp(-theta * r) * poly * (1.0 - 1e-12)) << d << " " << m << " " << r;
        }
      }
    }
  }
}

TEST(EllTheta, MonotoneAndBounded) {
  const RadialPotentialSpec base{3, 2.0, 1.0, 1.0};
  double prev = 0.0;
  for (double r = 0.0; r < 20.0; r += 0.1) {
    const double v = ell_theta_radial(base, r);
    EXPECT_GE(v, prev);
    EXPECT_LE(v, 1.0);
    prev = v;
  }
  prev = 0.0;
  for (double theta = 1.0; theta < 1e4; theta *= 1.5) {
    RadialPotentialSpec s = base;
    s.theta = theta;
    const double v = ell_theta_radial(s, 0.3);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(EllTheta, MatchesMonteCarloOfRadialSampler) {
  const RadialPotentialSpec spec{3, 2.0, 1.0, 10.0};
  Rng rng(21, 0);
  const auto xs = gibbs_radial_sampler(spec, 200000, rng);
  double hits = 0.0;
  for (const Vector& x : xs) hits += sq_norm(x) < 0.5;
  const double n = static_cast<double>(xs.size());
  const double p = hits / n;
  const double se = std::sqrt(p * (1.0 - p) / n);
  EXPECT_NEAR(p, ell_theta_radial(spec, 0.5), 3.0 * se);
}

TEST(RadialSampler, GaussianCaseMatchesNormalCoordinates) {
  const double theta = 8.0;
  const RadialPotentialSpec spec{4, 2.0, 1.0, theta};
  Rng rng(22, 0);
  const auto xs = gibbs_radial_sampler(spec, 10000, rng);
  const double sd = std::sqrt(1.0 / (2.0 * theta));
  for (std::size_t j = 0; j < 4; ++j) {
    std::vector<double> col;
    for (const Vector& x : xs) col.push_back(x[j]);
    EXPECT_LT(ks_one_sample(col, [sd](double v) { return normal_cdf(v, sd); }), 0.02) << j;
  }
}

TEST(RadialSampler, SecondMoment) {
  const RadialPotentialSpec spec{3, 2.0, 1.0, 5.0};
  Rng rng(23, 0);
  const auto xs = gibbs_radial_sampler(spec, 1000000, rng);
  double m = 0.0;
  for (const Vector& x : xs) m += sq_norm(x);
  m /= static_cast<double>(xs.size());
  EXPECT_NEAR(m, 3.0 / (2.0 * 5.0), 0.02 * 0.3);
}

TEST(RadialSampler, TemperatureScaling) {
  RadialPotentialSpec spec{2, 2.0, 1.0, 3.0};
  Rng a(24, 0), b(24, 0);
  const auto cold = gibbs_radial_sampler(spec, 50000, a);
  spec.theta = 48.0;
  const auto hot = gibbs_radial_sampler(spec, 50000, b);
  double rc = 0.0, rh = 0.0;
  for (std::size_t i = 0; i < cold.size(); ++i) {
    rc += std::sqrt(sq_norm(cold[i]));
    rh += std::sqrt(sq_norm(hot[i]));
  }
  // Same stream, so each radius scales exactly by 16^(1/2).
  EXPECT_NEAR(rc / rh, 4.0, 1e-9);
}

TEST(RadialSampler, LinearPotentialRadiusIsGamma) {
  // m = 1, d = 2: |X| ~ Gamma(2, theta kappa), mean 2 / (theta kappa).
  const RadialPotentialSpec spec{2, 1.0, 2.0, 5.0};
  Rng rng(25, 0);
  const auto xs = gibbs_radial_sampler(spec, 200000, rng);
  std::vector<double> radii;
  for (const Vector& x : xs) radii.push_back(std::sqrt(sq_norm(x)));
  EXPECT_LT(ks_one_sample(radii, [](double r) { return 1.0 - std::exp(-10.0 * r) * (1.0 + 10.0 * r); }),
            0.005);
}

TEST(RadialSpec, Validation) {
  EXPECT_THROW((RadialPotentialSpec{0, 2.0, 1.0, 1.0}.validate()), InvalidArgument);
  EXPECT_THROW((RadialPotentialSpec{2, -1.0, 1.0, 1.0}.validate()), InvalidArgument);
  EXPECT_THROW((RadialPotentialSpec{2, 2.0, 0.0, 1.0}.validate()), InvalidArgument);
  EXPECT_NO_THROW((RadialPotentialSpec{2, 2.0, 1.0, 1.0}.validate()));
}

TEST(Ks, HandValues) {
  EXPECT_DOUBLE_EQ(ks_one_sample({0.5}, [](double x) { return x; }), 0.5);
  EXPECT_DOUBLE_EQ(ks_one_sample({0.25, 0.75}, [](double x) { return x; }), 0.25);
  EXPECT_DOUBLE_EQ(ks_two_sample({1.0, 2.0}, {1.5}), 0.5);
  EXPECT_DOUBLE_EQ(ks_two_sample({1.0, 2.0, 3.0}, {3.0, 1.0, 2.0}), 0.0);
  EXPECT_DOUBLE_EQ(ks_two_sample({1.0, 2.0}, {5.0, 6.0}), 1.0);
  EXPECT_DOUBLE_EQ(ks_coordinatewise({{0.0, 0.0}, {1.0, 1.0}}, {{0.0, 5.0}, {1.0, 6.0}}), 1.0);
  EXPECT_THROW(ks_two_sample({}, {1.0}), InvalidArgument);
}

TEST(Ks, OracleAgainstOracleBelowCriticalValue) {
  Rng a(26, 0), b(26, 1);
  const auto x = mixture_oracle(5000, a);
  const auto y = mixture_oracle(2000, b);
  for (std::size_t j = 0; j < 3; ++j) {
    std::vector<double> cx, cy;
    for (const Vector& v : x) cx.push_back(v[j]);
    for (const Vector& v : y) cy.push_back(v[j]);
    EXPECT_LT(ks_two_sample(cx, cy), 1.358 * std::sqrt((5000.0 + 2000.0) / (5000.0 * 2000.0)));
  }
}

TEST(Mixture, OracleStaysInBoxAndIsSymmetric) {
  Rng rng(27, 0);
  const auto xs = mixture_oracle(20000, rng);
  double mean = 0.0, pos = 0.0;
  for (const Vector& x : xs) {
    for (double v : x) EXPECT_LE(std::abs(v), 6.0);
    mean += x[0];
    pos += x[0] > 0.0;
  }
  EXPECT_NEAR(mean / xs.size(), 0.0, 0.06);
  EXPECT_NEAR(pos / xs.size(), 0.5, 0.015);
  const Vector p = {2.0, 2.0, 2.0}, m = {-2.0, -2.0, -2.0}, o = {0.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(mixture_log_density(p), mixture_log_density(m));
  EXPECT_NEAR(mixture_log_density(p), std::log(0.5), 1e-12);
  // Both components sit at squared distance 12 with variance 0.25.
  EXPECT_NEAR(mixture_log_density(o), -24.0, 1e-12);
}

TEST(FitLogLog, RecoversPowerLaw) {
  const std::vector<double> x = {1.0, 10.0, 100.0, 1000.0};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -0.5));
  const RateFitResult r = fit_loglog(x, y);
  EXPECT_NEAR(r.slope, -0.5, 1e-12);
  EXPECT_NEAR(r.intercept, std::log(3.0), 1e-12);
  EXPECT_LT(r.max_residual, 1e-12);
  EXPECT_THROW(fit_loglog(std::vector<double>{1.0}, std::vector<double>{1.0}), InvalidArgument);
}

TEST(TailBound, MatchesDawsonForm) {
  // p = 1: int_0^1 exp(-N(2r - r^2)) dr = D(sqrt N) / sqrt N with D Dawson's integral.
  EXPECT_NEAR(triangular_tail_bound(1, 1.0), 0.5380795069127684, 1e-10);
  for (std::size_t n : {50u, 200u, 1000u}) {
    const double nn = static_cast<double>(n);
    double asym = 0.0, term = 1.0;
    for (int k = 0; k < 6; ++k) {
      asym += term;
      term *= (2.0 * k + 1.0) / (2.0 * nn);  // 1, 1/(2N), 3/(4N^2), 15/(8N^3), ...
    }
    asym /= 2.0 * nn;
    EXPECT_NEAR(triangular_tail_bound(n, 1.0), asym, 1e-6 * asym) << n;
  }
  EXPECT_GT(triangular_tail_bound(10, 1.0), triangular_tail_bound(100, 1.0));
  EXPECT_THROW(triangular_tail_bound(10, 0.5), InvalidArgument);
}

TEST(TailBound, SingleDrawAndExactLeftSide) {
  // With N draws, E min|X| = 1 / (2N + 1) for the triangular density.
  TailBoundConfig config;
  config.sample_sizes = {1, 20};
  config.replicates = 20000;
  const TheoryCheckReport r = check_lemma_tail_bound(config, Rng(28, 0));
  EXPECT_TRUE(r.passed) << r.summary;
  EXPECT_NEAR(r.measured[0].second, 1.0 / 3.0, 4.0 * r.measured[1].second);
  EXPECT_NEAR(r.measured[2].second, 1.0 / 41.0, 4.0 * r.measured[3].second);
}

TEST(SupRate, ConstantIsOneOverTwoPiInTwoDimensions) {
  const double d = 2.0, p = 1.0;
  const double c = std::pow(gamma_fn(2.0 * p / d + 1.0), 1.0 / p) *
                   std::pow(gamma_fn(d / 2.0 + 1.0), 2.0 / d) / (2.0 * std::numbers::pi);
  EXPECT_NEAR(c, 1.0 / (2.0 * std::numbers::pi), 1e-14);
}

TEST(Checks, MinGapSmallConfigPassesAndIsDeterministic) {
  MinGapConfig config;
  config.replicates = 200;
  const TheoryCheckReport a = check_min_gap(config, Rng(29, 0));
  const TheoryCheckReport b = check_min_gap(config, Rng(29, 0));
  EXPECT_TRUE(a.passed) << a.summary;
  ASSERT_EQ(a.measured.size(), b.measured.size());
  for (std::size_t i = 0; i < a.measured.size(); ++i) {
    EXPECT_EQ(a.measured[i].second, b.measured[i].second);
  }
}

TEST(Checks, ConcentrationSmallConfig) {
  ConcentrationConfig config;
  config.draws = 20000;
  config.moment_draws = 200000;
  RateFitResult fit;
  const TheoryCheckReport r = check_concentration(config, Rng(30, 0), &fit);
  EXPECT_TRUE(r.passed) << r.summary;
  EXPECT_NEAR(fit.slope, -0.5, 0.05);
}

TEST(Checks, NamesAndUnknownId) {
  const auto& names = theory_check_names();
  EXPECT_EQ(names, (std::vector<std::string>{"lemma21", "th24", "th28", "th29", "th45"}));
  EXPECT_THROW(run_theory_check("th99", 1), UnknownName);
}
