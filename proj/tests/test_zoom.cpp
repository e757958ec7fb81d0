#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "error.hpp"
#include "zoom.hpp"

using namespace zopt;

namespace {

Objective custom(std::string name, std::size_t d, double lo, double hi, ObjectiveFn fn) {
  Objective o;
  o.spec.name = std::move(name);
  o.spec.dimension = d;
  o.spec.box = SearchBox::cube(d, lo, hi);
  o.fn = std::move(fn);
  return o;
}

Objective shifted_parabola() {
  return custom("parabola", 1, -10.0, 10.0,
                [](std::span<const double> x) { return (x[0] - 3.0) * (x[0] - 3.0); });
}

Objective scaled(const Objective& base, double c) {
  Objective o = base;
  o.fn = [fn = base.fn, c](std::span<const double> x) { return c * fn(x); };
  return o;
}

}  // namespace

TEST(ScaledTarget, HandValues) {
  const Objective sphere = make_objective("sphere", 1);
  const Objective wide = custom("sq", 1, -10.0, 10.0, eval_sphere);
  EvalCounter counter;
  const CountedObjective counted(wide, counter);
  const LogTarget t = scaled_log_target(counted, 2.0, Vector{0.5}, Vector{1.0}, wide.spec.box);
  EXPECT_DOUBLE_EQ(t(Vector{2.0}), -8.0);
  // Identity scaling reproduces -theta U.
  const CountedObjective counted2(sphere, counter);
  const LogTarget id = scaled_log_target(counted2, 3.0, Vector{1.0}, Vector{0.0}, sphere.spec.box);
  EXPECT_DOUBLE_EQ(id(Vector{1.5}), -3.0 * 2.25);
  // Decoded point 0.5 * 30 + 1 leaves [-10, 10].
  EXPECT_EQ(t(Vector{30.0}), -std::numeric_limits<double>::infinity());
  EXPECT_NEAR(t.support_box.lower[0], -22.0, 1e-12);
  EXPECT_NEAR(t.support_box.upper[0], 18.0, 1e-12);
  EXPECT_THROW(scaled_log_target(counted, 1.0, Vector{0.0}, Vector{0.0}, wide.spec.box),
               InvalidArgument);
}

TEST(Edu, PowersOfBase) {
  EXPECT_EQ(edu_power(Vector{0.5, 0.5}, 0), (Vector{0.5, 0.5}));
  EXPECT_DOUBLE_EQ(edu_power(Vector{0.5}, 3)[0], 0.0625);
  EXPECT_EQ(edu_power(Vector{1.0}, 1000)[0], 1.0);
  EXPECT_EQ(edu_power(Vector{0.1}, 100000)[0], kAlphaFloor);
}

TEST(Edu, DrawsWithinBounds) {
  ZoomParams p;
  p.alpha_min = 0.2;
  p.alpha_max = 0.6;
  Rng rng(1, 0);
  for (std::size_t k = 0; k < 5; ++k) {
    const Vector a = edu_update(k, rng, p, 50);
    const double e = static_cast<double>(k + 1);
    for (double v : a) {
      EXPECT_GE(v, std::pow(0.2, e) * (1 - 1e-12));
      EXPECT_LE(v, std::pow(0.6, e) * (1 + 1e-12));
    }
  }
}

TEST(Svu, HandValues) {
  // Equal variances in d = 4 normalize to 1/2 per coordinate.
  const std::vector<Vector> s4 = {{1, 1, 1, 1}, {-1, -1, -1, -1}};
  const Vector a = svu_update(Vector{0.8, 0.4, 1.0, 0.2}, s4);
  EXPECT_NEAR(a[0], 0.4, 1e-15);
  EXPECT_NEAR(a[1], 0.2, 1e-15);
  EXPECT_NEAR(a[2], 0.5, 1e-15);
  EXPECT_NEAR(a[3], 0.1, 1e-15);
  EXPECT_NEAR(svu_update(Vector{0.3}, {{1.0}, {5.0}, {2.0}})[0], 0.3, 1e-15);
  EXPECT_EQ(svu_update(Vector{0.3, 0.7}, {{1.0, 2.0}, {1.0, 2.0}}), (Vector{0.3, 0.7}));
  EXPECT_EQ(svu_update(Vector{0.3}, {}), (Vector{0.3}));
  // Variances (1, 0): the flat coordinate collapses to the floor, alpha stays in (0, 1].
  const Vector b = svu_update(Vector{1.0, 1.0}, {{1.0, 3.0}, {-1.0, 3.0}});
  EXPECT_EQ(b[0], 1.0);
  EXPECT_EQ(b[1], kAlphaFloor);
}

TEST(ZoomParams, Validation) {
  ZoomParams p;
  EXPECT_NO_THROW(p.validate(2));
  p.alpha_min = 0.0;
  EXPECT_THROW(p.validate(2), InvalidArgument);
  p = ZoomParams{};
  p.alpha_max = 1.5;
  EXPECT_THROW(p.validate(2), InvalidArgument);
  p = ZoomParams{};
  p.initial_center = Vector{1.0};
  EXPECT_THROW(p.validate(2), InvalidArgument);
  p = ZoomParams{};
  p.theta = 0.0;
  EXPECT_THROW(p.validate(2), InvalidArgument);
}

TEST(AutoGamma, SquaredHalfWidth) {
  ZoomParams p;
  const SamplerParams sp = effective_sampler_params(p, SearchBox{{-1.0, -4.0}, {3.0, 2.0}});
  EXPECT_EQ(sp.gamma, 9.0);
  EXPECT_EQ(sp.epsilon, 9.0);
  p.auto_gamma = false;
  p.sampler.gamma = 2.0;
  p.sampler.epsilon = 1.0;
  EXPECT_EQ(effective_sampler_params(p, SearchBox::cube(1, -5.0, 5.0)).gamma, 2.0);
}

TEST(ZoomStep, RejectionKeepsCenterButUpdatesAlpha) {
  const Objective o = shifted_parabola();
  EvalCounter counter;
  const CountedObjective counted(o, counter);
  ZoomParams p;
  p.sampler.particle_count = 50;
  ZoomState s = initial_zoom_state(o.spec, p, Rng(2, 0));
  s.incumbent_value = -1.0;  // unbeatable
  s.incumbent_point = s.center;
  s.iteration = 2;
  const auto [next, rec] = zoom_step(s, counted, p, Rng(2, 0));
  EXPECT_EQ(next.center, s.center);
  EXPECT_EQ(next.incumbent_value, -1.0);
  EXPECT_NE(next.alpha, s.alpha);
  EXPECT_EQ(next.iteration, 3u);
  EXPECT_EQ(rec.fevals, counter.count());
}

TEST(ZoomStep, AcceptanceLowersIncumbent) {
  const Objective o = shifted_parabola();
  EvalCounter counter;
  const CountedObjective counted(o, counter);
  ZoomParams p;
  p.sampler.particle_count = 50;
  ZoomState s = initial_zoom_state(o.spec, p, Rng(3, 0));
  s.incumbent_value = 1e9;
  const auto [next, rec] = zoom_step(s, counted, p, Rng(3, 0));
  EXPECT_LT(next.incumbent_value, 1e9);
  EXPECT_EQ(next.incumbent_value, o(next.incumbent_point));
  EXPECT_EQ(next.center, next.incumbent_point);
  EXPECT_EQ(rec.best_value, next.incumbent_value);
}

TEST(ZoomStep, DegenerateIterationIsRecorded) {
  // A target that is -inf everywhere except a sliver the particles never reach.
  const Objective o = custom("sliver", 1, -10.0, 10.0, [](std::span<const double> x) {
    return std::abs(x[0] - 9.99999) < 1e-9 ? 0.0 : std::numeric_limits<double>::infinity();
  });
  EvalCounter counter;
  const CountedObjective counted(o, counter);
  ZoomParams p;
  p.auto_gamma = false;
  p.sampler.particle_count = 20;
  const ZoomState s = initial_zoom_state(o.spec, p, Rng(4, 0));
  const auto [next, rec] = zoom_step(s, counted, p, Rng(4, 0));
  EXPECT_EQ(next.degenerate_iterations, 1u);
  EXPECT_EQ(next.center, s.center);
  EXPECT_EQ(rec.best_value, std::numeric_limits<double>::infinity());
}

TEST(Optimize, ZeroBudgetEvaluatesInitialCenter) {
  const Objective o = shifted_parabola();
  ZoomParams p;
  p.max_iters = 0;
  p.initial_center = Vector{1.0};
  const OptimizeResult r = optimize(o, p, Rng(5, 0));
  EXPECT_TRUE(r.trace.empty());
  EXPECT_EQ(r.x_best, (Vector{1.0}));
  EXPECT_EQ(r.value, 4.0);
  EXPECT_EQ(r.evaluations, 1u);
}

TEST(Optimize, ShiftedParabolaSanity) {
  const Objective o = shifted_parabola();
  ZoomParams p;
  p.max_iters = 50;
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const OptimizeResult r = optimize(o, p, Rng(seed, 6));
    hits += std::abs(r.x_best[0] - 3.0) < 0.1;
  }
  EXPECT_GE(hits, 9);
}

TEST(Optimize, TraceInvariants) {
  for (const char* name : {"sphere", "rastrigin", "step", "weierstrass"}) {
    for (ZoomStrategy strategy : {ZoomStrategy::kEdu, ZoomStrategy::kSvu}) {
      const Objective o = make_objective(name, 3);
      ZoomParams p;
      p.max_iters = 30;
      p.strategy = strategy;
      p.sampler.particle_count = 200;
      const OptimizeResult r = optimize(o, p, Rng(7, 0));
      ASSERT_EQ(r.trace.size(), 30u);
      for (std::size_t k = 1; k < r.trace.size(); ++k) {
        EXPECT_LE(r.trace[k].best_value, r.trace[k - 1].best_value) << name;
        EXPECT_GE(r.trace[k].fevals, r.trace[k - 1].fevals);
        EXPECT_EQ(r.trace[k].iteration, k);
      }
      EXPECT_TRUE(o.spec.box.contains(r.x_best)) << name;
      EXPECT_EQ(o(r.x_best), r.value) << name;
      EXPECT_EQ(r.trace.back().best_value, r.value) << name;
    }
  }
}

TEST(Optimize, Deterministic) {
  const Objective o = make_objective("ackley", 4);
  ZoomParams p;
  p.max_iters = 20;
  p.sampler.particle_count = 100;
  const OptimizeResult a = optimize(o, p, Rng(8, 0));
  const OptimizeResult b = optimize(o, p, Rng(8, 0));
  EXPECT_EQ(a.x_best, b.x_best);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k) {
    EXPECT_EQ(a.trace[k].best_value, b.trace[k].best_value);
    EXPECT_EQ(a.trace[k].fevals, b.trace[k].fevals);
  }
}

// At the default theta the softmax is an argmin and decisions match bit for
// bit; at a finite theta (theta/c)(cU) and theta U differ by rounding only.
TEST(Optimize, ScaleTemperatureCommutation) {
  const Objective o = make_objective("rastrigin", 3);
  for (double theta : {1e100, 5.0}) {
    for (double c : {1e-3, 1e3}) {
      ZoomParams p;
      p.max_iters = 25;
      p.sampler.particle_count = 100;
      p.theta = theta;
      const OptimizeResult a = optimize(o, p, Rng(9, 0));
      p.theta = theta / c;
      const OptimizeResult b = optimize(scaled(o, c), p, Rng(9, 0));
      const double tol = theta > 1e50 ? 1e-15 : 1e-6;
      for (std::size_t i = 0; i < a.x_best.size(); ++i) {
        if (theta > 1e50) {
          EXPECT_EQ(a.x_best[i], b.x_best[i]) << c;
        } else {
          EXPECT_NEAR(a.x_best[i], b.x_best[i], 1e-6) << c;
        }
      }
      for (std::size_t k = 0; k < a.trace.size(); ++k) {
        const double va = a.trace[k].best_value, vb = b.trace[k].best_value;
        if (std::isinf(va)) {
          EXPECT_TRUE(std::isinf(vb));
        } else {
          EXPECT_NEAR(vb, c * va, tol * c * std::abs(va) + 1e-300);
        }
        EXPECT_EQ(a.trace[k].fevals, b.trace[k].fevals);
      }
    }
  }
}
