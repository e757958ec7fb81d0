#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "error.hpp"
#include "objectives.hpp"
#include "rng.hpp"

using namespace zopt;

namespace {

double eval(std::string_view name, Vector x) { return make_objective(name, x.size()).fn(x); }

}  // namespace

TEST(Sphere, HandValues) {
  EXPECT_EQ(eval("sphere", {0, 0}), 0.0);
  EXPECT_EQ(eval("sphere", {1, 2}), 5.0);
  EXPECT_EQ(eval("sphere", {3, 4}), 25.0);
}

TEST(Schwefel, HandValues) {
  EXPECT_NEAR(eval("schwefel", {420.9687, 420.9687}), 0.0, 1e-3);
  EXPECT_NEAR(eval("schwefel", {0, 0}), 837.9658, 1e-9);
  EXPECT_NEAR(eval("schwefel", {420.9687}), 0.0, 1e-3);
}

TEST(Rosenbrock, HandValues) {
  EXPECT_EQ(eval("rosenbrock", Vector(7, 1.0)), 0.0);
  EXPECT_EQ(eval("rosenbrock", {0, 0}), 1.0);
  EXPECT_EQ(eval("rosenbrock", {0, 0, 0}), 2.0);
  EXPECT_THROW(make_objective("rosenbrock", 1), InvalidArgument);
}

TEST(Ackley, HandValues) {
  EXPECT_NEAR(eval("ackley", Vector(5, 0.0)), 0.0, 1e-12);
  for (std::size_t d : {1u, 3u, 10u}) {
    EXPECT_NEAR(eval("ackley", Vector(d, 1.0)), 20.0 * (1.0 - std::exp(-0.2)), 1e-12);
  }
  EXPECT_NEAR(eval("ackley", {100, 100}), 20.0 - 20.0 * std::exp(-20.0), 1e-9);
}

TEST(Griewank, HandValues) {
  EXPECT_NEAR(eval("griewank", Vector(4, 0.0)), 0.0, 1e-15);
  const double pi = std::numbers::pi;
  EXPECT_NEAR(eval("griewank", {pi}), 2.0 + pi * pi / 4000.0, 1e-12);
  EXPECT_NEAR(eval("griewank", {100}), 2.63771, 1e-4);
}

TEST(Rastrigin, HandValues) {
  EXPECT_EQ(eval("rastrigin", Vector(3, 0.0)), 0.0);
  EXPECT_NEAR(eval("rastrigin", {0.5, 0.5}), 40.5, 1e-12);
  EXPECT_NEAR(eval("rastrigin", {1}), 1.0, 1e-12);
}

TEST(Levy, HandValues) {
  EXPECT_NEAR(eval("levy", Vector(6, 1.0)), 0.0, 1e-15);
  EXPECT_EQ(levy_w(1.0), 1.0);
  // w = 0.75 at the origin.
  const double pi = std::numbers::pi;
  const double s1 = std::sin(pi * 0.75);
  const double mid = 0.0625 * (1.0 + 10.0 * std::pow(std::sin(pi * 0.75 + 1.0), 2));
  const double last = 0.0625 * (1.0 + std::pow(std::sin(2.0 * pi * 0.75), 2));
  EXPECT_NEAR(eval("levy", {0, 0}), s1 * s1 + mid + last, 1e-12);
  EXPECT_NEAR(eval("levy", {0, 0}), 0.7159, 1e-4);
}

TEST(Weierstrass, HandValues) {
  const double at_one = std::pow(0.5, 21) / 0.5;
  EXPECT_NEAR(eval("weierstrass", {1}), at_one, 1e-15);
  EXPECT_NEAR(eval("weierstrass", {0}), (1.0 - std::pow(0.5, 21)) / 0.5 + 2.0, 1e-12);
  EXPECT_NEAR(eval("weierstrass", {1, 1}), 2.0 * at_one, 1e-15);
}

TEST(Step, HandValues) {
  EXPECT_EQ(eval("step", {0, 0}), 0.0);
  EXPECT_EQ(eval("step", {-0.5, 0.49}), 0.0);
  EXPECT_EQ(eval("step", {0.6, -0.6}), 2.0);
}

TEST(Artificial, HandValues) {
  EXPECT_EQ(eval("artificial", Vector(3, 0.1)), 0.0);
  EXPECT_NEAR(eval("artificial", {1.1}), 1e5 * std::sqrt(std::sin(1.0)), 1e-6);
  EXPECT_NEAR(eval("artificial", {1.1}), 91732.0, 1.0);
  EXPECT_NEAR(eval("artificial", {0.6}), 1e5 * std::sqrt(std::sin(0.0625)), 1e-6);
  EXPECT_NEAR(eval("artificial", {0.6}), 24992.0, 1.0);
}

TEST(Registry, Metadata) {
  const ObjectiveSpec s = registry("sphere", 30);
  EXPECT_EQ(s.box.dim(), 30u);
  EXPECT_EQ(s.box.lower[7], -5.12);
  EXPECT_EQ(s.box.upper[29], 5.12);
  EXPECT_EQ(s.known_min_value, 0.0);
  ASSERT_TRUE(s.known_minimizer);
  EXPECT_EQ(*s.known_minimizer, Vector(30, 0.0));

  const ObjectiveSpec w = registry("schwefel", 2);
  EXPECT_EQ(w.box.lower, Vector(2, -500.0));
  EXPECT_EQ(w.box.upper, Vector(2, 500.0));
  EXPECT_EQ(*w.known_minimizer, Vector(2, 420.9687));
  EXPECT_EQ(w.min_tolerance(), 1e-3);

  EXPECT_THROW(registry("nosuch", 2), UnknownName);
  EXPECT_EQ(objective_names().size(), 10u);
}

TEST(Registry, Tags) {
  EXPECT_TRUE(registry("step", 2).has(Tag::kDiscontinuous));
  EXPECT_FALSE(registry("weierstrass", 2).has(Tag::kDifferentiable));
  EXPECT_FALSE(registry("ackley", 2).has(Tag::kSeparable));
  EXPECT_TRUE(registry("sphere", 2).has(Tag::kUnimodal));
}

TEST(Properties, KnownMinimizerAttainsKnownValue) {
  for (const std::string& name : objective_names()) {
    for (std::size_t d : {2u, 5u, 30u}) {
      const Objective obj = make_objective(name, d);
      ASSERT_TRUE(obj.spec.known_minimizer) << name;
      EXPECT_NEAR(obj.fn(*obj.spec.known_minimizer), obj.spec.known_min_value,
                  obj.spec.min_tolerance())
          << name << " d=" << d;
    }
  }
}

TEST(Properties, RandomProbesNeverBeatKnownMinimum) {
  for (const std::string& name : objective_names()) {
    const Objective obj = make_objective(name, 4);
    Rng rng(11, hash_label(name));
    const double floor = obj.spec.known_min_value - (name == "schwefel" ? 1e-3 : 1e-9);
    Vector x(4);
    for (int k = 0; k < 10000; ++k) {
      for (std::size_t i = 0; i < 4; ++i) x[i] = rng.uniform(obj.spec.box.lower[i], obj.spec.box.upper[i]);
      ASSERT_GE(obj.fn(x), floor) << name;
    }
  }
}

TEST(Properties, SeparableFunctionsAreSumsOfOneDimensionalTerms) {
  for (const char* name : {"schwefel", "rastrigin", "step", "artificial", "weierstrass"}) {
    const Objective one = make_objective(name, 1);
    const Objective three = make_objective(name, 3);
    const double lo = three.spec.box.lower[0];
    const double hi = three.spec.box.upper[0];
    for (int a = 0; a < 7; ++a) {
      for (int b = 0; b < 7; ++b) {
        const Vector x = {lo + (hi - lo) * a / 6.3, lo + (hi - lo) * b / 6.7,
                          lo + (hi - lo) * (a + b) / 13.1};
        double sum = 0.0;
        for (double v : x) sum += one.fn(Vector{v});
        EXPECT_NEAR(three.fn(x), sum, 1e-10 * std::max(1.0, std::abs(sum))) << name;
      }
    }
  }
}

TEST(CountedObjective, CountsEveryEvaluation) {
  const Objective obj = make_objective("sphere", 3);
  EvalCounter counter;
  const CountedObjective u(obj, counter);
  for (int i = 0; i < 17; ++i) u(Vector{1.0, 2.0, 3.0});
  EXPECT_EQ(counter.count(), 17u);
  EXPECT_EQ(u(Vector{1.0, 2.0, 3.0}), 14.0);
}

TEST(SearchBox, ValidationAndContainment) {
  EXPECT_THROW((SearchBox{{0.0}, {0.0}}.validate()), InvalidArgument);
  EXPECT_THROW((SearchBox{{}, {}}.validate()), InvalidArgument);
  const SearchBox b = SearchBox::cube(2, -1.0, 3.0);
  EXPECT_TRUE(b.contains(Vector{-1.0, 3.0}));
  EXPECT_FALSE(b.contains(Vector{-1.0, 3.0000001}));
  EXPECT_FALSE(b.contains(Vector{0.0}));
  EXPECT_EQ(b.max_half_width(), 2.0);
}
