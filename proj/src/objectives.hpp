#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zopt {

using Vector = std::vector<double>;

struct SearchBox {
  Vector lower;
  Vector upper;

  static SearchBox cube(std::size_t dim, double lo, double hi);

  std::size_t dim() const { return lower.size(); }
  bool contains(std::span<const double> x) const;
  /// Largest coordinate half-width, max_i (upper_i - lower_i) / 2.
  double max_half_width() const;
  /// Throws InvalidArgument unless the box is well formed.
  void validate() const;
};

enum class Tag : unsigned {
  kDifferentiable = 1u << 0,
  kSeparable = 1u << 1,
  kScalable = 1u << 2,
  kMultimodal = 1u << 3,
  kUnimodal = 1u << 4,
  kDiscontinuous = 1u << 5,
};

struct ObjectiveSpec {
  std::string name;
  std::size_t dimension = 0;
  SearchBox box;
  double known_min_value = 0.0;
  // False when the tabulated minimum is a rounded constant (Schwefel).
  bool known_min_exact = true;
  std::optional<Vector> known_minimizer;
  unsigned tags = 0;

  bool has(Tag t) const { return (tags & static_cast<unsigned>(t)) != 0; }
  /// Tolerance for eval(known_minimizer) == known_min_value.
  double min_tolerance() const { return known_min_exact ? 1e-9 : 1e-3; }
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

/// A benchmark function bound to its metadata. Evaluation is pure.
struct Objective {
  ObjectiveSpec spec;
  ObjectiveFn fn;

  double operator()(std::span<const double> x) const { return fn(x); }
};

/// Function-evaluation tally for one run. Owned by a single run context.
class EvalCounter {
 public:
  void tick() { ++count_; }
  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t count_ = 0;
};

/// Objective wrapper that ticks a counter on every evaluation.
class CountedObjective {
 public:
  CountedObjective(const Objective& objective, EvalCounter& counter)
      : objective_(&objective), counter_(&counter) {}

  double operator()(std::span<const double> x) const {
    counter_->tick();
    return objective_->fn(x);
  }
  const ObjectiveSpec& spec() const { return objective_->spec; }
  std::uint64_t evaluations() const { return counter_->count(); }

 private:
  const Objective* objective_;
  EvalCounter* counter_;
};

double eval_sphere(std::span<const double> x);
double eval_schwefel(std::span<const double> x);
/// Requires x.size() >= 2.
double eval_rosenbrock(std::span<const double> x);
double eval_ackley(std::span<const double> x);
double eval_griewank(std::span<const double> x);
double eval_rastrigin(std::span<const double> x);
double eval_levy(std::span<const double> x);
double eval_weierstrass(std::span<const double> x);
double eval_step(std::span<const double> x);
double eval_artificial(std::span<const double> x);

/// Levy coordinate transform w = 1 + (x - 1) / 4.
inline double levy_w(double x) { return 1.0 + (x - 1.0) / 4.0; }

// Weierstrass configuration.
inline constexpr double kWeierstrassA = 0.5;
inline constexpr double kWeierstrassB = 13.0;
inline constexpr int kWeierstrassKMax = 20;

/// Schwefel's tabulated optimum coordinate.
inline constexpr double kSchwefelMinimizer = 420.9687;

/// The ten function identifiers, in registry order.
const std::vector<std::string>& objective_names();

/// Metadata for `name` at `dimension`. Throws UnknownName or InvalidArgument.
ObjectiveSpec registry(std::string_view name, std::size_t dimension);

/// Registry lookup plus the evaluation function.
Objective make_objective(std::string_view name, std::size_t dimension);

}  // namespace zopt
