#include "objectives.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"

namespace zopt {

namespace {

using std::numbers::pi;

constexpr unsigned operator|(Tag a, Tag b) {
  return static_cast<unsigned>(a) | static_cast<unsigned>(b);
}
constexpr unsigned operator|(unsigned a, Tag b) {
  return a | static_cast<unsigned>(b);
}

struct Entry {
  std::string_view name;
  double (*fn)(std::span<const double>);
  double lo;
  double hi;
  std::size_t min_dim;
  unsigned tags;
};

const Entry kEntries[] = {
    {"sphere", eval_sphere, -5.12, 5.12, 1,
     Tag::kDifferentiable | Tag::kSeparable | Tag::kScalable | Tag::kUnimodal},
    {"schwefel", eval_schwefel, -500.0, 500.0, 1,
     Tag::kDifferentiable | Tag::kSeparable | Tag::kScalable | Tag::kMultimodal},
    {"rosenbrock", eval_rosenbrock, -5.0, 5.0, 2,
     Tag::kDifferentiable | Tag::kScalable | Tag::kUnimodal},
    {"ackley", eval_ackley, -32.768, 32.768, 1,
     Tag::kDifferentiable | Tag::kScalable | Tag::kMultimodal},
    {"griewank", eval_griewank, -600.0, 600.0, 1,
     Tag::kDifferentiable | Tag::kScalable | Tag::kMultimodal},
    {"rastrigin", eval_rastrigin, -5.12, 5.12, 1,
     Tag::kDifferentiable | Tag::kSeparable | Tag::kScalable | Tag::kMultimodal},
    {"levy", eval_levy, -10.0, 10.0, 1,
     Tag::kDifferentiable | Tag::kSeparable | Tag::kScalable | Tag::kMultimodal},
    {"weierstrass", eval_weierstrass, -2.0, 2.0, 1,
     Tag::kSeparable | Tag::kScalable | Tag::kMultimodal},
    {"step", eval_step, -100.0, 100.0, 1,
     Tag::kDiscontinuous | Tag::kSeparable | Tag::kScalable | Tag::kMultimodal},
    {"artificial", eval_artificial, -10.0, 10.0, 1,
     Tag::kSeparable | Tag::kMultimodal},
};

const Entry& find_entry(std::string_view name) {
  for (const Entry& e : kEntries) {
    if (e.name == name) return e;
  }
  throw UnknownName("unknown objective '" + std::string(name) + "'");
}

double weierstrass_1d(double x) {
  // b^k x is carried modulo 2 so the cosine argument stays small; b^20 x
  // itself is far beyond the exactly representable integers.
  double sum = 0.0;
  double ak = 1.0;
  double phase = std::fmod(x, 2.0);
  for (int k = 0; k <= kWeierstrassKMax; ++k) {
    sum += ak * std::cos(pi * phase);
    ak *= kWeierstrassA;
    phase = std::fmod(phase * kWeierstrassB, 2.0);
  }
  return sum;
}

}  // namespace

SearchBox SearchBox::cube(std::size_t dim, double lo, double hi) {
  return SearchBox{Vector(dim, lo), Vector(dim, hi)};
}

bool SearchBox::contains(std::span<const double> x) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
  }
  return true;
}

double SearchBox::max_half_width() const {
  double w = 0.0;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    w = std::max(w, 0.5 * (upper[i] - lower[i]));
  }
  return w;
}

void SearchBox::validate() const {
  if (lower.empty() || lower.size() != upper.size()) {
    throw InvalidArgument("search box bounds must be non-empty and equal length");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !(lower[i] < upper[i])) {
      throw InvalidArgument("search box coordinate " + std::to_string(i) +
                            " is not a finite interval with lower < upper");
    }
  }
}

double eval_sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double eval_schwefel(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * std::sin(std::sqrt(std::abs(v)));
  return 418.9829 * static_cast<double>(x.size()) - s;
}

double eval_rosenbrock(std::span<const double> x) {
  if (x.size() < 2) throw InvalidArgument("rosenbrock requires dimension >= 2");
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    s += 100.0 * a * a + b * b;
  }
  return s;
}

double eval_ackley(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double sq = 0.0;
  double cs = 0.0;
  for (double v : x) {
    sq += v * v;
    cs += std::cos(2.0 * pi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 +
         std::numbers::e;
}

double eval_griewank(std::span<const double> x) {
  double sq = 0.0;
  double prod = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sq += x[i] * x[i];
    prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return 1.0 + sq / 4000.0 - prod;
}

double eval_rastrigin(std::span<const double> x) {
  double s = 10.0 * static_cast<double>(x.size());
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * pi * v);
  return s;
}

double eval_levy(std::span<const double> x) {
  const std::size_t d = x.size();
  if (d == 0) return 0.0;
  const double w1 = levy_w(x[0]);
  const double s1 = std::sin(pi * w1);
  double s = s1 * s1;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    const double w = levy_w(x[i]);
    const double t = std::sin(pi * w + 1.0);
    s += (w - 1.0) * (w - 1.0) * (1.0 + 10.0 * t * t);
  }
  const double wd = levy_w(x[d - 1]);
  const double td = std::sin(2.0 * pi * wd);
  s += (wd - 1.0) * (wd - 1.0) * (1.0 + td * td);
  return s;
}

double eval_weierstrass(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += weierstrass_1d(v);
  return s + static_cast<double>(x.size()) / (1.0 - kWeierstrassA);
}

double eval_step(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) {
    const double f = std::floor(v + 0.5);
    s += f * f;
  }
  return s;
}

double eval_artificial(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) {
    const double r = std::abs(v - 0.1);
    const double r2 = r * r;
    s += std::sqrt(std::abs(std::sin(r2 * r2)));
  }
  return 1e5 * s;
}

const std::vector<std::string>& objective_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Entry& e : kEntries) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

ObjectiveSpec registry(std::string_view name, std::size_t dimension) {
  const Entry& e = find_entry(name);
  if (dimension < e.min_dim) {
    throw InvalidArgument(std::string(name) + " requires dimension >= " +
                          std::to_string(e.min_dim));
  }
  ObjectiveSpec spec;
  spec.name = std::string(e.name);
  spec.dimension = dimension;
  spec.box = SearchBox::cube(dimension, e.lo, e.hi);
  spec.tags = e.tags;

  const double d = static_cast<double>(dimension);
  if (name == "schwefel") {
    spec.known_minimizer = Vector(dimension, kSchwefelMinimizer);
    spec.known_min_exact = false;
  } else if (name == "rosenbrock" || name == "levy") {
    spec.known_minimizer = Vector(dimension, 1.0);
  } else if (name == "weierstrass") {
    // Every cosine term equals -1 at x = 1 because b is odd.
    spec.known_minimizer = Vector(dimension, 1.0);
    spec.known_min_value =
        d * std::pow(kWeierstrassA, kWeierstrassKMax + 1) / (1.0 - kWeierstrassA);
  } else if (name == "artificial") {
    spec.known_minimizer = Vector(dimension, 0.1);
  } else {
    spec.known_minimizer = Vector(dimension, 0.0);
  }
  return spec;
}

Objective make_objective(std::string_view name, std::size_t dimension) {
  Objective obj{registry(name, dimension), find_entry(name).fn};
  return obj;
}

}  // namespace zopt
