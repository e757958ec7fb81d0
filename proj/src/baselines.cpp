#include "baselines.hpp"

#include <chrono>
#include <limits>

#include "error.hpp"

namespace zopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class TraceRecorder {
 public:
  explicit TraceRecorder(std::size_t reserve)
      : start_(std::chrono::steady_clock::now()) {
    trace_.reserve(reserve);
  }

  void record(std::size_t k, double best, std::uint64_t fevals) {
    IterationRecord r;
    r.iteration = k;
    r.best_value = best;
    r.fevals = fevals;
    r.elapsed_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start_)
                       .count();
    trace_.push_back(r);
  }

  std::vector<IterationRecord> take() { return std::move(trace_); }

 private:
  std::chrono::steady_clock::time_point start_;
  std::vector<IterationRecord> trace_;
};

void clamp_to_box(std::span<double> x, const SearchBox& box) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::clamp(x[i], box.lower[i], box.upper[i]);
  }
}

Vector uniform_in_box(const SearchBox& box, Rng& rng) {
  Vector x(box.dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(box.lower[i], box.upper[i]);
  return x;
}

Vector start_point(const BaselineParams& params, const SearchBox& box, Rng& rng) {
  if (params.start) {
    if (params.start->size() != box.dim()) {
      throw InvalidArgument("start point has the wrong dimension");
    }
    Vector x = *params.start;
    clamp_to_box(x, box);
    return x;
  }
  return uniform_in_box(box, rng);
}

Vector half_widths(const SearchBox& box) {
  Vector hw(box.dim());
  for (std::size_t i = 0; i < hw.size(); ++i) hw[i] = 0.5 * (box.upper[i] - box.lower[i]);
  return hw;
}

template <typename F>
Vector gradient(const F& u, std::span<const double> x, const GradientOracle& oracle) {
  if (oracle.mode == GradientOracle::Mode::kAnalytic && oracle.analytic) {
    return oracle.analytic(x);
  }
  return fd_gradient(u, x, oracle);
}

OptimizeResult finish(Vector x_best, double value, TraceRecorder& recorder,
                      const EvalCounter& counter) {
  OptimizeResult r;
  r.x_best = std::move(x_best);
  r.value = value;
  r.trace = recorder.take();
  r.evaluations = counter.count();
  return r;
}

}  // namespace

void BaselineParams::validate() const {
  if (iterations == 0) throw InvalidArgument("iteration budget must be positive");
  if (pso.swarm == 0 || de.population == 0) {
    throw InvalidArgument("population sizes must be at least 1");
  }
  if (!(sa.cooling > 0.0 && sa.cooling < 1.0)) {
    throw InvalidArgument("cooling ratio must lie in (0, 1)");
  }
  if (!(adam.lr_fraction > 0.0)) throw InvalidArgument("learning rate must be positive");
  if (!(gradient.h > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  if (!(bfgs.backtrack > 0.0 && bfgs.backtrack < 1.0)) {
    throw InvalidArgument("backtracking ratio must lie in (0, 1)");
  }
}

std::optional<GradientFn> analytic_gradient(std::string_view objective_name) {
  if (objective_name == "sphere") {
    return GradientFn([](std::span<const double> x) {
      Vector g(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) g[i] = 2.0 * x[i];
      return g;
    });
  }
  if (objective_name == "rosenbrock") {
    return GradientFn([](std::span<const double> x) {
      Vector g(x.size(), 0.0);
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        g[i] += -400.0 * x[i] * a - 2.0 * (1.0 - x[i]);
        g[i + 1] += 200.0 * a;
      }
      return g;
    });
  }
  return std::nullopt;
}

double metropolis_acceptance(double delta, double temperature) {
  if (delta <= 0.0) return 1.0;
  if (!(temperature > 0.0)) return 0.0;
  return std::exp(-delta / temperature);
}

OptimizeResult pso_run(const Objective& objective, const BaselineParams& params,
                       const Rng& rng) {
  params.validate();
  const SearchBox& box = objective.spec.box;
  const std::size_t d = box.dim();
  const std::size_t n = params.pso.swarm;
  EvalCounter counter;
  const CountedObjective u(objective, counter);
  Rng r = rng.derive("pso");
  TraceRecorder rec(params.iterations);

  std::vector<Vector> pos(n), vel(n, Vector(d)), pbest(n);
  Vector pbest_val(n);
  Vector gbest;
  double gbest_val = kInf;
  for (std::size_t p = 0; p < n; ++p) {
    pos[p] = uniform_in_box(box, r);
    for (std::size_t i = 0; i < d; ++i) {
      const double range = box.upper[i] - box.lower[i];
      vel[p][i] = 0.1 * r.uniform(-range, range);
    }
    pbest[p] = pos[p];
    pbest_val[p] = u(pos[p]);
    if (pbest_val[p] < gbest_val) {
      gbest_val = pbest_val[p];
      gbest = pos[p];
    }
  }

  for (std::size_t k = 0; k < params.iterations; ++k) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t i = 0; i < d; ++i) {
        const double range = box.upper[i] - box.lower[i];
        const double r1 = r.uniform();
        const double r2 = r.uniform();
        double v = params.pso.inertia * vel[p][i] +
                   params.pso.c1 * r1 * (pbest[p][i] - pos[p][i]) +
                   params.pso.c2 * r2 * (gbest[i] - pos[p][i]);
        vel[p][i] = std::clamp(v, -range, range);
        pos[p][i] = std::clamp(pos[p][i] + vel[p][i], box.lower[i], box.upper[i]);
      }
      const double val = u(pos[p]);
      if (val < pbest_val[p]) {
        pbest_val[p] = val;
        pbest[p] = pos[p];
      }
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (pbest_val[p] < gbest_val) {
        gbest_val = pbest_val[p];
        gbest = pbest[p];
      }
    }
    rec.record(k, gbest_val, counter.count());
  }
  return finish(gbest, gbest_val, rec, counter);
}

OptimizeResult de_run(const Objective& objective, const BaselineParams& params,
                      const Rng& rng) {
  params.validate();
  const SearchBox& box = objective.spec.box;
  const std::size_t d = box.dim();
  const std::size_t n = params.de.population;
  EvalCounter counter;
  const CountedObjective u(objective, counter);
  Rng r = rng.derive("de");
  TraceRecorder rec(params.iterations);

  std::vector<Vector> pop(n);
  Vector val(n);
  std::size_t best = 0;
  for (std::size_t p = 0; p < n; ++p) {
    pop[p] = uniform_in_box(box, r);
    val[p] = u(pop[p]);
    if (val[p] < val[best]) best = p;
  }

  // Three donors distinct from each other and from the target when the
  // population allows it.
  auto pick = [&](std::size_t target, std::array<std::size_t, 3>& idx) {
    for (std::size_t j = 0; j < 3; ++j) {
      std::size_t c;
      int guard = 0;
      do {
        c = static_cast<std::size_t>(r.below(n));
        bool clash = (c == target && n > 1);
        for (std::size_t m = 0; m < j && !clash; ++m) clash = (idx[m] == c && n > 3);
        if (!clash || ++guard > 64) break;
      } while (true);
      idx[j] = c;
    }
  };

  Vector trial(d);
  for (std::size_t k = 0; k < params.iterations; ++k) {
    for (std::size_t p = 0; p < n; ++p) {
      std::array<std::size_t, 3> idx{};
      pick(p, idx);
      const std::size_t jrand = static_cast<std::size_t>(r.below(d));
      for (std::size_t i = 0; i < d; ++i) {
        if (i == jrand || r.uniform() < params.de.cr) {
          const double m = pop[idx[0]][i] + params.de.f * (pop[idx[1]][i] - pop[idx[2]][i]);
          trial[i] = std::clamp(m, box.lower[i], box.upper[i]);
        } else {
          trial[i] = pop[p][i];
        }
      }
      const double tv = u(trial);
      if (tv <= val[p]) {
        pop[p] = trial;
        val[p] = tv;
        if (tv < val[best]) best = p;
      }
    }
    rec.record(k, val[best], counter.count());
  }
  return finish(pop[best], val[best], rec, counter);
}

OptimizeResult bfgs_run(const Objective& objective, const BaselineParams& params,
                        const Rng& rng) {
  params.validate();
  const SearchBox& box = objective.spec.box;
  const std::size_t d = box.dim();
  EvalCounter counter;
  const CountedObjective u(objective, counter);
  Rng r = rng.derive("bfgs");
  TraceRecorder rec(params.iterations);

  Vector x = start_point(params, box, r);
  double fx = u(x);
  Vector g = gradient(u, x, params.gradient);
  // Inverse Hessian approximation, row-major.
  Vector h(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) h[i * d + i] = 1.0;

  bool stopped = false;
  Vector p(d), x_new(d), s(d), y(d), hy(d);
  for (std::size_t k = 0; k < params.iterations; ++k) {
    if (!stopped) {
      double gmax = 0.0;
      for (double v : g) gmax = std::max(gmax, std::abs(v));
      if (!(gmax > params.bfgs.gradient_tolerance) || !std::isfinite(gmax)) stopped = true;
    }
    if (!stopped) {
      for (std::size_t i = 0; i < d; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) acc -= h[i * d + j] * g[j];
        p[i] = acc;
      }
      double slope = 0.0;
      for (std::size_t i = 0; i < d; ++i) slope += g[i] * p[i];
      if (!(slope < 0.0)) {
        // Not a descent direction: restart from steepest descent.
        std::fill(h.begin(), h.end(), 0.0);
        for (std::size_t i = 0; i < d; ++i) {
          h[i * d + i] = 1.0;
          p[i] = -g[i];
        }
        slope = 0.0;
        for (std::size_t i = 0; i < d; ++i) slope += g[i] * p[i];
      }
      double step = 1.0;
      double f_new = kInf;
      bool accepted = false;
      for (std::size_t bt = 0; bt <= params.bfgs.max_backtracks; ++bt) {
        for (std::size_t i = 0; i < d; ++i) x_new[i] = x[i] + step * p[i];
        clamp_to_box(x_new, box);
        double dir = 0.0;
        for (std::size_t i = 0; i < d; ++i) dir += g[i] * (x_new[i] - x[i]);
        f_new = u(x_new);
        if (f_new <= fx + params.bfgs.armijo_c * std::min(dir, 0.0) && f_new <= fx &&
            dir < 0.0) {
          accepted = true;
          break;
        }
        step *= params.bfgs.backtrack;
      }
      if (!accepted) {
        stopped = true;
      } else {
        const Vector g_new = gradient(u, x_new, params.gradient);
        double sy = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
          s[i] = x_new[i] - x[i];
          y[i] = g_new[i] - g[i];
          sy += s[i] * y[i];
        }
        if (sy > 1e-12) {
          // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
          const double rho = 1.0 / sy;
          for (std::size_t i = 0; i < d; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < d; ++j) acc += h[i * d + j] * y[j];
            hy[i] = acc;
          }
          double yhy = 0.0;
          for (std::size_t i = 0; i < d; ++i) yhy += y[i] * hy[i];
          for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
              h[i * d + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) +
                              (rho * rho * yhy + rho) * s[i] * s[j];
            }
          }
        }
        x = x_new;
        fx = f_new;
        g = g_new;
      }
    }
    rec.record(k, fx, counter.count());
  }
  return finish(x, fx, rec, counter);
}

OptimizeResult sa_run(const Objective& objective, const BaselineParams& params,
                      const Rng& rng) {
  params.validate();
  const SearchBox& box = objective.spec.box;
  const std::size_t d = box.dim();
  EvalCounter counter;
  const CountedObjective u(objective, counter);
  Rng r = rng.derive("sa");
  TraceRecorder rec(params.iterations);

  double temperature = params.sa.t0;
  if (!(temperature > 0.0)) {
    double lo = kInf, hi = -kInf;
    for (std::size_t i = 0; i < params.sa.range_probes; ++i) {
      const double v = u(uniform_in_box(box, r));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    temperature = (hi - lo > 0.0 && std::isfinite(hi - lo)) ? hi - lo : 1.0;
  }
  const Vector hw = half_widths(box);
  Vector x = start_point(params, box, r);
  double fx = u(x);
  Vector best = x;
  double best_val = fx;
  Vector cand(d);
  for (std::size_t k = 0; k < params.iterations; ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      cand[i] = x[i] + params.sa.proposal_fraction * hw[i] * r.normal();
    }
    clamp_to_box(cand, box);
    const double fc = u(cand);
    if (r.uniform() < metropolis_acceptance(fc - fx, temperature)) {
      x = cand;
      fx = fc;
      if (fx < best_val) {
        best_val = fx;
        best = x;
      }
    }
    temperature *= params.sa.cooling;
    rec.record(k, best_val, counter.count());
  }
  return finish(best, best_val, rec, counter);
}

OptimizeResult shc_run(const Objective& objective, const BaselineParams& params,
                       const Rng& rng) {
  params.validate();
  const SearchBox& box = objective.spec.box;
  const std::size_t d = box.dim();
  EvalCounter counter;
  const CountedObjective u(objective, counter);
  Rng r = rng.derive("shc");
  TraceRecorder rec(params.iterations);

  const Vector hw = half_widths(box);
  Vector x = start_point(params, box, r);
  double fx = u(x);
  double radius = params.shc.radius_fraction;
  Vector cand(d);
  for (std::size_t k = 0; k < params.iterations; ++k) {
    for (std::size_t i = 0; i < d; ++i) cand[i] = x[i] + radius * hw[i] * r.normal();
    clamp_to_box(cand, box);
    const double fc = u(cand);
    if (fc < fx) {
      x = cand;
      fx = fc;
    }
    radius *= params.shc.decay;
    rec.record(k, fx, counter.count());
  }
  return finish(x, fx, rec, counter);
}

OptimizeResult adam_run(const Objective& objective, const BaselineParams& params,
                        const Rng& rng) {
  params.validate();
  const SearchBox& box = objective.spec.box;
  const std::size_t d = box.dim();
  EvalCounter counter;
  const CountedObjective u(objective, counter);
  Rng r = rng.derive("adam");
  TraceRecorder rec(params.iterations);

  const Vector hw = half_widths(box);
  Vector x = start_point(params, box, r);
  double best_val = u(x);
  Vector best = x;
  Vector m(d, 0.0), v(d, 0.0);
  const AdamParams& a = params.adam;
  double b1t = 1.0, b2t = 1.0;
  for (std::size_t k = 0; k < params.iterations; ++k) {
    const Vector g = gradient(u, x, params.gradient);
    b1t *= a.beta1;
    b2t *= a.beta2;
    for (std::size_t i = 0; i < d; ++i) {
      m[i] = a.beta1 * m[i] + (1.0 - a.beta1) * g[i];
      v[i] = a.beta2 * v[i] + (1.0 - a.beta2) * g[i] * g[i];
      const double mhat = m[i] / (1.0 - b1t);
      const double vhat = v[i] / (1.0 - b2t);
      const double lr = a.lr_fraction * hw[i];
      x[i] = std::clamp(x[i] - lr * mhat / (std::sqrt(vhat) + a.eps), box.lower[i],
                        box.upper[i]);
    }
    const double fx = u(x);
    if (fx < best_val) {
      best_val = fx;
      best = x;
    }
    rec.record(k, best_val, counter.count());
  }
  return finish(best, best_val, rec, counter);
}

const std::vector<std::string>& baseline_names() {
  static const std::vector<std::string> names = {"pso", "de", "bfgs", "sa", "shc", "adam"};
  return names;
}

OptimizeResult run_baseline(std::string_view name, const Objective& objective,
                            const BaselineParams& params, const Rng& rng) {
  if (name == "pso") return pso_run(objective, params, rng);
  if (name == "de") return de_run(objective, params, rng);
  if (name == "bfgs") return bfgs_run(objective, params, rng);
  if (name == "sa") return sa_run(objective, params, rng);
  if (name == "shc") return shc_run(objective, params, rng);
  if (name == "adam") return adam_run(objective, params, rng);
  throw UnknownName("unknown algorithm '" + std::string(name) + "'");
}

std::optional<std::uint64_t> baseline_eval_budget(std::string_view name,
                                                  const BaselineParams& params,
                                                  std::size_t dim, bool analytic) {
  const std::uint64_t t = params.iterations;
  if (name == "pso") return params.pso.swarm * (1 + t);
  if (name == "de") return params.de.population * (1 + t);
  if (name == "sa") {
    const std::uint64_t probes = params.sa.t0 > 0.0 ? 0 : params.sa.range_probes;
    return probes + 1 + t;
  }
  if (name == "shc") return 1 + t;
  if (name == "adam") return 1 + t * (analytic ? 1 : 2 * dim + 1);
  if (name == "bfgs") return std::nullopt;
  throw UnknownName("unknown algorithm '" + std::string(name) + "'");
}

}  // namespace zopt
