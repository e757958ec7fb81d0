// zopt command-line front end. Talks to the library only through zopt.h.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zopt/zopt.h"

namespace {

constexpr int kExitUser = 1;
constexpr int kExitRuntime = 2;

// User errors are bad input (names, config, values); everything else is runtime.
int exit_for(zopt_status s) {
  switch (s) {
    case ZOPT_ERR_INVALID_ARGUMENT:
    case ZOPT_ERR_UNKNOWN_NAME:
    case ZOPT_ERR_PARSE:
      return kExitUser;
    default:
      return kExitRuntime;
  }
}

int fail(zopt_status s, const std::string& context) {
  std::cerr << "zopt: " << context << ": " << zopt_last_error() << '\n';
  return exit_for(s);
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out;
}

// ZOPT_SEED wins over --seed. Returns false on a malformed value.
bool resolve_seed(std::optional<std::uint64_t>& seed) {
  const char* env = std::getenv("ZOPT_SEED");
  if (!env || !*env) return true;
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(env, &pos);
    if (pos != std::string(env).size()) return false;
    seed = v;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

void report_progress(void*, const char* algo, const char* fn, size_t dim, size_t trial,
                     const char* error, size_t done, size_t total) {
  std::fprintf(stderr, "[%zu/%zu] %s %s d=%zu trial=%zu %s%s\n", done, total, algo, fn, dim,
               trial, error ? "FAILED: " : "ok", error ? error : "");
}

struct BenchArgs {
  std::vector<std::string> fns;
  std::vector<std::string> dims;
  std::vector<std::string> algos;
  std::optional<std::size_t> iters;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::string out = "zopt_out";
  bool out_given = false;
  std::string config;
};

int run_bench(BenchArgs& a) {
  std::string text;
  if (!a.config.empty()) {
    std::ifstream in(a.config, std::ios::binary);
    if (!in) {
      std::cerr << "zopt: cannot read config '" << a.config << "'\n";
      return kExitUser;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    if (!text.empty() && text.back() != '\n') text += '\n';
  }
  if (!a.fns.empty()) text += "fn=" + join(a.fns) + '\n';
  if (!a.dims.empty()) text += "dim=" + join(a.dims) + '\n';
  if (!a.algos.empty()) text += "algos=" + join(a.algos) + '\n';
  if (a.iters) text += "iters=" + std::to_string(*a.iters) + '\n';
  if (a.trials) text += "trials=" + std::to_string(*a.trials) + '\n';
  // --out beats a config `out=`; without either the default directory is used.
  if (a.out_given || a.config.empty()) text += "out=" + a.out + '\n';
  if (!resolve_seed(a.seed)) {
    std::cerr << "zopt: ZOPT_SEED must be a non-negative integer\n";
    return kExitUser;
  }

  zopt_plan* plan = nullptr;
  if (zopt_status s = zopt_plan_parse(text.c_str(), &plan); s != ZOPT_OK) {
    return fail(s, "invalid plan");
  }
  for (size_t i = 0; i < zopt_plan_warning_count(plan); ++i) {
    std::cerr << "zopt: warning: " << zopt_plan_warning(plan, i) << '\n';
  }
  if (a.seed) zopt_plan_set_seed(plan, *a.seed);

  zopt_runs* runs = nullptr;
  zopt_status s = zopt_plan_run(plan, report_progress, nullptr, &runs);
  if (s != ZOPT_OK) {
    zopt_plan_destroy(plan);
    return fail(s, "bench failed");
  }
  s = zopt_runs_write(runs, plan);
  const size_t failures = zopt_runs_failures(runs);
  zopt_runs_destroy(runs);
  zopt_plan_destroy(plan);
  if (s != ZOPT_OK) return fail(s, "writing results");
  if (failures > 0) {
    std::cerr << "zopt: " << failures << " run(s) failed\n";
    return kExitRuntime;
  }
  return 0;
}

struct SampleArgs {
  std::string target;
  std::size_t dim = 0;
  double theta = 1.0;
  std::size_t np = 1000;
  std::size_t steps = 10;
  std::size_t count = 100;
  std::optional<std::uint64_t> seed;
  std::string out = "zopt_out";
};

int run_sample(SampleArgs& a) {
  if (!resolve_seed(a.seed)) {
    std::cerr << "zopt: ZOPT_SEED must be a non-negative integer\n";
    return kExitUser;
  }
  zopt_objective* obj = nullptr;
  if (zopt_status s = zopt_objective_create(a.target.c_str(), a.dim, &obj); s != ZOPT_OK) {
    return fail(s, "invalid target");
  }
  zopt_sampler_config cfg;
  zopt_sampler_config_default(&cfg);
  cfg.particle_count = a.np;
  cfg.step_count = a.steps;
  std::vector<double> xs(a.count * a.dim);
  zopt_status s = zopt_sample_gibbs(obj, a.theta, &cfg, a.count, a.seed.value_or(0), xs.data());
  zopt_objective_destroy(obj);
  if (s != ZOPT_OK) return fail(s, "sampling failed");
  const std::string path = a.out + "/samples.csv";
  s = zopt_write_samples_csv(xs.data(), a.count, a.dim, path.c_str());
  if (s != ZOPT_OK) return fail(s, "writing samples");
  std::cerr << "zopt: wrote " << a.count << " samples to " << path << '\n';
  return 0;
}

struct TheoryArgs {
  std::string check = "all";
  std::optional<std::uint64_t> seed;
  std::string out = "zopt_out";
};

int run_theory(TheoryArgs& a) {
  if (!resolve_seed(a.seed)) {
    std::cerr << "zopt: ZOPT_SEED must be a non-negative integer\n";
    return kExitUser;
  }
  zopt_theory* th = nullptr;
  if (zopt_status s = zopt_theory_run(a.check.c_str(), a.seed.value_or(0), &th); s != ZOPT_OK) {
    return fail(s, "theory check");
  }
  bool all_passed = true;
  for (size_t i = 0; i < zopt_theory_count(th); ++i) {
    const bool ok = zopt_theory_passed(th, i) != 0;
    all_passed = all_passed && ok;
    std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", zopt_theory_name(th, i),
                zopt_theory_summary(th, i));
  }
  const std::string path = a.out + "/theory.csv";
  zopt_status s = zopt_theory_write_csv(th, path.c_str());
  zopt_theory_destroy(th);
  if (s != ZOPT_OK) return fail(s, "writing report");
  return all_passed ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling-based zeroth-order global optimization"};
  app.require_subcommand(1);

  BenchArgs bench;
  CLI::App* b = app.add_subcommand("bench", "Run an optimizer comparison and write traces");
  b->add_option("--fn", bench.fns, "Function ids")->delimiter(',');
  b->add_option("--dim", bench.dims, "Dimensions")->delimiter(',');
  b->add_option("--algos", bench.algos, "Algorithm ids (so,pso,de,bfgs,sa,shc,adam)")
      ->delimiter(',');
  b->add_option("--iters", bench.iters, "Iterations per run (default 500)");
  b->add_option("--trials", bench.trials, "Trials per cell (default 10)");
  b->add_option("--seed", bench.seed, "Master seed (ZOPT_SEED overrides)");
  b->add_option("--out", bench.out, "Output directory")->capture_default_str();
  b->add_option("--config", bench.config, "Plan file (key=value lines)");

  SampleArgs sample;
  CLI::App* s = app.add_subcommand("sample", "Draw samples from exp(-theta U) on the box");
  s->add_option("--target", sample.target, "Function id")->required();
  s->add_option("--dim", sample.dim, "Dimension")->required();
  s->add_option("--theta", sample.theta, "Inverse temperature")->capture_default_str();
  s->add_option("--np", sample.np, "Particles per drift estimate")->capture_default_str();
  s->add_option("--steps", sample.steps, "Euler steps")->capture_default_str();
  s->add_option("--count", sample.count, "Number of samples")->capture_default_str();
  s->add_option("--seed", sample.seed, "Seed (ZOPT_SEED overrides)");
  s->add_option("--out", sample.out, "Output directory")->capture_default_str();

  TheoryArgs theory;
  CLI::App* t = app.add_subcommand("theory", "Run the empirical rate checks");
  t->add_option("--check", theory.check, "lemma21, th24, th28, th29, th45 or all")
      ->capture_default_str();
  t->add_option("--seed", theory.seed, "Seed (ZOPT_SEED overrides)");
  t->add_option("--out", theory.out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    std::cerr << "zopt: " << e.what() << "\n\n" << app.help();
    return kExitUser;
  }

  if (b->parsed()) {
    bench.out_given = b->count("--out") > 0;
    return run_bench(bench);
  }
  if (s->parsed()) return run_sample(sample);
  return run_theory(theory);
}
