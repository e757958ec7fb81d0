#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "theory.hpp"
#include "zoom.hpp"

namespace zopt {

/// Algorithm ids accepted in plans: "so" (the zoom optimizer) and the baselines.
const std::vector<std::string>& algorithm_names();

struct ExperimentPlan {
  std::vector<std::string> functions;
  std::vector<std::size_t> dimensions;
  std::vector<std::string> algorithms;
  std::size_t iterations = 500;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::size_t workers = 1;
  // Zoom optimizer settings; max_iters is overwritten by `iterations`.
  ZoomParams zoom;
  std::vector<std::string> warnings;

  void validate() const;
};

/// key=value lines, '#' starts a comment. Keys: fn, dim, algos, iters, trials,
/// seed, out, workers, theta, samples, particles, steps, lambda, gamma
/// ("auto" or a number; epsilon follows gamma), strategy (edu|svu),
/// alpha_min, alpha_max, edu_base (redraw|fixed). A repeated key keeps the
/// last value and adds a warning. Throws ParseError / InvalidArgument.
ExperimentPlan parse_plan(std::string_view text);

struct RunRecord {
  std::string algorithm;
  std::string function;
  std::size_t dimension = 0;
  std::size_t trial = 0;
  std::vector<IterationRecord> trace;
  std::string error;  // non-empty when the run failed

  bool ok() const { return error.empty(); }
};

/// Stream for one run: keyed by (master seed, function, algorithm, trial) only,
/// so adding or removing other runs never changes it.
Rng trial_rng(std::uint64_t seed, std::string_view function, std::string_view algorithm,
              std::size_t trial);

/// Runs one (function, dimension, algorithm, trial) cell.
RunRecord run_single(const ExperimentPlan& plan, const std::string& function,
                     std::size_t dimension, const std::string& algorithm, std::size_t trial);

using ProgressFn = std::function<void(const RunRecord&, std::size_t done, std::size_t total)>;

/// Cartesian product in order function, dimension, algorithm, trial.
std::vector<RunRecord> run_plan(const ExperimentPlan& plan, const ProgressFn& progress = {});

struct SummaryRow {
  std::string algorithm;
  std::string function;
  std::size_t dimension = 0;
  double mean_best = 0.0;
  double std_best = 0.0;  // population convention
  double mean_elapsed_ms = 0.0;
  std::size_t runs = 0;
  std::size_t failures = 0;
};

/// Groups successful records by (algorithm, function, dimension) in order of
/// first appearance. Final best and elapsed come from each trace's last entry.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

/// Shortest round-trip decimal form.
std::string format_double(double v);

std::string trace_csv(const std::vector<RunRecord>& records);
std::string summary_csv(const std::vector<SummaryRow>& rows);
/// Inverse of trace_csv. Throws ParseError.
std::vector<RunRecord> parse_trace_csv(std::string_view text);
std::string samples_csv(const std::vector<Vector>& samples);
std::string theory_csv(const std::vector<TheoryCheckReport>& reports);

enum class ChartKind { kConvergence, kComparisonBars };

/// Mean best-so-far per iteration, one polyline per algorithm.
std::string convergence_svg(const std::vector<RunRecord>& records, const std::string& title);
/// Value panel (mean with std whisker) beside a time panel, one bar per algorithm.
std::string comparison_svg(const std::vector<SummaryRow>& rows, const std::string& title);

/// Writes text to path, creating parent directories. Throws IoError.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

struct BenchOutputs {
  std::vector<std::string> files;
  std::size_t failures = 0;
};

/// Writes trace.csv, summary.csv and per (function, dimension) SVG charts
/// into plan.out_dir.
BenchOutputs write_bench_outputs(const ExperimentPlan& plan,
                                 const std::vector<RunRecord>& records);

}  // namespace zopt
