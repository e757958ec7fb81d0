#include "harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "baselines.hpp"
#include "error.hpp"

namespace zopt {

namespace {

constexpr std::string_view kTraceHeader =
    "algo,function,dim,trial,iter,best_value,fevals,elapsed_ms";
constexpr std::string_view kSummaryHeader =
    "algo,function,dim,mean_best,std_best,mean_elapsed_ms";

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                   : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  T v{};
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

double parse_real(std::string_view s, int line, const std::string& key) {
  const auto v = parse_number<double>(s);
  if (!v) throw ParseError(line, "value for '" + key + "' is not a number: '" + std::string(s) + "'");
  return *v;
}

std::size_t parse_count(std::string_view s, int line, const std::string& key) {
  const auto v = parse_number<std::uint64_t>(s);
  if (!v || *v == 0) {
    throw ParseError(line, "value for '" + key + "' must be a positive integer: '" +
                               std::string(s) + "'");
  }
  return static_cast<std::size_t>(*v);
}

std::vector<std::string> parse_list(std::string_view s, int line, const std::string& key) {
  std::vector<std::string> out;
  for (const std::string& item : split(s, ',')) {
    const std::string_view t = trim(item);
    if (t.empty()) throw ParseError(line, "empty item in list for '" + key + "'");
    out.emplace_back(t);
  }
  return out;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string svg_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Maps values onto a pixel range, logarithmically when every value is positive.
class Axis {
 public:
  Axis(const std::vector<double>& values, double pixel_lo, double pixel_hi, bool allow_log)
      : pixel_lo_(pixel_lo), pixel_hi_(pixel_hi) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : values) {
      if (!std::isfinite(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    log_ = allow_log && lo > 0.0;
    if (log_) {
      lo_ = std::floor(std::log10(lo));
      hi_ = std::ceil(std::log10(hi));
      if (hi_ <= lo_) hi_ = lo_ + 1.0;
    } else {
      lo_ = std::min(lo, 0.0);
      hi_ = hi > lo_ ? hi : lo_ + 1.0;
    }
  }

  bool log_scale() const { return log_; }

  double operator()(double v) const {
    double u = log_ ? (v > 0.0 ? std::log10(v) : lo_) : v;
    u = std::clamp(u, lo_, hi_);
    return pixel_lo_ + (u - lo_) / (hi_ - lo_) * (pixel_hi_ - pixel_lo_);
  }

  double base() const { return (*this)(log_ ? std::pow(10.0, lo_) : std::max(lo_, 0.0)); }

  std::vector<double> ticks() const {
    std::vector<double> t;
    if (log_) {
      const double step = std::max(1.0, std::ceil((hi_ - lo_) / 8.0));
      for (double e = lo_; e <= hi_ + 1e-9; e += step) t.push_back(std::pow(10.0, e));
    } else {
      for (int i = 0; i <= 4; ++i) t.push_back(lo_ + (hi_ - lo_) * i / 4.0);
    }
    return t;
  }

 private:
  double pixel_lo_, pixel_hi_;
  double lo_ = 0.0, hi_ = 1.0;
  bool log_ = false;
};

void draw_value_axis(std::ostringstream& os, const Axis& axis, double x, double y_top,
                     double y_bottom, const std::string& label) {
  os << "<line x1=\"" << svg_num(x) << "\" y1=\"" << svg_num(y_top) << "\" x2=\"" << svg_num(x)
     << "\" y2=\"" << svg_num(y_bottom) << "\" stroke=\"black\"/>\n";
  for (double t : axis.ticks()) {
    const double y = axis(t);
    os << "<line x1=\"" << svg_num(x - 4) << "\" y1=\"" << svg_num(y) << "\" x2=\"" << svg_num(x)
       << "\" y2=\"" << svg_num(y) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << svg_num(x - 6) << "\" y=\"" << svg_num(y + 4)
       << "\" font-size=\"10\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
  const double mid = 0.5 * (y_top + y_bottom);
  os << "<text x=\"" << svg_num(x - 48) << "\" y=\"" << svg_num(mid)
     << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 " << svg_num(x - 48)
     << ' ' << svg_num(mid) << ")\">" << svg_escape(label) << (axis.log_scale() ? " (log)" : "")
     << "</text>\n";
}

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n = {"so"};
    for (const std::string& b : baseline_names()) n.push_back(b);
    return n;
  }();
  return names;
}

void ExperimentPlan::validate() const {
  if (functions.empty()) throw InvalidArgument("plan names no function");
  if (dimensions.empty()) throw InvalidArgument("plan names no dimension");
  if (algorithms.empty()) throw InvalidArgument("plan names no algorithm");
  if (iterations == 0 || trials == 0) throw InvalidArgument("iterations and trials must be >= 1");
  if (workers == 0) throw InvalidArgument("workers must be >= 1");
  for (const std::string& a : algorithms) {
    if (!contains(algorithm_names(), a)) throw UnknownName("unknown algorithm '" + a + "'");
  }
  for (const std::string& f : functions) {
    for (std::size_t d : dimensions) registry(f, d);
  }
  zoom.validate(dimensions.front());
}

ExperimentPlan parse_plan(std::string_view text) {
  ExperimentPlan plan;
  std::map<std::string, int> seen;
  int dim_line = 0;
  int line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "missing key before '='");
    if (value.empty()) throw ParseError(line_no, "missing value for '" + key + "'");
    if (auto it = seen.find(key); it != seen.end()) {
      plan.warnings.push_back("line " + std::to_string(line_no) + ": '" + key +
                              "' repeats line " + std::to_string(it->second) +
                              "; the later value wins");
    }
    seen[key] = line_no;

    if (key == "fn") {
      plan.functions = parse_list(value, line_no, key);
      for (const std::string& f : plan.functions) {
        if (!contains(objective_names(), f)) {
          throw ParseError(line_no, "unknown function '" + f + "'");
        }
      }
    } else if (key == "dim") {
      plan.dimensions.clear();
      for (const std::string& d : parse_list(value, line_no, key)) {
        plan.dimensions.push_back(parse_count(d, line_no, key));
      }
      dim_line = line_no;
    } else if (key == "algos") {
      plan.algorithms = parse_list(value, line_no, key);
      for (const std::string& a : plan.algorithms) {
        if (!contains(algorithm_names(), a)) {
          throw ParseError(line_no, "unknown algorithm '" + a + "'");
        }
      }
    } else if (key == "iters") {
      plan.iterations = parse_count(value, line_no, key);
    } else if (key == "trials") {
      plan.trials = parse_count(value, line_no, key);
    } else if (key == "seed") {
      const auto v = parse_number<std::uint64_t>(value);
      if (!v) throw ParseError(line_no, "seed must be a non-negative integer");
      plan.seed = *v;
    } else if (key == "out") {
      plan.out_dir = std::string(value);
    } else if (key == "workers") {
      plan.workers = parse_count(value, line_no, key);
    } else if (key == "theta") {
      plan.zoom.theta = parse_real(value, line_no, key);
    } else if (key == "samples") {
      plan.zoom.samples_per_iter = parse_count(value, line_no, key);
    } else if (key == "particles") {
      plan.zoom.sampler.particle_count = parse_count(value, line_no, key);
    } else if (key == "steps") {
      plan.zoom.sampler.step_count = parse_count(value, line_no, key);
    } else if (key == "lambda") {
      plan.zoom.sampler.lambda = parse_real(value, line_no, key);
    } else if (key == "gamma") {
      if (value == "auto") {
        plan.zoom.auto_gamma = true;
      } else {
        plan.zoom.auto_gamma = false;
        plan.zoom.sampler.gamma = parse_real(value, line_no, key);
        plan.zoom.sampler.epsilon = plan.zoom.sampler.gamma;
      }
    } else if (key == "strategy") {
      if (value == "edu") {
        plan.zoom.strategy = ZoomStrategy::kEdu;
      } else if (value == "svu") {
        plan.zoom.strategy = ZoomStrategy::kSvu;
      } else {
        throw ParseError(line_no, "strategy must be edu or svu");
      }
    } else if (key == "alpha_min") {
      plan.zoom.alpha_min = parse_real(value, line_no, key);
    } else if (key == "alpha_max") {
      plan.zoom.alpha_max = parse_real(value, line_no, key);
    } else if (key == "edu_base") {
      if (value != "redraw" && value != "fixed") {
        throw ParseError(line_no, "edu_base must be redraw or fixed");
      }
      plan.zoom.edu_fixed_base = value == "fixed";
    } else {
      throw ParseError(line_no, "unknown key '" + key + "'");
    }
  }
  if (plan.functions.empty()) throw ParseError(line_no, "plan names no function (fn=...)");
  if (plan.dimensions.empty()) throw ParseError(line_no, "plan names no dimension (dim=...)");
  if (plan.algorithms.empty()) throw ParseError(line_no, "plan names no algorithm (algos=...)");
  for (const std::string& f : plan.functions) {
    for (std::size_t d : plan.dimensions) {
      try {
        registry(f, d);
      } catch (const Error& e) {
        throw ParseError(dim_line, e.what());
      }
    }
  }
  try {
    plan.zoom.validate(plan.dimensions.front());
  } catch (const Error& e) {
    throw ParseError(line_no, e.what());
  }
  return plan;
}

Rng trial_rng(std::uint64_t seed, std::string_view function, std::string_view algorithm,
              std::size_t trial) {
  const std::uint64_t key =
      mix64(hash_label(function) ^ mix64(hash_label(algorithm) ^ mix64(trial + 1)));
  return Rng(seed, key);
}

RunRecord run_single(const ExperimentPlan& plan, const std::string& function,
                     std::size_t dimension, const std::string& algorithm, std::size_t trial) {
  RunRecord rec;
  rec.algorithm = algorithm;
  rec.function = function;
  rec.dimension = dimension;
  rec.trial = trial;
  try {
    const Objective objective = make_objective(function, dimension);
    const Rng rng = trial_rng(plan.seed, function, algorithm, trial);
    OptimizeResult result;
    if (algorithm == "so") {
      ZoomParams zp = plan.zoom;
      zp.max_iters = plan.iterations;
      result = optimize(objective, zp, rng);
    } else {
      BaselineParams bp;
      bp.iterations = plan.iterations;
      if (auto g = analytic_gradient(function)) {
        bp.gradient.mode = GradientOracle::Mode::kAnalytic;
        bp.gradient.analytic = std::move(*g);
      }
      result = run_baseline(algorithm, objective, bp, rng);
    }
    rec.trace = std::move(result.trace);
  } catch (const std::exception& e) {
    rec.trace.clear();
    rec.error = e.what();
  }
  return rec;
}

std::vector<RunRecord> run_plan(const ExperimentPlan& plan, const ProgressFn& progress) {
  plan.validate();
  struct Cell {
    const std::string* function;
    std::size_t dimension;
    const std::string* algorithm;
    std::size_t trial;
  };
  std::vector<Cell> cells;
  for (const std::string& f : plan.functions) {
    for (std::size_t d : plan.dimensions) {
      for (const std::string& a : plan.algorithms) {
        for (std::size_t t = 0; t < plan.trials; ++t) cells.push_back({&f, d, &a, t});
      }
    }
  }
  std::vector<RunRecord> out(cells.size());
  std::mutex mu;
  std::size_t next = 0;
  std::size_t done = 0;
  auto worker = [&] {
    while (true) {
      std::size_t i;
      {
        std::lock_guard lock(mu);
        if (next == cells.size()) return;
        i = next++;
      }
      const Cell& c = cells[i];
      RunRecord r = run_single(plan, *c.function, c.dimension, *c.algorithm, c.trial);
      std::lock_guard lock(mu);
      out[i] = std::move(r);
      ++done;
      if (progress) progress(out[i], done, cells.size());
    }
  };
  const std::size_t n_workers = std::min(plan.workers, std::max<std::size_t>(cells.size(), 1));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return out;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  struct Acc {
    SummaryRow row;
    std::vector<double> finals;
    std::vector<double> elapsed;
  };
  std::vector<Acc> groups;
  for (const RunRecord& r : records) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Acc& a) {
      return a.row.algorithm == r.algorithm && a.row.function == r.function &&
             a.row.dimension == r.dimension;
    });
    if (it == groups.end()) {
      Acc a;
      a.row.algorithm = r.algorithm;
      a.row.function = r.function;
      a.row.dimension = r.dimension;
      groups.push_back(std::move(a));
      it = groups.end() - 1;
    }
    if (!r.ok() || r.trace.empty()) {
      ++it->row.failures;
      continue;
    }
    it->finals.push_back(r.trace.back().best_value);
    it->elapsed.push_back(r.trace.back().elapsed_ms);
  }
  std::vector<SummaryRow> rows;
  for (Acc& a : groups) {
    SummaryRow row = a.row;
    row.runs = a.finals.size();
    if (row.runs > 0) {
      const double n = static_cast<double>(row.runs);
      double sum = 0.0, tsum = 0.0;
      for (std::size_t i = 0; i < a.finals.size(); ++i) {
        sum += a.finals[i];
        tsum += a.elapsed[i];
      }
      row.mean_best = sum / n;
      row.mean_elapsed_ms = tsum / n;
      double ss = 0.0;
      for (double v : a.finals) ss += (v - row.mean_best) * (v - row.mean_best);
      row.std_best = std::isfinite(row.mean_best) ? std::sqrt(ss / n) : 0.0;
    } else {
      row.mean_best = std::numeric_limits<double>::quiet_NaN();
      row.std_best = std::numeric_limits<double>::quiet_NaN();
      row.mean_elapsed_ms = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string trace_csv(const std::vector<RunRecord>& records) {
  std::string s(kTraceHeader);
  s += '\n';
  for (const RunRecord& r : records) {
    if (!r.ok()) continue;
    const std::string prefix = r.algorithm + ',' + r.function + ',' +
                               std::to_string(r.dimension) + ',' + std::to_string(r.trial) + ',';
    for (const IterationRecord& it : r.trace) {
      s += prefix;
      s += std::to_string(it.iteration);
      s += ',';
      s += format_double(it.best_value);
      s += ',';
      s += std::to_string(it.fevals);
      s += ',';
      s += format_double(it.elapsed_ms);
      s += '\n';
    }
  }
  return s;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string s(kSummaryHeader);
  s += '\n';
  for (const SummaryRow& r : rows) {
    s += r.algorithm + ',' + r.function + ',' + std::to_string(r.dimension) + ',' +
         format_double(r.mean_best) + ',' + format_double(r.std_best) + ',' +
         format_double(r.mean_elapsed_ms) + '\n';
  }
  return s;
}

std::vector<RunRecord> parse_trace_csv(std::string_view text) {
  std::vector<RunRecord> out;
  int line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    if (raw.empty()) continue;
    if (line_no == 1) {
      if (raw != kTraceHeader) throw ParseError(1, "unexpected trace header");
      continue;
    }
    const std::vector<std::string> f = split(raw, ',');
    if (f.size() != 8) throw ParseError(line_no, "expected 8 fields");
    const auto dim = parse_number<std::uint64_t>(f[2]);
    const auto trial = parse_number<std::uint64_t>(f[3]);
    const auto iter = parse_number<std::uint64_t>(f[4]);
    const auto best = parse_number<double>(f[5]);
    const auto fevals = parse_number<std::uint64_t>(f[6]);
    const auto elapsed = parse_number<double>(f[7]);
    if (!dim || !trial || !iter || !best || !fevals || !elapsed) {
      throw ParseError(line_no, "malformed trace row");
    }
    if (out.empty() || out.back().algorithm != f[0] || out.back().function != f[1] ||
        out.back().dimension != *dim || out.back().trial != *trial) {
      RunRecord r;
      r.algorithm = f[0];
      r.function = f[1];
      r.dimension = *dim;
      r.trial = *trial;
      out.push_back(std::move(r));
    }
    out.back().trace.push_back({*iter, *best, *fevals, *elapsed});
  }
  if (line_no == 0) throw ParseError(1, "empty trace file");
  return out;
}

std::string samples_csv(const std::vector<Vector>& samples) {
  std::string s;
  const std::size_t d = samples.empty() ? 0 : samples.front().size();
  for (std::size_t j = 0; j < d; ++j) s += (j ? ",x" : "x") + std::to_string(j);
  s += '\n';
  for (const Vector& x : samples) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j) s += ',';
      s += format_double(x[j]);
    }
    s += '\n';
  }
  return s;
}

std::string theory_csv(const std::vector<TheoryCheckReport>& reports) {
  std::string s = "check,kind,name,value\n";
  for (const TheoryCheckReport& r : reports) {
    for (const auto& [name, v] : r.measured) {
      s += r.name + ",measured," + name + ',' + format_double(v) + '\n';
    }
    for (const auto& [name, v] : r.bounds) {
      s += r.name + ",bound," + name + ',' + format_double(v) + '\n';
    }
    s += r.name + ",replicates,count," + std::to_string(r.replicates) + '\n';
    s += r.name + ",result,passed," + (r.passed ? "1" : "0") + '\n';
  }
  return s;
}

std::string convergence_svg(const std::vector<RunRecord>& records, const std::string& title) {
  if (records.empty()) throw InvalidArgument("convergence chart needs at least one record");
  // Mean over trials of the finite best values at each iteration.
  std::vector<std::string> algos;
  std::vector<std::vector<std::pair<double, double>>> series;
  std::size_t max_iter = 1;
  for (const RunRecord& r : records) {
    if (!contains(algos, r.algorithm)) algos.push_back(r.algorithm);
  }
  std::vector<double> all;
  for (const std::string& a : algos) {
    std::map<std::size_t, std::pair<double, std::size_t>> acc;
    for (const RunRecord& r : records) {
      if (r.algorithm != a || !r.ok()) continue;
      for (const IterationRecord& it : r.trace) {
        if (!std::isfinite(it.best_value)) continue;
        auto& slot = acc[it.iteration];
        slot.first += it.best_value;
        ++slot.second;
      }
    }
    std::vector<std::pair<double, double>> pts;
    for (const auto& [k, s] : acc) {
      pts.emplace_back(static_cast<double>(k), s.first / static_cast<double>(s.second));
      all.push_back(pts.back().second);
      max_iter = std::max(max_iter, k);
    }
    series.push_back(std::move(pts));
  }
  constexpr double W = 640, H = 400, L = 80, R = 130, T = 40, B = 50;
  const Axis y(all, H - B, T, true);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << svg_num(W / 2) << "\" y=\"22\" font-size=\"14\" text-anchor=\"middle\">"
     << svg_escape(title) << "</text>\n";
  draw_value_axis(os, y, L, T, H - B, "objective value");
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  auto xmap = [&](double k) { return L + k / static_cast<double>(max_iter) * (W - L - R); };
  for (int i = 0; i <= 4; ++i) {
    const double k = static_cast<double>(max_iter) * i / 4.0;
    os << "<text x=\"" << svg_num(xmap(k)) << "\" y=\"" << H - B + 16
       << "\" font-size=\"10\" text-anchor=\"middle\">" << tick_label(k) << "</text>\n";
  }
  os << "<text x=\"" << svg_num(L + (W - L - R) / 2) << "\" y=\"" << H - 10
     << "\" font-size=\"12\" text-anchor=\"middle\">iteration</text>\n";
  for (std::size_t a = 0; a < algos.size(); ++a) {
    const char* color = kPalette[a % std::size(kPalette)];
    if (!series[a].empty()) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < series[a].size(); ++i) {
        os << (i ? " " : "") << svg_num(xmap(series[a][i].first)) << ','
           << svg_num(y(series[a][i].second));
      }
      os << "\"/>\n";
    }
    const double ly = T + 14.0 * static_cast<double>(a);
    os << "<line x1=\"" << W - R + 10 << "\" y1=\"" << svg_num(ly) << "\" x2=\"" << W - R + 30
       << "\" y2=\"" << svg_num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << W - R + 34 << "\" y=\"" << svg_num(ly + 4) << "\" font-size=\"11\">"
       << svg_escape(algos[a]) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string comparison_svg(const std::vector<SummaryRow>& rows, const std::string& title) {
  if (rows.empty()) throw InvalidArgument("comparison chart needs at least one summary row");
  constexpr double W = 900, H = 400, T = 40, B = 60, L = 80, PANEL = 360, GAP = 90;
  std::vector<double> values, times;
  for (const SummaryRow& r : rows) {
    values.push_back(r.mean_best);
    values.push_back(r.mean_best + r.std_best);
    times.push_back(r.mean_elapsed_ms);
  }
  const Axis vy(values, H - B, T, true);
  const Axis ty(times, H - B, T, false);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << svg_num(W / 2) << "\" y=\"22\" font-size=\"14\" text-anchor=\"middle\">"
     << svg_escape(title) << "</text>\n";
  const double n = static_cast<double>(rows.size());
  const double slot = PANEL / n;
  const double bar = slot * 0.7;
  auto panel = [&](double x0, const Axis& axis, bool is_value) {
    draw_value_axis(os, axis, x0, T, H - B, is_value ? "mean minimum value" : "mean time (ms)");
    os << "<line x1=\"" << svg_num(x0) << "\" y1=\"" << H - B << "\" x2=\"" << svg_num(x0 + PANEL)
       << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const SummaryRow& r = rows[i];
      const bool proposal = r.algorithm == "so";
      const char* color = is_value ? (proposal ? "#2ca02c" : "#1f77b4")
                                   : (proposal ? "#9467bd" : "#d62728");
      const double v = is_value ? r.mean_best : r.mean_elapsed_ms;
      const double cx = x0 + slot * (static_cast<double>(i) + 0.5);
      if (std::isfinite(v)) {
        const double top = axis(v);
        const double base = axis.base();
        os << "<rect class=\"" << (proposal ? "proposal" : "baseline") << "\" x=\""
           << svg_num(cx - bar / 2) << "\" y=\"" << svg_num(std::min(top, base)) << "\" width=\""
           << svg_num(bar) << "\" height=\"" << svg_num(std::abs(base - top)) << "\" fill=\""
           << color << "\"/>\n";
        if (is_value && std::isfinite(r.std_best) && r.std_best > 0.0) {
          const double lo = axis(r.mean_best - r.std_best);
          const double hi = axis(r.mean_best + r.std_best);
          os << "<line x1=\"" << svg_num(cx) << "\" y1=\"" << svg_num(lo) << "\" x2=\""
             << svg_num(cx) << "\" y2=\"" << svg_num(hi) << "\" stroke=\"black\"/>\n";
        }
      }
      os << "<text x=\"" << svg_num(cx) << "\" y=\"" << H - B + 16
         << "\" font-size=\"11\" text-anchor=\"middle\">" << svg_escape(r.algorithm)
         << "</text>\n";
    }
  };
  panel(L, vy, true);
  panel(L + PANEL + GAP, ty, false);
  os << "</svg>\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BenchOutputs write_bench_outputs(const ExperimentPlan& plan,
                                 const std::vector<RunRecord>& records) {
  namespace fs = std::filesystem;
  BenchOutputs out;
  for (const RunRecord& r : records) out.failures += r.ok() ? 0 : 1;
  const fs::path dir(plan.out_dir);
  const std::vector<SummaryRow> rows = summarize(records);
  auto emit = [&](const fs::path& p, const std::string& text) {
    write_text_file(p.string(), text);
    out.files.push_back(p.string());
  };
  emit(dir / "trace.csv", trace_csv(records));
  emit(dir / "summary.csv", summary_csv(rows));
  for (const std::string& f : plan.functions) {
    for (std::size_t d : plan.dimensions) {
      std::vector<RunRecord> cell;
      std::vector<SummaryRow> cell_rows;
      for (const RunRecord& r : records) {
        if (r.function == f && r.dimension == d && r.ok()) cell.push_back(r);
      }
      for (const SummaryRow& r : rows) {
        if (r.function == f && r.dimension == d && r.runs > 0) cell_rows.push_back(r);
      }
      if (cell.empty()) continue;
      const std::string stem = f + "_d" + std::to_string(d);
      const std::string label = f + " (d = " + std::to_string(d) + ")";
      emit(dir / ("convergence_" + stem + ".svg"), convergence_svg(cell, label));
      emit(dir / ("comparison_" + stem + ".svg"), comparison_svg(cell_rows, label));
    }
  }
  return out;
}

}  // namespace zopt
