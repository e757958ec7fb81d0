#include "special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "error.hpp"

namespace zopt {

namespace {

constexpr double kTolerance = 1e-12;
constexpr int kMaxTerms = 10000;

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

void require_positive(double a, const char* what) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw InvalidArgument(std::string(what) + " requires a > 0, got " + std::to_string(a));
  }
}

// Lanczos sum for Gamma(z + 1), z >= 0.5 - 1.
double lanczos_log(double a) {
  const double z = a - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + 7.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

double series_p(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxTerms; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kTolerance) break;
  }
  return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
}

// Upper tail Q(a, x) by the modified Lentz continued fraction.
double continued_fraction_q(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kTolerance) break;
  }
  return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
}

}  // namespace

double log_gamma(double a) {
  require_positive(a, "log_gamma");
  if (a < 0.5) {
    // Reflection keeps the Lanczos sum in its accurate range.
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * a)) - lanczos_log(1.0 - a);
  }
  return lanczos_log(a);
}

double gamma_fn(double a) {
  require_positive(a, "gamma_fn");
  if (a < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * a) * std::exp(lanczos_log(1.0 - a)));
  }
  return std::exp(lanczos_log(a));
}

double gamma_p(double a, double x) {
  require_positive(a, "gamma_p");
  if (!(x >= 0.0)) throw InvalidArgument("gamma_p requires x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return series_p(a, x);
  return 1.0 - continued_fraction_q(a, x);
}

double lower_inc_gamma(double a, double x) { return gamma_p(a, x) * gamma_fn(a); }

double gamma_p_inverse(double a, double p) {
  require_positive(a, "gamma_p_inverse");
  if (!(p >= 0.0 && p < 1.0)) throw InvalidArgument("gamma_p_inverse requires p in [0, 1)");
  if (p == 0.0) return 0.0;
  double lo = 0.0;
  double hi = std::max(1.0, a);
  int grow = 0;
  while (gamma_p(a, hi) < p) {
    lo = hi;
    hi *= 2.0;
    if (++grow > 2000) throw NumericError("gamma_p_inverse: cannot bracket p");
  }
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= kTolerance * hi) return mid;
    if (gamma_p(a, mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw NumericError("gamma_p_inverse: bisection did not converge for a = " +
                     std::to_string(a) + ", p = " + std::to_string(p));
}

}  // namespace zopt
