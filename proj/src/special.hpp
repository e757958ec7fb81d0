#pragma once

namespace zopt {

/// Gamma function for a > 0 (Lanczos, g = 7). Throws InvalidArgument.
double gamma_fn(double a);
double log_gamma(double a);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
/// Series below x = a + 1, Lentz continued fraction above.
double gamma_p(double a, double x);

/// Lower incomplete gamma gamma(a, x) = int_0^x t^(a-1) e^(-t) dt.
double lower_inc_gamma(double a, double x);

/// x with P(a, x) = p, by bisection to 1e-12 relative width.
/// Throws NumericError if the bracket cannot be closed.
double gamma_p_inverse(double a, double p);

}  // namespace zopt
