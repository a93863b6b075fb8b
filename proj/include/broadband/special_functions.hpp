#pragma once

namespace broadband {

/// Gamma(x) = integral_0^x y / (e^y - 1) dy.  x = +infinity gives pi^2/6.
double gamma_fn(double x);

/// integral_0^upper g(a / (e^y - 1)) dy, upper may be +infinity.
double bose_entropy_integral(double a, double upper);

/// Lambda(x) = ln2 * integral_0^inf g(x / (e^y - 1)) dy, so Lambda(1) = pi^2/3.
double lambda_fn(double x);

}  // namespace broadband
