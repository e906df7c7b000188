#pragma once

// Numerical building blocks shared by the physics modules: adaptive
// quadrature, the exponential integral, monotone root bracketing and a
// golden-section maximizer.

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace heatbind::numeric {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;

using Function = std::function<double(double)>;

struct QuadratureOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-15;
  unsigned max_depth = 18;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod on a finite interval [a, b]. Throws
/// NumericalError when the error estimate exceeds the requested tolerance.
QuadratureResult integrate(const Function& f, double a, double b,
                           const QuadratureOptions& opts = {});

/// Integral over [a, inf) of an integrand decaying at least exponentially.
QuadratureResult integrate_to_infinity(const Function& f, double a,
                                       const QuadratureOptions& opts = {});

/// Integral over (-inf, inf).
QuadratureResult integrate_real_line(const Function& f,
                                     const QuadratureOptions& opts = {});

/// Exponential integral E1(x) = int_x^inf e^{-s}/s ds for x > 0.
/// Power series below 1, Lentz continued fraction from 1 upward.
double expint_e1(double x);

struct RootResult {
  double root = 0.0;
  double lo = 0.0;  // final bracket
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
  double residual = 0.0;  // |f(root)|
  int iterations = 0;
};

/// Zero of f on [lo, hi] where f(lo) and f(hi) have opposite signs.
/// Secant steps are accepted only while they stay strictly inside the
/// bracket and shrink it fast enough; otherwise the step is a bisection.
/// Stops when the bracket has collapsed to a few ulps (plus x_tol) or f is
/// exactly zero.
RootResult solve_bracketed(const Function& f, double lo, double hi,
                           double x_tol = 0.0, int max_iterations = 400);

struct MaximumResult {
  double argmax = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Golden-section search for the maximum of a unimodal f on [a, b].
MaximumResult golden_section_maximize(const Function& f, double a, double b,
                                      double rel_tol = 1e-12);

/// Ordinary least-squares line y = slope*x + intercept.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// x / sinh(x) without cancellation near zero.
double x_over_sinh(double x);

}  // namespace heatbind::numeric
