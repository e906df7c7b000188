#pragma once

// Reference integrators for tests, independent of the library's quadrature.

#include <cmath>
#include <functional>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Double-exponential rule for int_0^inf f(x) dx with x = exp(pi/2 sinh t).
/// Step h and range [-6, 6] suffice for smooth integrands decaying at least
/// exponentially and mildly singular (integrable) at 0.
inline double de_half_line(const std::function<double(double)>& f, double h = 1.0 / 64) {
  double sum = 0.0;
  for (double t = -6.0; t <= 6.0 + 1e-12; t += h) {
    const double x = std::exp(0.5 * kPi * std::sinh(t));
    const double w = x * 0.5 * kPi * std::cosh(t);
    const double v = f(x);
    if (std::isfinite(v)) sum += v * w;
  }
  return sum * h;
}

/// Double-exponential rule for int_a^b with x = mid + half tanh(pi/2 sinh t).
inline double de_interval(const std::function<double(double)>& f, double a, double b,
                          double h = 1.0 / 64) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (double t = -4.0; t <= 4.0 + 1e-12; t += h) {
    const double s = 0.5 * kPi * std::sinh(t);
    const double c = std::cosh(s);
    const double x = mid + half * std::tanh(s);
    if (x <= a || x >= b) continue;
    const double w = half * 0.5 * kPi * std::cosh(t) / (c * c);
    sum += f(x) * w;
  }
  return sum * h;
}

inline bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace oracle
