#include "heatbind/numeric.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "heatbind/error.hpp"

namespace heatbind::numeric {

namespace {

void check_tolerance(const char* where, const QuadratureResult& r, double l1,
                     const QuadratureOptions& opts) {
  const double allowed = std::max(opts.abs_tol, opts.rel_tol * l1);
  if (!std::isfinite(r.value) || r.error > 10.0 * allowed) {
    std::ostringstream os;
    os << where << ": quadrature error estimate " << r.error
       << " exceeds tolerance " << allowed << " (value " << r.value << ")";
    throw NumericalError(os.str());
  }
}

}  // namespace

QuadratureResult integrate(const Function& f, double a, double b,
                           const QuadratureOptions& opts) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  struct Piece {
    double lo, hi, value, error, l1;
    bool operator<(const Piece& o) const { return error < o.error; }
  };
  // Single G15/K31 panel. Boost reports the panel error on the interval
  // mapped to [-1, 1], so it is rescaled here.
  auto panel = [&f](double lo, double hi) {
    double err = 0.0, l1 = 0.0;
    const double v = Rule::integrate(f, lo, hi, 0, 0.0, &err, &l1);
    return Piece{lo, hi, v, err * 0.5 * (hi - lo), l1};
  };
  if (a == b) return {};
  std::priority_queue<Piece> queue;
  queue.push(panel(std::min(a, b), std::max(a, b)));
  QuadratureResult r;
  double l1 = 0.0;
  const std::size_t max_pieces = std::size_t{1} << std::min(opts.max_depth, 20u);
  auto totals = [&] {
    auto copy = queue;
    r.value = 0.0;
    r.error = 0.0;
    l1 = 0.0;
    while (!copy.empty()) {
      r.value += copy.top().value;
      r.error += copy.top().error;
      l1 += copy.top().l1;
      copy.pop();
    }
  };
  double value = queue.top().value, error = queue.top().error, norm = queue.top().l1;
  while (error > std::max(opts.abs_tol, opts.rel_tol * norm) && queue.size() < max_pieces) {
    const Piece worst = queue.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;
    queue.pop();
    const Piece left = panel(worst.lo, mid);
    const Piece right = panel(mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    norm += left.l1 + right.l1 - worst.l1;
    queue.push(left);
    queue.push(right);
  }
  totals();
  if (b < a) r.value = -r.value;
  if (!std::isfinite(r.value) || r.error > 10.0 * std::max(opts.abs_tol, opts.rel_tol * l1)) {
    std::ostringstream os;
    os << "integrate on [" << a << ", " << b << "]";
    check_tolerance(os.str().c_str(), r, l1, opts);
  }
  return r;
}

QuadratureResult integrate_to_infinity(const Function& f, double a,
                                       const QuadratureOptions& opts) {
  boost::math::quadrature::exp_sinh<double> integrator(opts.max_depth);
  QuadratureResult r;
  double l1 = 0.0;
  std::size_t levels = 0;
  r.value = integrator.integrate(f, a, std::numeric_limits<double>::infinity(),
                                 opts.rel_tol, &r.error, &l1, &levels);
  check_tolerance("integrate_to_infinity", r, l1, opts);
  return r;
}

QuadratureResult integrate_real_line(const Function& f,
                                     const QuadratureOptions& opts) {
  boost::math::quadrature::sinh_sinh<double> integrator(opts.max_depth);
  QuadratureResult r;
  double l1 = 0.0;
  std::size_t levels = 0;
  r.value = integrator.integrate(f, opts.rel_tol, &r.error, &l1, &levels);
  check_tolerance("integrate_real_line", r, l1, opts);
  return r;
}

double expint_e1(double x) {
  require(x > 0.0, "expint_e1: argument must be positive");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (x < 1.0) {
    // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    double sum = 0.0;
    double term = 1.0;  // (-x)^k / k!
    for (int k = 1; k < 200; ++k) {
      term *= -x / k;
      const double contrib = term / k;
      sum += contrib;
      if (std::abs(contrib) < eps * std::abs(sum)) break;
    }
    return -kEulerGamma - std::log(x) - sum;
  }
  // Modified Lentz on E1(x) = e^{-x} / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...)))
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < eps) {
      return h * std::exp(-x);
    }
  }
  throw NumericalError("expint_e1: continued fraction did not converge");
}

RootResult solve_bracketed(const Function& f, double lo, double hi,
                           double x_tol, int max_iterations) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  RootResult out;
  if (f_lo == 0.0 || f_hi == 0.0) {
    out.root = f_lo == 0.0 ? lo : hi;
    out.lo = out.hi = out.root;
    return out;
  }
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    std::ostringstream os;
    os << "solve_bracketed: no sign change on [" << lo << ", " << hi
       << "] (f = " << f_lo << ", " << f_hi << ")";
    throw NumericalError(os.str());
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  // Width at the last checkpoint; if two consecutive secant steps fail to
  // halve the bracket, the next step is forced to bisect.
  double checkpoint = std::abs(hi - lo);
  int steps_since_checkpoint = 0;
  int it = 0;
  for (; it < max_iterations; ++it) {
    const double a = std::min(lo, hi);
    const double b = std::max(lo, hi);
    const double width = b - a;
    if (width <= 4.0 * eps * std::max(std::abs(a), std::abs(b)) + x_tol) break;

    double x = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    const bool stalled = steps_since_checkpoint >= 2 && width > 0.5 * checkpoint;
    if (!std::isfinite(x) || x <= a || x >= b || stalled) {
      x = 0.5 * (a + b);
      checkpoint = width;
      steps_since_checkpoint = 0;
    } else if (++steps_since_checkpoint > 2) {
      checkpoint = width;
      steps_since_checkpoint = 0;
    }
    const double fx = f(x);
    if (fx == 0.0) {
      lo = hi = x;
      f_lo = f_hi = 0.0;
      ++it;
      break;
    }
    if ((fx < 0.0) == (f_lo < 0.0)) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
      f_hi = fx;
    }
  }
  if (it >= max_iterations) {
    std::ostringstream os;
    os << "solve_bracketed: no convergence after " << max_iterations
       << " iterations, bracket [" << lo << ", " << hi << "]";
    throw NumericalError(os.str());
  }
  out.lo = lo;
  out.hi = hi;
  out.f_lo = f_lo;
  out.f_hi = f_hi;
  out.root = std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
  out.residual = std::min(std::abs(f_lo), std::abs(f_hi));
  out.iterations = it;
  return out;
}

MaximumResult golden_section_maximize(const Function& f, double a, double b,
                                      double rel_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (std::abs(b - a) > rel_tol * (std::abs(c) + std::abs(d)) && it < 500) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  MaximumResult out;
  out.argmax = 0.5 * (a + b);
  out.value = f(out.argmax);
  out.iterations = it;
  return out;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2,
          "fit_line: need at least two paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  require(sxx > 0.0, "fit_line: abscissae are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

double x_over_sinh(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) return 1.0 - x * x / 6.0;
  if (ax > 700.0) return 0.0;
  return x / std::sinh(x);
}

}  // namespace heatbind::numeric
