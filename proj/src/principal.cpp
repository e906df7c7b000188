#include "heatbind/principal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "heatbind/error.hpp"
#include "heatbind/numeric.hpp"
#include "heatbind/parallel.hpp"

namespace heatbind {

using numeric::kPi;

namespace {

constexpr double kTailTol = 1e-17;

void require_bound_energy(double energy, const char* where) {
  if (!(energy < 0.0) || !std::isfinite(energy)) {
    std::ostringstream os;
    os << where << ": energy must be negative and finite (got " << energy << ")";
    throw InvalidArgument(os.str());
  }
}

void require_homogeneous(const ManifoldSpec& m, const char* where) {
  if (!m.is_homogeneous_2d()) {
    throw InvalidArgument(std::string(where) +
                          ": two-body reduction needs plane, torus or sphere, got " +
                          m.name());
  }
}

double length_scale_squared(const ManifoldSpec& m) {
  if (const auto* t = m.as<Torus>()) return t->length * t->length;
  if (const auto* s = m.as<Sphere>()) return s->radius * s->radius;
  return 1.0;
}

// int_0^inf x(t) e^{-b t} dt in the rescaled time tau = b t. Interior cuts
// sit where x changes character (t ~ geometric length^2).
double laplace_integral(const numeric::Function& x, double b, double scale2) {
  auto f = [&](double tau) { return x(tau / b) * std::exp(-tau); };
  // Decade cuts from the curvature scale up to tau = 1: the excess turns
  // on near t ~ scale^2 and then relaxes like 1/t.
  std::vector<double> cuts = {0.0};
  for (double c = std::max(0.01 * b * scale2, 1e-14); c < 1.0; c *= 10.0) cuts.push_back(c);
  cuts.push_back(1.0);
  numeric::QuadratureOptions opts;
  opts.rel_tol = 1e-13;
  opts.abs_tol = 1e-14;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += numeric::integrate(f, cuts[i], cuts[i + 1], opts).value;
  }
  total += numeric::integrate_to_infinity(f, 1.0, opts).value;
  return total / b;
}

double flat_part(const RenormScheme& scheme, double binding) {
  return (std::log(binding) - scheme.log_mu2()) / (8.0 * kPi);
}

// sum_k exp(-t c (k^2 + (q-k)^2)) over k in Z.
double mode_lattice_sum(int q, double tc) {
  const long center = static_cast<long>(std::floor(q / 2.0));
  auto term = [&](long k) {
    const double kk = static_cast<double>(k);
    const double qk = static_cast<double>(q) - kk;
    return std::exp(-tc * (kk * kk + qk * qk));
  };
  double sum = term(center);
  for (long j = 1;; ++j) {
    const double up = term(center + j);
    const double down = term(center - j);
    sum += up + down;
    if (up + down <= kTailTol * sum) break;
  }
  return sum;
}

// 2 sum_{m>=1} (-1)^{m q} exp(-pi^2 m^2 / a): Poisson-side correction.
double mode_poisson_correction(int q, double a) {
  double delta = 0.0;
  const bool odd = (q % 2) != 0;
  for (long m = 1;; ++m) {
    const double mag = 2.0 * std::exp(-kPi * kPi * static_cast<double>(m) * m / a);
    delta += (odd && (m % 2 == 1)) ? -mag : mag;
    if (mag <= kTailTol) break;
  }
  return delta;
}

}  // namespace

double omega0(const ManifoldSpec& m, const RenormScheme& scheme, double energy) {
  require_bound_energy(energy, "omega0");
  require_homogeneous(m, "omega0");
  const double binding = -energy;
  if (m.as<Plane>()) return flat_part(scheme, binding);
  auto excess = [&m](double t) { return heat_trace_excess(m, 2.0 * t); };
  return flat_part(scheme, binding) - laplace_integral(excess, binding, length_scale_squared(m));
}

double torus_mode_excess(double length, TorusMode mode, double t) {
  const double c = 4.0 * kPi * kPi / (length * length);
  const double a = 2.0 * t * c;
  if (a >= kPi) {
    const double lambda = mode_lattice_sum(mode.qx, t * c) *
                          mode_lattice_sum(mode.qy, t * c) / (length * length);
    return lambda - 1.0 / (8.0 * kPi * t);
  }
  const double g = 0.5 * t * c * (static_cast<double>(mode.qx) * mode.qx +
                                  static_cast<double>(mode.qy) * mode.qy);
  const double dx = mode_poisson_correction(mode.qx, a);
  const double dy = mode_poisson_correction(mode.qy, a);
  return (std::expm1(-g) + std::exp(-g) * (dx + dy + dx * dy)) / (8.0 * kPi * t);
}

double omega_mode(double length, const RenormScheme& scheme, double energy, TorusMode mode) {
  require_bound_energy(energy, "omega_mode");
  require(length > 0.0, "omega_mode: side length must be positive");
  const double binding = -energy;
  auto excess = [&](double t) { return torus_mode_excess(length, mode, t); };
  return flat_part(scheme, binding) - laplace_integral(excess, binding, length * length);
}

BoundStateResult solve_two_body(const ManifoldSpec& m, const RenormScheme& scheme,
                                const SolveOptions& opts) {
  require_homogeneous(m, "solve_two_body");
  require(opts.window_min > 0.0 && opts.window_max > opts.window_min,
          "solve_two_body: search window must satisfy 0 < min < max");
  const double log_mu2 = scheme.log_mu2();
  // omega is increasing in y = ln|E|.
  auto f = [&](double y) { return omega0(m, scheme, -std::exp(y)); };
  const double y_lo = log_mu2 + std::log(opts.window_min);
  const double y_hi = log_mu2 + std::log(opts.window_max);
  const double f_lo = f(y_lo);
  const double f_hi = f(y_hi);
  if (!(f_lo < 0.0 && f_hi > 0.0)) {
    std::ostringstream os;
    os << "solve_two_body: no sign change of omega0 for E in [" << -std::exp(y_hi) << ", "
       << -std::exp(y_lo) << "] (omega = " << f_hi << ", " << f_lo << ") on " << m.name();
    throw NumericalError(os.str());
  }
  const auto root = numeric::solve_bracketed(f, y_lo, y_hi, 1e-15);
  BoundStateResult out;
  out.energy = -std::exp(root.root);
  double a = std::min(root.lo, root.hi);
  double b = std::max(root.lo, root.hi);
  // Report a bracket with strict signs on both ends even when the iteration
  // landed exactly on the zero.
  for (double delta = 1e-13 * std::max(1.0, std::abs(root.root)); delta < 1e-3; delta *= 4.0) {
    const double lo = root.root - delta, hi = root.root + delta;
    if (f(lo) < 0.0 && f(hi) > 0.0) {
      a = lo;
      b = hi;
      break;
    }
  }
  out.bracket_lo = -std::exp(b);
  out.bracket_hi = -std::exp(a);
  out.residual = root.residual;
  out.iterations = root.iterations;
  if (!(out.residual < 1e-10)) {
    std::ostringstream os;
    os << "solve_two_body: residual " << out.residual << " above 1e-10";
    throw NumericalError(os.str());
  }
  return out;
}

std::vector<PrincipalCurve> flow_curves(const ManifoldSpec& m, const RenormScheme& scheme,
                                        std::span<const double> energies,
                                        std::span<const TorusMode> modes) {
  require_homogeneous(m, "flow_curves");
  require(energies.size() >= 2, "flow_curves: need at least two energies");
  require(!modes.empty(), "flow_curves: need at least one mode");
  for (std::size_t i = 0; i < energies.size(); ++i) {
    require_bound_energy(energies[i], "flow_curves");
    if (i > 0) require(energies[i] > energies[i - 1], "flow_curves: energies must increase");
  }
  const auto* tor = m.as<Torus>();
  for (const auto& mode : modes) {
    if (!tor && !(mode == TorusMode{})) {
      throw InvalidArgument("flow_curves: excited modes are implemented on the torus only");
    }
  }

  const std::size_t n = energies.size();
  std::vector<PrincipalCurve> curves(modes.size());
  std::vector<double> values(n * modes.size());
  parallel_for(values.size(), [&](std::size_t idx) {
    const std::size_t k = idx / n;
    const std::size_t i = idx % n;
    values[idx] = tor ? omega_mode(tor->length, scheme, energies[i], modes[k])
                      : omega0(m, scheme, energies[i]);
  });
  for (std::size_t k = 0; k < modes.size(); ++k) {
    curves[k].mode = modes[k];
    const double* w = values.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) {
      double slope;
      if (i == 0) {
        slope = (w[1] - w[0]) / (energies[1] - energies[0]);
      } else if (i + 1 == n) {
        slope = (w[i] - w[i - 1]) / (energies[i] - energies[i - 1]);
      } else {
        slope = (w[i + 1] - w[i - 1]) / (energies[i + 1] - energies[i - 1]);
      }
      curves[k].samples.push_back({energies[i], w[i], slope});
    }
  }
  return curves;
}

DerivativeCheck domega_dE_check(const ManifoldSpec& m, const RenormScheme& scheme,
                                double energy) {
  require_bound_energy(energy, "domega_dE_check");
  require_homogeneous(m, "domega_dE_check");
  const double binding = -energy;
  auto central = [&](double h) {
    return (omega0(m, scheme, energy + h) - omega0(m, scheme, energy - h)) / (2.0 * h);
  };
  const double h = 0.01 * binding;
  const double coarse = central(h);
  const double fine = central(0.5 * h);
  DerivativeCheck out;
  out.finite_difference = (4.0 * fine - coarse) / 3.0;

  double weighted = 0.0;
  if (!m.as<Plane>()) {
    auto x = [&m](double t) { return t * heat_trace_excess(m, 2.0 * t); };
    weighted = laplace_integral(x, binding, length_scale_squared(m));
  }
  out.integral = -(1.0 / (8.0 * kPi * binding) + weighted);

  if (std::abs(out.finite_difference - out.integral) > 1e-6 * std::abs(out.integral)) {
    std::ostringstream os;
    os << "domega_dE_check: finite difference " << out.finite_difference
       << " disagrees with the derivative integral " << out.integral;
    throw NumericalError(os.str());
  }
  return out;
}

double nbody_bound_from_binding(int n, double volume, double binding) {
  require(n >= 2, "nbody bound: need n >= 2");
  require(volume > 0.0 && binding > 0.0, "nbody bound: volume and binding must be positive");
  if (n == 2) return 0.0;
  const double nn = static_cast<double>(n);
  return -(nn - 2.0) * (nn + 1.0) / (2.0 * volume * binding);
}

double nbody_upper_bound(int n, const ManifoldSpec& m, const RenormScheme& scheme) {
  require(n >= 2, "nbody_upper_bound: need n >= 2");
  if (!m.is_compact()) {
    throw InvalidArgument("nbody_upper_bound: " + m.name() + " is not compact");
  }
  const auto two_body = solve_two_body(m, scheme);
  return nbody_bound_from_binding(n, m.volume(), -two_body.energy);
}

EstarResult hyperbolic_estar(double radius, double mu2, HyperbolicShift shift) {
  require(radius > 0.0, "hyperbolic_estar: radius must be positive");
  require(mu2 > 0.0, "hyperbolic_estar: mu2 must be positive");
  EstarResult out;
  out.shift = shift == HyperbolicShift::Dimensional ? 1.0 / (2.0 * radius * radius)
                                                    : 0.5 * radius * radius;
  // ln(y/mu^2) + 4/y is increasing for y > 4; a root there needs mu^2 > 4e.
  auto f = [mu2](double y) { return std::log(y / mu2) / (8.0 * kPi) + 1.0 / (2.0 * kPi * y); };
  if (!(f(4.0) < 0.0)) {
    std::ostringstream os;
    os << "hyperbolic_estar: no solution, mu2 = " << mu2 << " must exceed 4e = " << 4.0 * std::exp(1.0);
    throw NumericalError(os.str());
  }
  const auto root = numeric::solve_bracketed(f, 4.0, std::max(mu2, 4.0 * std::exp(1.0)));
  out.shifted = root.root;
  out.residual = std::abs(f(root.root));
  out.iterations = root.iterations;
  if (!(out.shifted > out.shift)) {
    std::ostringstream os;
    os << "hyperbolic_estar: no solution with E_* < 0 (|E_*| + s = " << out.shifted
       << " does not exceed s = " << out.shift << "); mu2 too small relative to s";
    throw NumericalError(os.str());
  }
  out.energy = -(out.shifted - out.shift);
  return out;
}

DivergenceDemo divergence_demo(const ManifoldSpec& m, double energy,
                               std::span<const double> cutoffs) {
  require_bound_energy(energy, "divergence_demo");
  require(cutoffs.size() >= 2, "divergence_demo: need at least two cutoffs");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    require(cutoffs[i] > 0.0, "divergence_demo: cutoffs must be positive");
    if (i > 0) require(cutoffs[i] < cutoffs[i - 1], "divergence_demo: cutoffs must decrease");
  }
  std::function<double(double)> diagonal;
  if (m.is_compact()) {
    const double volume = m.volume();
    diagonal = [&m, volume](double t) { return heat_trace(m, t) / volume; };
  } else if (m.as<Plane>()) {
    diagonal = [&m](double t) { return heat_kernel(m, t, 0.0); };
  } else {
    throw InvalidArgument("divergence_demo: unsupported manifold " + m.name());
  }
  const double binding = -energy;
  // t = e^w; the integrand in w is nearly flat (~1/4pi) at small t.
  auto f = [&](double w) {
    const double t = std::exp(w);
    return t * std::exp(-t * binding) * diagonal(t);
  };
  const double w_max = std::log(60.0 / binding);
  numeric::QuadratureOptions opts;
  opts.rel_tol = 1e-12;

  DivergenceDemo out;
  std::vector<double> xs, ys;
  for (double eps : cutoffs) {
    double total = 0.0;
    for (double w = std::log(eps); w < w_max;) {
      const double next = std::min(w + 1.0, w_max);
      total += numeric::integrate(f, w, next, opts).value;
      w = next;
    }
    out.points.push_back({eps, total});
    xs.push_back(std::log(1.0 / eps));
    ys.push_back(total);
  }
  const auto fit = numeric::fit_line(xs, ys);
  out.coefficient = fit.slope;
  out.intercept = fit.intercept;
  out.r_squared = fit.r_squared;
  return out;
}

}  // namespace heatbind
