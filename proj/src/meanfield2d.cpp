#include "heatbind/meanfield2d.hpp"

#include <cmath>
#include <sstream>

#include "heatbind/error.hpp"
#include "heatbind/numeric.hpp"

namespace heatbind {

using numeric::kPi;

double unit_sphere_volume(int dimension) {
  require(dimension >= 1, "unit_sphere_volume: dimension must be positive");
  const double half = 0.5 * dimension;
  return 2.0 * std::pow(kPi, half) / std::tgamma(half);
}

double kdq(int dimension, double q) {
  require(dimension >= 2, "kdq: dimension must be at least 2");
  const double d = static_cast<double>(dimension);
  require(q >= 1.0 && q < d, "kdq: exponent must satisfy 1 <= q < D");
  // (q-1)/(D-q) * ((D-q)/(D(q-1)))^{1/q} regrouped so q = 1 is regular.
  const double algebraic = std::pow(q - 1.0, 1.0 - 1.0 / q) *
                           std::pow(d - q, 1.0 / q - 1.0) * std::pow(d, -1.0 / q);
  const double gammas = std::tgamma(d + 1.0) /
                        (std::tgamma(d / q) * std::tgamma(d + 1.0 - d / q) *
                         unit_sphere_volume(dimension));
  return algebraic * std::pow(gammas, 1.0 / d);
}

SobolevConstants SobolevConstants::mean_field_chain(const ManifoldSpec& m,
                                                    std::optional<double> aubin) {
  SobolevConstants c;
  c.dimension = 2;
  c.exponent = 1.0;
  c.k = 2.0 / kPi;
  if (m.as<Plane>() || m.as<Hyperbolic>()) {
    require(!aubin || *aubin == 0.0,
            "SobolevConstants: A_1(0) vanishes on the plane and the hyperbolic plane");
    c.aubin = 0.0;
  } else if (m.is_compact()) {
    require(aubin.has_value(),
            "SobolevConstants: no closed form for A_1(0) on " + m.name() +
                "; supply it explicitly");
    require(*aubin >= 0.0, "SobolevConstants: A_1(0) must be non-negative");
    c.aubin = *aubin;
  } else {
    throw InvalidArgument("SobolevConstants: " + m.name() + " is not two-dimensional");
  }
  return c;
}

RatioMaximum maximize_ratio(double alpha, double beta) {
  require(alpha > 0.0 && beta > 0.0, "maximize_ratio: alpha and beta must be positive");
  return {beta / alpha, 1.0 + beta * beta / alpha};
}

MeanFieldBound meanfield_bound(const MeanFieldProblem& p) {
  require(p.n >= 3, "meanfield_bound: need n >= 3");
  require(p.mu2 > 0.0, "meanfield_bound: mu2 must be positive");
  require(p.aubin >= 0.0, "meanfield_bound: Aubin constant must be non-negative");
  MeanFieldBound out;
  const double n = static_cast<double>(p.n);
  const double linear = 64.0 * n / kPi;
  const double amplitude = 4.0 * kPi * n * n * p.aubin * p.aubin / p.mu2;
  out.stated_log_ratio = 128.0 * n / kPi;
  out.below_recommended_n = p.n < 10;
  if (p.aubin == 0.0) {
    out.degenerate_aubin = true;
    out.log_ratio = linear;
    return out;
  }
  double x = linear;
  out.trace.push_back(x);
  for (int it = 1; it <= 500; ++it) {
    const double next = linear + amplitude * std::exp(-x);
    out.trace.push_back(next);
    if (!std::isfinite(next)) break;
    if (std::abs(next - x) <= 1e-15 * std::abs(next)) {
      out.log_ratio = next;
      out.iterations = it;
      return out;
    }
    x = next;
  }
  std::ostringstream os;
  os << "meanfield_bound: fixed-point iteration diverged; trace:";
  const std::size_t shown = std::min<std::size_t>(out.trace.size(), 12);
  for (std::size_t i = 0; i < shown; ++i) os << ' ' << out.trace[i];
  throw NumericalError(os.str());
}

namespace {

struct ProfileIntegrals {
  double norm_u = 0.0;
  double norm_psi = 0.0;
  double quartic = 0.0;  // int |u|^2 psi
  double linear = 0.0;   // int u psi
  double kinetic_fine = 0.0;
  double kinetic_coarse = 0.0;
};

void check_normalization(double norm, const char* which) {
  if (std::abs(norm - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "meanfield_residual: profile " << which << " is not normalized on the grid (norm^2 = "
       << norm << ")";
    throw InvalidArgument(os.str());
  }
}

MeanFieldResidual assemble(const ProfileIntegrals& in, int n, double mu2, double energy) {
  check_normalization(in.norm_u, "u0");
  check_normalization(in.norm_psi, "psi0");
  const double disagreement =
      std::abs(in.kinetic_fine - in.kinetic_coarse) / std::abs(in.kinetic_fine);
  if (!(disagreement <= 0.01)) {
    std::ostringstream os;
    os << "meanfield_residual: grid too coarse for K[u0] (h vs 2h disagree by "
       << 100.0 * disagreement << "%)";
    throw InvalidArgument(os.str());
  }
  const double binding = -energy;
  const double nn = static_cast<double>(n);
  MeanFieldResidual r;
  r.kinetic = (4.0 * in.kinetic_fine - in.kinetic_coarse) / 3.0;
  r.quartic_overlap = in.quartic * in.quartic;
  r.linear_overlap = in.linear * in.linear;
  r.lhs = std::log(binding / mu2) / (8.0 * kPi);
  r.rhs = (0.5 * nn * nn * r.quartic_overlap + 2.0 * nn * r.linear_overlap) /
          (binding + nn * r.kinetic);
  r.residual = r.lhs - r.rhs;
  r.kinetic_ratio = nn * r.kinetic / binding;
  return r;
}

void check_common(int n, double mu2, double energy) {
  require(n >= 3, "meanfield_residual: need n >= 3");
  require(mu2 > 0.0, "meanfield_residual: mu2 must be positive");
  require(energy < 0.0, "meanfield_residual: energy must be negative");
}

// Trapezoid weights for int f(r) 2 pi r dr on r_i = i h.
double radial_integral(const std::vector<double>& f, double h) {
  double sum = 0.0;
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i + 1 == n) ? 0.5 : 1.0;
    sum += w * f[i] * 2.0 * kPi * (static_cast<double>(i) * h);
  }
  return sum * h;
}

double radial_kinetic(const std::vector<double>& u, double h) {
  const std::size_t n = u.size();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    double du;
    if (i == 0) {
      du = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
    } else if (i + 1 == n) {
      du = (3.0 * u[i] - 4.0 * u[i - 1] + u[i - 2]) / (2.0 * h);
    } else {
      du = (u[i + 1] - u[i - 1]) / (2.0 * h);
    }
    g[i] = du * du;
  }
  return radial_integral(g, h);
}

double grid_kinetic(const std::vector<double>& u, std::size_t n, double h) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = (u[((i + 1) % n) * n + j] - u[((i + n - 1) % n) * n + j]) / (2.0 * h);
      const double dy = (u[i * n + (j + 1) % n] - u[i * n + (j + n - 1) % n]) / (2.0 * h);
      sum += dx * dx + dy * dy;
    }
  }
  return sum * h * h;
}

}  // namespace

MeanFieldResidual meanfield_residual(const RadialProfile& u, const RadialProfile* psi, int n,
                                     double mu2, double energy) {
  check_common(n, mu2, energy);
  require(u.spacing > 0.0, "meanfield_residual: grid spacing must be positive");
  require(u.values.size() >= 9, "meanfield_residual: need at least 9 radial samples");
  const std::size_t size = u.values.size();
  const double h = u.spacing;

  std::vector<double> u2(size), u4(size);
  for (std::size_t i = 0; i < size; ++i) {
    u2[i] = u.values[i] * u.values[i];
    u4[i] = u2[i] * u2[i];
  }
  std::vector<double> psi_values;
  if (psi) {
    require(psi->values.size() == size && psi->spacing == h,
            "meanfield_residual: psi0 must share the u0 grid");
    psi_values = psi->values;
  } else {
    const double scale = std::sqrt(radial_integral(u4, h));
    psi_values = u2;
    for (double& v : psi_values) v /= scale;
  }
  std::vector<double> psi2(size), quartic(size), linear(size);
  for (std::size_t i = 0; i < size; ++i) {
    psi2[i] = psi_values[i] * psi_values[i];
    quartic[i] = u2[i] * psi_values[i];
    linear[i] = u.values[i] * psi_values[i];
  }
  std::vector<double> coarse;
  for (std::size_t i = 0; i < size; i += 2) coarse.push_back(u.values[i]);

  ProfileIntegrals in;
  in.norm_u = radial_integral(u2, h);
  in.norm_psi = radial_integral(psi2, h);
  in.quartic = radial_integral(quartic, h);
  in.linear = radial_integral(linear, h);
  in.kinetic_fine = radial_kinetic(u.values, h);
  in.kinetic_coarse = radial_kinetic(coarse, 2.0 * h);
  return assemble(in, n, mu2, energy);
}

MeanFieldResidual meanfield_residual(const PeriodicGridProfile& u,
                                     const PeriodicGridProfile* psi, int n, double mu2,
                                     double energy) {
  check_common(n, mu2, energy);
  require(u.length > 0.0, "meanfield_residual: torus side must be positive");
  require(u.points >= 8 && u.points % 2 == 0,
          "meanfield_residual: torus grid needs an even number (>= 8) of points per side");
  require(u.values.size() == u.points * u.points,
          "meanfield_residual: torus profile must have points^2 samples");
  const std::size_t size = u.values.size();
  const double h = u.length / static_cast<double>(u.points);
  const double cell = h * h;

  auto sum = [cell](const std::vector<double>& f) {
    double s = 0.0;
    for (double v : f) s += v;
    return s * cell;
  };
  std::vector<double> u2(size), u4(size);
  for (std::size_t i = 0; i < size; ++i) {
    u2[i] = u.values[i] * u.values[i];
    u4[i] = u2[i] * u2[i];
  }
  std::vector<double> psi_values;
  if (psi) {
    require(psi->points == u.points && psi->length == u.length &&
                psi->values.size() == size,
            "meanfield_residual: psi0 must share the u0 grid");
    psi_values = psi->values;
  } else {
    const double scale = std::sqrt(sum(u4));
    psi_values = u2;
    for (double& v : psi_values) v /= scale;
  }
  std::vector<double> psi2(size), quartic(size), linear(size);
  for (std::size_t i = 0; i < size; ++i) {
    psi2[i] = psi_values[i] * psi_values[i];
    quartic[i] = u2[i] * psi_values[i];
    linear[i] = u.values[i] * psi_values[i];
  }
  const std::size_t half = u.points / 2;
  std::vector<double> coarse(half * half);
  for (std::size_t i = 0; i < half; ++i)
    for (std::size_t j = 0; j < half; ++j) coarse[i * half + j] = u.values[2 * i * u.points + 2 * j];

  ProfileIntegrals in;
  in.norm_u = sum(u2);
  in.norm_psi = sum(psi2);
  in.quartic = sum(quartic);
  in.linear = sum(linear);
  in.kinetic_fine = grid_kinetic(u.values, u.points, h);
  in.kinetic_coarse = grid_kinetic(coarse, half, 2.0 * h);
  return assemble(in, n, mu2, energy);
}

RadialProfile gaussian_radial_profile(double width, double spacing, double r_max) {
  require(width > 0.0 && spacing > 0.0 && r_max > spacing,
          "gaussian_radial_profile: invalid grid");
  RadialProfile p;
  p.spacing = spacing;
  const auto count = static_cast<std::size_t>(std::floor(r_max / spacing)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const double r = static_cast<double>(i) * spacing;
    p.values.push_back(std::exp(-r * r / (2.0 * width * width)) / (std::sqrt(kPi) * width));
  }
  std::vector<double> sq(p.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = p.values[i] * p.values[i];
  const double norm = std::sqrt(radial_integral(sq, spacing));
  for (double& v : p.values) v /= norm;
  return p;
}

PeriodicGridProfile gaussian_torus_profile(double length, std::size_t points, double width) {
  require(length > 0.0 && points >= 2 && width > 0.0, "gaussian_torus_profile: invalid grid");
  PeriodicGridProfile p;
  p.length = length;
  p.points = points;
  p.values.resize(points * points);
  const double h = length / static_cast<double>(points);
  double norm = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    for (std::size_t j = 0; j < points; ++j) {
      const double x = std::remainder(static_cast<double>(i) * h - 0.5 * length, length);
      const double y = std::remainder(static_cast<double>(j) * h - 0.5 * length, length);
      const double v = std::exp(-(x * x + y * y) / (2.0 * width * width));
      p.values[i * points + j] = v;
      norm += v * v;
    }
  }
  norm = std::sqrt(norm * h * h);
  for (double& v : p.values) v /= norm;
  return p;
}

}  // namespace heatbind
