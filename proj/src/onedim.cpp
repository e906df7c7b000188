#include "heatbind/onedim.hpp"

#include <cmath>
#include <sstream>

#include "heatbind/error.hpp"

namespace heatbind::onedim {

using numeric::kPi;

OneDimProblem OneDimProblem::make(int n, double lambda) {
  require(n >= 2, "OneDimProblem: need n >= 2");
  require(lambda > 0.0, "OneDimProblem: coupling must be positive");
  return {n, lambda};
}

double exact_ground_energy(int n, double lambda) {
  require(n >= 1, "exact_ground_energy: need n >= 1");
  const double nn = n;
  return -lambda * lambda * nn * (nn * nn - 1.0) / 48.0;
}

double hartree_ground_energy(int n, double lambda) {
  require(n >= 1, "hartree_ground_energy: need n >= 1");
  const double nn = n;
  return -lambda * lambda * nn * nn * (nn - 1.0) / 48.0;
}

double hartree_profile(int n, double lambda, double x) {
  const double b = lambda * n / 4.0;
  return std::sqrt(0.5 * b) / std::cosh(b * x);
}

SechIntegrals sech_integrals(double b) {
  require(b > 0.0, "sech_integrals: width must be positive");
  return {1.0, b / 3.0, b * b / 3.0};
}

double sobolev_1d(double q) {
  require(q > 2.0 && std::isfinite(q), "sobolev_1d: need 2 < q < inf");
  const double theta = 0.5 * (1.0 - 2.0 / q);
  const double p = q / (q - 2.0);
  const double prefactor = q * std::pow(theta, theta) * std::pow(1.0 - theta, 1.0 - theta) /
                           (std::pow(2.0, 2.0 / q) * std::pow(q - 2.0, (q - 2.0) / q));
  const double ratio = std::exp(0.5 * std::log(kPi) + std::lgamma(p) - std::lgamma(p + 0.5));
  return prefactor * std::pow(ratio, (q - 2.0) / q);
}

SobolevSides sobolev_1d_sides(const numeric::Function& u, const numeric::Function& du,
                              double q) {
  const double theta = 0.5 * (1.0 - 2.0 / q);
  const double s = sobolev_1d(q);
  numeric::QuadratureOptions opts;
  opts.rel_tol = 1e-13;
  auto half_line = [&](auto&& f) { return 2.0 * numeric::integrate_to_infinity(f, 0.0, opts).value; };
  const double kinetic = half_line([&](double x) { return du(x) * du(x); });
  const double norm = half_line([&](double x) { return u(x) * u(x); });
  const double lq = half_line([&](double x) { return std::pow(std::abs(u(x)), q); });
  return {std::pow(kinetic, theta) * std::pow(norm, 1.0 - theta), s * std::pow(lq, 2.0 / q)};
}

double two_body_integral_1d_quadrature(double energy) {
  require(energy < 0.0, "two_body_integral_1d_quadrature: energy must be negative");
  const double binding = -energy;
  // t = s^2 removes the inverse square root at the origin.
  numeric::QuadratureOptions opts;
  opts.rel_tol = 1e-14;
  const double c = 2.0 / std::sqrt(8.0 * kPi);
  return numeric::integrate_to_infinity(
             [=](double s) { return c * std::exp(-binding * s * s); }, 0.0, opts)
      .value;
}

double two_body_phi_1d(double lambda, double energy, bool verify) {
  require(lambda > 0.0, "two_body_phi_1d: coupling must be positive");
  require(energy < 0.0, "two_body_phi_1d: energy must be negative");
  const double integral = 1.0 / std::sqrt(-8.0 * energy);
  if (verify) {
    const double quad = two_body_integral_1d_quadrature(energy);
    if (std::abs(quad - integral) > 1e-10 * integral) {
      std::ostringstream os;
      os.precision(17);
      os << "two_body_phi_1d: quadrature " << quad << " disagrees with closed form "
         << integral;
      throw NumericalError(os.str());
    }
  }
  return 1.0 / lambda - integral;
}

numeric::RootResult two_body_zero_1d(double lambda) {
  require(lambda > 0.0, "two_body_zero_1d: coupling must be positive");
  // Bracket in y = ln|E| around the expected scale lambda^2.
  const double centre = 2.0 * std::log(lambda);
  auto f = [lambda](double y) { return two_body_phi_1d(lambda, -std::exp(y)); };
  auto r = numeric::solve_bracketed(f, centre - 30.0, centre + 30.0, 1e-15);
  r.root = -std::exp(r.root);
  const double lo = -std::exp(r.hi), hi = -std::exp(r.lo);
  r.lo = lo;
  r.hi = hi;
  return r;
}

namespace {

double bound_ratio(double n, double binding, double z) {
  return std::pow(n, 1.5) * std::sqrt(z) / (2.0 * std::sqrt(3.0) * (binding + z));
}

numeric::MaximumResult maximize_over_z(double n, double binding) {
  // Unimodal in ln z with the peak at z = |E|; search a wide log window.
  auto g = [=](double w) { return bound_ratio(n, binding, std::exp(w)); };
  const double centre = std::log(binding);
  auto m = numeric::golden_section_maximize(g, centre - 20.0, centre + 20.0, 1e-15);
  m.argmax = std::exp(m.argmax);
  return m;
}

}  // namespace

MeanFieldSolution1D meanfield_1d_solve(int n, double lambda) {
  require(n >= 3, "meanfield_1d_solve: need n >= 3");
  require(lambda > 0.0, "meanfield_1d_solve: coupling must be positive");
  const double nn = n;
  // max_z ratio decreases in |E|; its zero against 1/lambda fixes the bound.
  auto f = [&](double y) { return maximize_over_z(nn, std::exp(y)).value - 1.0 / lambda; };
  const double guess = std::log(lambda * lambda * nn * nn * nn / 48.0);
  const auto root = numeric::solve_bracketed(f, guess - 10.0, guess + 10.0, 1e-15);
  MeanFieldSolution1D out;
  const double binding = std::exp(root.root);
  out.energy = -binding;
  out.z_star = maximize_over_z(nn, binding).argmax;
  out.b = std::sqrt(3.0 * out.z_star / nn);
  out.iterations = root.iterations;
  return out;
}

}  // namespace heatbind::onedim
