#pragma once

// Mean-field bound chain for n bosons in two dimensions: Sobolev and Aubin
// constants, the ratio maximization behind the bound, the log-space bound
// solver, and a direct evaluator of both sides of the mean-field zero
// condition for sampled profiles.

#include <optional>
#include <vector>

#include "heatbind/manifolds.hpp"

namespace heatbind {

/// Best constant K(D,q) of the Sobolev imbedding
///   ||phi||_p <= K(D,q) ||grad phi||_q + A ||phi||_q,  1/p = 1/q - 1/D,
/// for 1 <= q < D; q = 1 is taken as the continuous limit of the formula.
double kdq(int dimension, double q);

/// Volume of the unit sphere S^{D-1}.
double unit_sphere_volume(int dimension);

struct SobolevConstants {
  int dimension = 2;
  double exponent = 1.0;
  double k = 0.0;      // constant multiplying ||grad phi||_1
  double aubin = 0.0;  // A_1(0)

  /// Constants entering the two-dimensional mean-field chain: K(2,1) = 2/pi
  /// and A = 0 on the plane and the hyperbolic plane. Compact surfaces need
  /// a caller-supplied A.
  static SobolevConstants mean_field_chain(const ManifoldSpec& m,
                                           std::optional<double> aubin = std::nullopt);
};

struct RatioMaximum {
  double z_star;
  double value;
};

/// Maximum of (1 + beta z)^2 / (1 + alpha z^2) over z: z* = beta/alpha,
/// value 1 + beta^2/alpha.
RatioMaximum maximize_ratio(double alpha, double beta);

struct MeanFieldProblem {
  int n = 3;
  double mu2 = 1.0;
  double aubin = 0.0;
  ManifoldSpec manifold = ManifoldSpec::plane();
};

struct MeanFieldBound {
  /// x = ln(|E_bound| / mu^2), from x = 4 pi n^2 A^2 e^{-x} / mu^2 + 64 n / pi.
  double log_ratio = 0.0;
  /// Exponent as stated for the same chain, n * 2^7 / pi, for comparison.
  double stated_log_ratio = 0.0;
  int iterations = 0;
  bool degenerate_aubin = false;     // A = 0: beta undefined, x = 64 n / pi
  bool below_recommended_n = false;  // n < 10
  std::vector<double> trace;         // fixed-point iterates
};

MeanFieldBound meanfield_bound(const MeanFieldProblem& problem);

/// Radial samples u(r_i), r_i = i * spacing, on the plane.
struct RadialProfile {
  double spacing = 0.0;
  std::vector<double> values;
};

/// Samples on an N x N periodic cell grid of the torus, row-major.
struct PeriodicGridProfile {
  double length = 0.0;
  std::size_t points = 0;
  std::vector<double> values;
};

struct MeanFieldResidual {
  double lhs = 0.0;       // (1/8 pi) ln(|E|/mu^2)
  double rhs = 0.0;       // [n^2/2 |<|u|^2,psi>|^2 + 2n |<u,psi>|^2] / (|E| + n K)
  double residual = 0.0;  // lhs - rhs
  double kinetic = 0.0;   // K[u] = int |grad u|^2
  double kinetic_ratio = 0.0;  // n K / |E|, expected << 1
  double quartic_overlap = 0.0;  // |int |u|^2 psi|^2
  double linear_overlap = 0.0;   // |int u psi|^2
};

/// Both sides of the large-|E| mean-field condition. When psi is absent it
/// saturates Cauchy-Schwarz: psi = |u|^2 / || |u|^2 ||.
MeanFieldResidual meanfield_residual(const RadialProfile& u, const RadialProfile* psi,
                                     int n, double mu2, double energy);
MeanFieldResidual meanfield_residual(const PeriodicGridProfile& u,
                                     const PeriodicGridProfile* psi, int n, double mu2,
                                     double energy);

/// Normalized radial Gaussian pi^{-1/2} w^{-1} e^{-r^2/(2 w^2)} sampled on
/// [0, r_max]; handy for demos and tests.
RadialProfile gaussian_radial_profile(double width, double spacing, double r_max);

/// Normalized periodic Gaussian bump on the torus grid.
PeriodicGridProfile gaussian_torus_profile(double length, std::size_t points, double width);

}  // namespace heatbind
