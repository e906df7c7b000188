#pragma once

// The attractive delta-interaction Bose gas on the line: exact and Hartree
// ground-state energies, the zero-momentum two-body principal operator, the
// one-dimensional Sobolev constant and the mean-field bound built from it.

#include "heatbind/numeric.hpp"

namespace heatbind::onedim {

struct OneDimProblem {
  int n = 2;
  double lambda = 1.0;

  static OneDimProblem make(int n, double lambda);
};

/// -lambda^2 n (n^2 - 1) / 48.
double exact_ground_energy(int n, double lambda);

/// -lambda^2 n^2 (n - 1) / 48.
double hartree_ground_energy(int n, double lambda);

/// sqrt(b/2) sech(b x) with b = lambda n / 4.
double hartree_profile(int n, double lambda, double x);

/// Closed-form sech-saturator integrals for u = sqrt(b/2) sech(b x).
struct SechIntegrals {
  double norm;     // int u^2 = 1
  double quartic;  // int u^4 = b/3
  double kinetic;  // int u'^2 = b^2/3
};
SechIntegrals sech_integrals(double b);

/// Optimal constant S_{1,q} of the Gagliardo-Nirenberg inequality
///   ||u'||_2^{2 theta} ||u||_2^{2(1-theta)} >= S_{1,q} ||u||_q^2,
/// theta = (1 - 2/q)/2, for 2 < q < inf.
double sobolev_1d(double q);

struct SobolevSides {
  double lhs;  // (int u'^2)^theta (int u^2)^{1-theta}
  double rhs;  // S_{1,q} (int |u|^q)^{2/q}
};
/// Both sides of the inequality for an even profile, by quadrature.
SobolevSides sobolev_1d_sides(const numeric::Function& u, const numeric::Function& du,
                              double q);

/// Phi_0(E) = 1/lambda - int_0^inf e^{-t|E|} / sqrt(8 pi t) dt = 1/lambda - 1/sqrt(8|E|).
/// With verify set, the integral is also done by quadrature and a
/// disagreement above 1e-10 relative raises NumericalError.
double two_body_phi_1d(double lambda, double energy, bool verify = false);

/// The integral term of Phi_0 by direct quadrature.
double two_body_integral_1d_quadrature(double energy);

/// Zero of Phi_0 found numerically; the closed form is -lambda^2/8.
numeric::RootResult two_body_zero_1d(double lambda);

struct MeanFieldSolution1D {
  double energy = 0.0;  // -lambda^2 n^3 / 48
  double z_star = 0.0;  // numerical maximizer of the bound over z = n K[u]
  double b = 0.0;       // saturating sech width, from n b^2/3 = z_star
  int iterations = 0;
};

/// Mean-field bound: maximize n^{3/2} sqrt(z) / (2 sqrt3 (|E| + z)) over z
/// and equate the maximum to 1/lambda.
MeanFieldSolution1D meanfield_1d_solve(int n, double lambda);

}  // namespace heatbind::onedim
