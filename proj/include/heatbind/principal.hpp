#pragma once

// Renormalized principal operator in the two-boson sector. On the
// homogeneous surfaces (plane, torus, sphere) the constant orthofermion
// wave function is an exact eigenvector and the lowest eigenvalue is
//
//   omega_0(E) = int_0^inf dt [ e^{-mu^2 t}/(8 pi t) - Theta(2t) e^{-|E| t} / V ]
//              = (1/8 pi) ln(|E|/mu^2) - int_0^inf (Theta(2t)/V - 1/(8 pi t)) e^{-|E| t} dt.
//
// Bound states sit at the zeros of omega(E); everything here works with
// E < 0 in units hbar = 2m = 1.

#include <span>
#include <vector>

#include "heatbind/manifolds.hpp"
#include "heatbind/renorm.hpp"

namespace heatbind {

/// Total-momentum lattice vector of a two-body torus mode.
struct TorusMode {
  int qx = 0;
  int qy = 0;
  friend bool operator==(const TorusMode&, const TorusMode&) = default;
};

double omega0(const ManifoldSpec& m, const RenormScheme& scheme, double energy);

/// omega_q(E) on the torus, with lambda_q(t) = (1/V) sum_k e^{-t(sigma_k + sigma_{q-k})}
/// in place of Theta(2t)/V.
double omega_mode(double length, const RenormScheme& scheme, double energy,
                  TorusMode mode);

/// lambda_q(t) - 1/(8 pi t), the subtracted two-body kernel eigenvalue.
double torus_mode_excess(double length, TorusMode mode, double t);

struct BoundStateResult {
  double energy = 0.0;      // E_gr < 0
  double bracket_lo = 0.0;  // E_lo < E_gr, omega(E_lo) > 0
  double bracket_hi = 0.0;  // E_hi > E_gr, omega(E_hi) < 0
  double residual = 0.0;    // |omega(E_gr)|
  int iterations = 0;
};

struct SolveOptions {
  // |E| search window in units of mu^2.
  double window_min = 1e-6;
  double window_max = 1e6;
};

BoundStateResult solve_two_body(const ManifoldSpec& m, const RenormScheme& scheme,
                                const SolveOptions& opts = {});

struct CurveSample {
  double energy;
  double omega;
  double domega_dE;
};

struct PrincipalCurve {
  TorusMode mode;
  std::vector<CurveSample> samples;
};

/// Samples omega_k over an increasing grid of negative energies. The
/// derivative column is the grid gradient (one-sided at the ends).
/// Non-zero modes are available on the torus only.
std::vector<PrincipalCurve> flow_curves(const ManifoldSpec& m, const RenormScheme& scheme,
                                        std::span<const double> energies,
                                        std::span<const TorusMode> modes);

struct DerivativeCheck {
  double finite_difference;  // Richardson-refined central difference
  double integral;           // -int t Theta(2t)/V e^{-|E| t} dt
};

DerivativeCheck domega_dE_check(const ManifoldSpec& m, const RenormScheme& scheme,
                                double energy);

/// -(n-2)(n+1) / (2 V |E2|): the variational bound on the n-body lowest
/// eigenvalue evaluated at the two-body energy E2.
double nbody_bound_from_binding(int n, double volume, double binding);
double nbody_upper_bound(int n, const ManifoldSpec& m, const RenormScheme& scheme);

enum class HyperbolicShift {
  Dimensional,  // s = 1/(2R^2), matching the e^{-t/2R^2} factor
  Printed,      // s = R^2/2 as typeset
};

struct EstarResult {
  double energy = 0.0;   // E_* < 0
  double shifted = 0.0;  // |E_*| + s
  double shift = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Root of (1/8pi) ln((|E|+s)/mu^2) = -(1/2pi) / (|E|+s) on the branch
/// |E|+s > 4, which exists iff mu^2 > 4e.
EstarResult hyperbolic_estar(double radius, double mu2,
                             HyperbolicShift shift = HyperbolicShift::Dimensional);

struct DivergencePoint {
  double cutoff;
  double value;
};

struct DivergenceDemo {
  std::vector<DivergencePoint> points;
  double coefficient = 0.0;  // fitted c in I(eps) ~ c ln(1/eps) + const
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// I(eps) = int_eps^inf e^{-t|E|} K_t(x,x) dt for a decreasing list of eps.
DivergenceDemo divergence_demo(const ManifoldSpec& m, double energy,
                               std::span<const double> cutoffs);

}  // namespace heatbind
