#pragma once

// Coupling-constant renormalization of the two-dimensional contact
// interaction: the cutoff-dependent bare coupling, the renormalized
// coupling at a scale M, its beta function and exact flow.

#include <optional>
#include <string>
#include <variant>

namespace heatbind {

class RenormScheme {
 public:
  /// Physical input is the flat-space two-body binding scale mu^2.
  struct BoundState {
    double mu2;
  };
  /// Physical input is the renormalized coupling lambda_R at scale M.
  struct Coupling {
    double scale;
    double lambda_r;
  };

  static RenormScheme bound_state(double mu2);
  static RenormScheme coupling(double scale, double lambda_r);

  const BoundState* as_bound_state() const noexcept {
    return std::get_if<BoundState>(&v_);
  }
  const Coupling* as_coupling() const noexcept { return std::get_if<Coupling>(&v_); }

  /// ln mu^2 with mu^2 = M^2 exp(-8 pi / lambda_R) for the coupling scheme.
  /// Kept in log form so weak couplings do not underflow.
  double log_mu2() const noexcept;
  double mu2() const noexcept;

  std::string describe() const;

 private:
  explicit RenormScheme(std::variant<BoundState, Coupling> v) : v_(v) {}
  std::variant<BoundState, Coupling> v_;
};

/// lambda(eps) from 1/lambda = int_eps^inf e^{-t mu^2} / (8 pi t) dt
/// = E1(eps mu^2) / (8 pi).
double bare_coupling(double cutoff, double mu2);

/// 1/lambda_R(M) = 1/lambda(eps) - int_eps^inf e^{-M^2 t}/(8 pi t) dt at a
/// finite cutoff; tends to (1/8 pi) ln(M^2/mu^2) as eps -> 0.
double renormalized_coupling(double cutoff, double mu2, double scale);

/// beta(lambda_R) = M d lambda_R / dM = -lambda_R^2 / (4 pi).
double beta(double lambda_r);

/// lambda_R(gamma M) = lambda_R / (1 + (lambda_R / 4 pi) ln gamma).
/// Throws InvalidArgument past the Landau pole.
double flow(double lambda_r, double gamma);

/// Same flow obtained by integrating d lambda / d ln M = beta(lambda) with
/// an adaptive Runge-Kutta-Fehlberg 7(8) integrator.
double flow_ode(double lambda_r, double gamma);

/// BoundState(mu^2) <-> Coupling(M, lambda_R) through mu^2 = M^2 e^{-8 pi/lambda_R}.
/// Converting to the coupling scheme needs a scale with M^2 > mu^2; the
/// default is M = e sqrt(mu^2), where lambda_R = 4 pi.
RenormScheme scheme_convert(const RenormScheme& s,
                            std::optional<double> target_scale = std::nullopt);

}  // namespace heatbind
