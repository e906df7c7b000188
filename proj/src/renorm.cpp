#include "heatbind/renorm.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <sstream>

#include "heatbind/error.hpp"
#include "heatbind/numeric.hpp"

namespace heatbind {

using numeric::kPi;

RenormScheme RenormScheme::bound_state(double mu2) {
  require(mu2 > 0.0 && std::isfinite(mu2), "bound-state scheme: mu2 must be positive");
  return RenormScheme(BoundState{mu2});
}

RenormScheme RenormScheme::coupling(double scale, double lambda_r) {
  require(scale > 0.0 && std::isfinite(scale), "coupling scheme: scale M must be positive");
  require(lambda_r > 0.0 && std::isfinite(lambda_r),
          "coupling scheme: lambda_R must be positive");
  return RenormScheme(Coupling{scale, lambda_r});
}

double RenormScheme::log_mu2() const noexcept {
  if (const auto* b = as_bound_state()) return std::log(b->mu2);
  const auto* c = as_coupling();
  return 2.0 * std::log(c->scale) - 8.0 * kPi / c->lambda_r;
}

double RenormScheme::mu2() const noexcept { return std::exp(log_mu2()); }

std::string RenormScheme::describe() const {
  std::ostringstream os;
  if (const auto* b = as_bound_state()) {
    os << "bound_state(mu2=" << b->mu2 << ")";
  } else {
    const auto* c = as_coupling();
    os << "coupling(M=" << c->scale << ", lambda_R=" << c->lambda_r << ")";
  }
  return os.str();
}

double bare_coupling(double cutoff, double mu2) {
  require(cutoff > 0.0, "bare_coupling: cutoff must be positive");
  require(mu2 > 0.0, "bare_coupling: mu2 must be positive");
  const double x = cutoff * mu2;
  const double e1 = numeric::expint_e1(x);
  if (!(e1 > 0.0) || !std::isfinite(8.0 * kPi / e1)) {
    std::ostringstream os;
    os << "bare_coupling: cutoff beyond representable range (eps*mu2 = " << x << ")";
    throw NumericalError(os.str());
  }
  return 8.0 * kPi / e1;
}

double renormalized_coupling(double cutoff, double mu2, double scale) {
  require(scale > 0.0, "renormalized_coupling: scale must be positive");
  const double inverse = 1.0 / bare_coupling(cutoff, mu2) -
                         numeric::expint_e1(cutoff * scale * scale) / (8.0 * kPi);
  return 1.0 / inverse;
}

double beta(double lambda_r) {
  require(lambda_r >= 0.0, "beta: lambda_R must be non-negative");
  return -lambda_r * lambda_r / (4.0 * kPi);
}

namespace {

void require_flow_domain(double lambda_r, double gamma, const char* where) {
  require(lambda_r >= 0.0 && std::isfinite(lambda_r),
          std::string(where) + ": lambda_R must be non-negative");
  require(gamma > 0.0 && std::isfinite(gamma),
          std::string(where) + ": gamma must be positive");
  const double denom = 1.0 + lambda_r / (4.0 * kPi) * std::log(gamma);
  if (!(denom > 0.0)) {
    std::ostringstream os;
    os << where << ": Landau pole, 1 + (lambda_R/4pi) ln gamma = " << denom
       << " <= 0 for lambda_R=" << lambda_r << ", gamma=" << gamma;
    throw InvalidArgument(os.str());
  }
}

}  // namespace

double flow(double lambda_r, double gamma) {
  require_flow_domain(lambda_r, gamma, "flow");
  return lambda_r / (1.0 + lambda_r / (4.0 * kPi) * std::log(gamma));
}

double flow_ode(double lambda_r, double gamma) {
  require_flow_domain(lambda_r, gamma, "flow_ode");
  namespace odeint = boost::numeric::odeint;
  const double log_gamma = std::log(gamma);
  if (log_gamma == 0.0 || lambda_r == 0.0) return lambda_r;

  using State = double;
  State lambda = lambda_r;
  auto rhs = [](const State& l, State& dl, double) { dl = -l * l / (4.0 * kPi); };
  auto stepper = odeint::make_controlled(1e-16, 1e-14,
                                         odeint::runge_kutta_fehlberg78<State>());
  const double dt0 = (log_gamma > 0 ? 1.0 : -1.0) * 1e-3 * std::min(1.0, std::abs(log_gamma));
  try {
    odeint::integrate_adaptive(stepper, rhs, lambda, 0.0, log_gamma, dt0);
  } catch (const std::exception& e) {
    throw NumericalError(std::string("flow_ode: step size underflow near the Landau pole: ") +
                         e.what());
  }
  if (!std::isfinite(lambda)) throw NumericalError("flow_ode: integration diverged");
  return lambda;
}

RenormScheme scheme_convert(const RenormScheme& s, std::optional<double> target_scale) {
  if (const auto* c = s.as_coupling()) {
    return RenormScheme::bound_state(std::exp(2.0 * std::log(c->scale) - 8.0 * kPi / c->lambda_r));
  }
  const double mu2 = s.as_bound_state()->mu2;
  const double scale = target_scale.value_or(std::exp(1.0) * std::sqrt(mu2));
  require(scale > 0.0, "scheme_convert: target scale must be positive");
  const double log_ratio = 2.0 * std::log(scale) - std::log(mu2);
  if (!(log_ratio > 0.0)) {
    std::ostringstream os;
    os << "scheme_convert: lambda_R diverges or turns negative for M^2 <= mu^2 (M="
       << scale << ", mu2=" << mu2 << "); choose M > sqrt(mu2)";
    throw InvalidArgument(os.str());
  }
  return RenormScheme::coupling(scale, 8.0 * kPi / log_ratio);
}

}  // namespace heatbind
