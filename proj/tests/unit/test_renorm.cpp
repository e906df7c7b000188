#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "heatbind/error.hpp"
#include "heatbind/renorm.hpp"
#include "oracles.hpp"

using namespace heatbind;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using oracle::kPi;

TEST_CASE("scheme construction", "[renorm][scheme]") {
  CHECK_THROWS_AS(RenormScheme::bound_state(0.0), InvalidArgument);
  CHECK_THROWS_AS(RenormScheme::bound_state(-1.0), InvalidArgument);
  CHECK_THROWS_AS(RenormScheme::coupling(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(RenormScheme::coupling(1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(RenormScheme::coupling(1.0, NAN), InvalidArgument);
  const auto s = RenormScheme::bound_state(2.5);
  REQUIRE(s.as_bound_state());
  CHECK(s.as_coupling() == nullptr);
  CHECK(s.mu2() == 2.5);
  // Weak coupling: mu^2 underflows but its logarithm does not.
  const auto weak = RenormScheme::coupling(1.0, 1e-3);
  CHECK(weak.mu2() == 0.0);
  CHECK_THAT(weak.log_mu2(), WithinRel(-8000.0 * kPi, 1e-15));
}

TEST_CASE("bare coupling", "[renorm][bare]") {
  CHECK_THAT(1.0 / bare_coupling(1.0, 1.0), WithinRel(0.0087290093984987751, 1e-13));
  CHECK_THAT(bare_coupling(1.0, 1.0), WithinRel(114.56053652227472, 1e-13));
  CHECK_THAT(bare_coupling(10.0, 1.0), WithinRel(6045929.5351579305, 1e-12));
  // Depends on eps and mu^2 only through their product.
  CHECK_THAT(bare_coupling(0.25, 4.0), WithinRel(bare_coupling(1.0, 1.0), 1e-15));

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> lx(std::log(1e-6), std::log(20.0));
  for (int i = 0; i < 40; ++i) {
    const double eps = std::exp(lx(rng));
    // 1/lambda = int_eps^inf e^{-t}/(8 pi t) dt, with t = eps + v.
    const double inv = oracle::de_half_line([eps](double v) {
                         return std::exp(-(eps + v)) / (8.0 * kPi * (eps + v));
                       });
    INFO("eps = " << eps);
    CHECK_THAT(bare_coupling(eps, 1.0), WithinRel(1.0 / inv, 1e-10));
  }

  double prev = 0.0;
  for (double eps = 1e-12; eps < 1e2; eps *= 3.0) {
    const double lambda = bare_coupling(eps, 1.0);
    CHECK(lambda > prev);
    prev = lambda;
  }
  CHECK(bare_coupling(1e-300, 1.0) < 0.04);

  CHECK_THROWS_AS(bare_coupling(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(bare_coupling(1.0, -1.0), InvalidArgument);
  CHECK_THROWS_WITH(bare_coupling(1e4, 1.0),
                    Catch::Matchers::ContainsSubstring("cutoff beyond representable range"));
}

TEST_CASE("renormalized coupling at finite cutoff", "[renorm]") {
  const double mu2 = 0.7, scale = 3.0;
  const double limit = 8.0 * kPi / std::log(scale * scale / mu2);
  CHECK_THAT(renormalized_coupling(1e-10, mu2, scale), WithinRel(limit, 1e-8));
  double prev_err = INFINITY;
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    const double err = std::abs(renormalized_coupling(eps, mu2, scale) - limit);
    CHECK(err < prev_err);
    prev_err = err;
  }
}

TEST_CASE("beta function", "[renorm][beta]") {
  CHECK_THAT(beta(2.0 * kPi), WithinRel(-kPi, 1e-15));
  CHECK(beta(0.0) == 0.0);
  CHECK_THAT(beta(1.0), WithinRel(-0.079577471545947668, 1e-15));
  for (double l = 0.01; l < 100.0; l *= 1.9) CHECK(beta(l) < 0.0);
  CHECK_THROWS_AS(beta(-1.0), InvalidArgument);
}

TEST_CASE("closed-form flow", "[renorm][flow]") {
  CHECK(flow(3.0, 1.0) == 3.0);
  CHECK_THAT(flow(4.0 * kPi, std::exp(1.0)), WithinRel(2.0 * kPi, 1e-15));
  CHECK_THAT(flow(1.0, std::exp(4.0 * kPi)), WithinRel(0.5, 1e-15));
  CHECK_THAT(flow(12.566370, 2.718282), WithinRel(2.0 * kPi, 1e-6));

  // Landau pole at ln gamma = -4 pi / lambda.
  CHECK_THROWS_AS(flow(4.0 * kPi, std::exp(-1.0)), InvalidArgument);
  CHECK_THROWS_AS(flow(4.0 * kPi, std::exp(-2.0)), InvalidArgument);
  CHECK_THROWS_AS(flow(1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(flow(1.0, -2.0), InvalidArgument);
  CHECK(flow(4.0 * kPi, std::exp(-0.999)) > 100.0);
}

TEST_CASE("flow composition and asymptotic freedom", "[renorm][flow][property]") {
  for (double lambda : {0.1, 1.0, 5.0, 30.0})
    for (double g1 : {0.5, 1.5, 10.0, 1e3})
      for (double g2 : {0.7, 2.0, 1e4}) {
        INFO("lambda=" << lambda << " g1=" << g1 << " g2=" << g2);
        double composed = 0.0, direct = 0.0;
        try {
          composed = flow(flow(lambda, g1), g2);
          direct = flow(lambda, g1 * g2);
        } catch (const InvalidArgument&) {
          continue;  // one of the legs crosses the pole
        }
        CHECK_THAT(composed, WithinRel(direct, 1e-12));
      }
  for (double lambda : {0.1, 1.0, 10.0, 100.0})
    for (double g : {1.0001, 2.0, 1e10}) CHECK(flow(lambda, g) < lambda);
}

TEST_CASE("finite-difference derivative of the flow is beta", "[renorm][flow]") {
  const double h = 1e-5;
  for (double lambda : {0.1, 1.0, 10.0}) {
    const double central = (flow(lambda, std::exp(h)) - flow(lambda, std::exp(-h))) / (2.0 * h);
    CHECK_THAT(central, WithinRel(beta(lambda), 1e-6));
    // The one-sided quotient carries a first-order error lambda h / 4 pi.
    const double forward = (flow(lambda, std::exp(h)) - lambda) / h;
    const double expected_error = lambda * h / (4.0 * kPi);
    CHECK_THAT(forward / beta(lambda) - 1.0, WithinAbs(-expected_error, 0.05 * expected_error));
    if (lambda <= 1.0) CHECK_THAT(forward, WithinRel(beta(lambda), 1e-6));
  }
}

TEST_CASE("ODE flow agrees with the closed form", "[renorm][flow]") {
  CHECK_THAT(flow_ode(4.0 * kPi, std::exp(1.0)), WithinRel(2.0 * kPi, 1e-10));
  CHECK(flow_ode(2.0, 1.0) == 2.0);
  CHECK_THAT(flow_ode(1.0, 10.0), WithinRel(flow(1.0, 10.0), 1e-10));
  for (double lambda : {0.1, 1.0, 10.0, 50.0})
    for (double g : {1e-2, 0.5, 3.0, 1e6}) {
      INFO("lambda=" << lambda << " g=" << g);
      double ref = 0.0;
      try {
        ref = flow(lambda, g);
      } catch (const InvalidArgument&) {
        CHECK_THROWS_AS(flow_ode(lambda, g), InvalidArgument);
        continue;
      }
      CHECK_THAT(flow_ode(lambda, g), WithinRel(ref, 1e-10));
    }
}

TEST_CASE("scheme conversion", "[renorm][scheme]") {
  const auto b = scheme_convert(RenormScheme::coupling(1.0, 8.0 * kPi / std::log(4.0)));
  REQUIRE(b.as_bound_state());
  CHECK_THAT(b.as_bound_state()->mu2, WithinRel(0.25, 1e-14));

  const auto c = scheme_convert(RenormScheme::bound_state(1.0));
  REQUIRE(c.as_coupling());
  CHECK_THAT(c.as_coupling()->scale, WithinRel(std::exp(1.0), 1e-15));
  CHECK_THAT(c.as_coupling()->lambda_r, WithinRel(4.0 * kPi, 1e-14));

  const auto there = scheme_convert(RenormScheme::coupling(3.0, 2.0));
  const auto back = scheme_convert(there, 3.0);
  REQUIRE(back.as_coupling());
  CHECK_THAT(back.as_coupling()->scale, WithinRel(3.0, 1e-12));
  CHECK_THAT(back.as_coupling()->lambda_r, WithinRel(2.0, 1e-12));

  CHECK_THROWS_AS(scheme_convert(RenormScheme::bound_state(4.0), 1.5), InvalidArgument);
  CHECK_THROWS_AS(scheme_convert(RenormScheme::bound_state(4.0), 2.0), InvalidArgument);
}

TEST_CASE("flowing the coupling leaves the binding scale fixed", "[renorm][scheme][property]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lmu(-5.0, 5.0), lg(-3.0, 6.0);
  for (int i = 0; i < 100; ++i) {
    const double mu2 = std::exp(lmu(rng));
    const auto scheme = scheme_convert(RenormScheme::bound_state(mu2));
    const auto* c = scheme.as_coupling();
    REQUIRE(c);
    const double gamma = std::exp(lg(rng));
    double flowed = 0.0;
    try {
      flowed = flow(c->lambda_r, gamma);
    } catch (const InvalidArgument&) {
      continue;
    }
    const auto back = scheme_convert(RenormScheme::coupling(gamma * c->scale, flowed));
    CHECK_THAT(back.as_bound_state()->mu2, WithinRel(mu2, 1e-10));
  }
}
