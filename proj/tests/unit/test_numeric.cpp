#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "heatbind/error.hpp"
#include "heatbind/numeric.hpp"
#include "oracles.hpp"

using namespace heatbind;
using Catch::Matchers::WithinRel;
using Catch::Matchers::WithinAbs;

TEST_CASE("E1 matches high-precision reference values", "[numeric][e1]") {
  // 30-digit values of the exponential integral.
  CHECK_THAT(numeric::expint_e1(1e-3), WithinRel(6.3315393641361493112, 1e-14));
  CHECK_THAT(numeric::expint_e1(0.5), WithinRel(0.55977359477616081175, 1e-14));
  CHECK_THAT(numeric::expint_e1(1.0), WithinRel(0.21938393439552027368, 1e-14));
  CHECK_THAT(numeric::expint_e1(2.0), WithinRel(0.048900510708061119567, 1e-14));
  CHECK_THAT(numeric::expint_e1(10.0), WithinRel(4.1569689296853242774e-6, 1e-13));
  CHECK_THAT(numeric::expint_e1(50.0), WithinRel(3.7832640295504590187e-24, 1e-13));
}

TEST_CASE("E1 agrees with quadrature of its defining integral", "[numeric][e1]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> logx(std::log(1e-4), std::log(40.0));
  for (int i = 0; i < 50; ++i) {
    const double x = std::exp(logx(rng));
    // E1(x) = e^{-x} int_0^inf e^{-u}/(x+u) du
    const double ref = std::exp(-x) * oracle::de_half_line([x](double u) {
                         return std::exp(-u) / (x + u);
                       });
    INFO("x = " << x);
    CHECK_THAT(numeric::expint_e1(x), WithinRel(ref, 1e-11));
  }
}

TEST_CASE("E1 is continuous across the series/continued-fraction switch", "[numeric][e1]") {
  const double below = numeric::expint_e1(std::nextafter(1.0, 0.0));
  const double above = numeric::expint_e1(1.0);
  CHECK_THAT(below, WithinRel(above, 1e-14));
}

TEST_CASE("E1 rejects non-positive arguments", "[numeric][e1]") {
  CHECK_THROWS_AS(numeric::expint_e1(0.0), InvalidArgument);
  CHECK_THROWS_AS(numeric::expint_e1(-1.0), InvalidArgument);
}

TEST_CASE("finite-interval quadrature", "[numeric][quadrature]") {
  const auto r = numeric::integrate([](double x) { return std::sin(x); }, 0.0, oracle::kPi);
  CHECK_THAT(r.value, WithinRel(2.0, 1e-13));
  CHECK(r.error < 1e-11);

  // Sharp feature on a short interval far from the origin.
  const auto g = numeric::integrate([](double x) { return 1.0 / x; }, 1e-6, 1.0);
  CHECK_THAT(g.value, WithinRel(std::log(1e6), 1e-12));

  // Reversed limits flip the sign.
  const auto rev = numeric::integrate([](double x) { return x * x; }, 1.0, 0.0);
  CHECK_THAT(rev.value, WithinRel(-1.0 / 3.0, 1e-14));

  CHECK(numeric::integrate([](double) { return 1.0; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("quadrature reports failure instead of returning a poor value", "[numeric][quadrature]") {
  numeric::QuadratureOptions opts;
  opts.max_depth = 2;
  opts.rel_tol = 1e-15;
  opts.abs_tol = 1e-300;
  auto wiggly = [](double x) { return std::sin(400.0 * x) * std::exp(x); };
  CHECK_THROWS_AS(numeric::integrate(wiggly, 0.0, 10.0, opts), NumericalError);
}

TEST_CASE("semi-infinite and whole-line quadrature", "[numeric][quadrature]") {
  CHECK_THAT(numeric::integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0).value,
             WithinRel(1.0, 1e-13));
  CHECK_THAT(
      numeric::integrate_real_line([](double x) { return std::exp(-x * x); }).value,
      WithinRel(std::sqrt(oracle::kPi), 1e-13));
}

TEST_CASE("bracketed root finder", "[numeric][roots]") {
  auto f = [](double x) { return std::cos(x) - x; };
  const auto r = numeric::solve_bracketed(f, 0.0, 1.0);
  CHECK_THAT(r.root, WithinAbs(0.73908513321516064166, 1e-15));
  CHECK(r.lo <= r.root);
  CHECK(r.root <= r.hi);
  CHECK(r.residual < 1e-15);

  // Decreasing function and reversed orientation.
  const auto d = numeric::solve_bracketed([](double x) { return 2.0 - x * x * x; }, 3.0, 0.0);
  CHECK_THAT(d.root, WithinRel(std::cbrt(2.0), 1e-15));

  // Root exactly at an end point.
  const auto e = numeric::solve_bracketed([](double x) { return x - 1.0; }, 1.0, 2.0);
  CHECK(e.root == 1.0);

  CHECK_THROWS_AS(numeric::solve_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                  NumericalError);
}

TEST_CASE("root finder on random monotone cubics", "[numeric][roots][property]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(0.1, 5.0), shift(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double a = coef(rng), b = coef(rng), c = shift(rng);
    auto f = [=](double x) { return a * (x - c) * (x - c) * (x - c) + b * (x - c); };
    const auto r = numeric::solve_bracketed(f, c - 10.0, c + 7.0);
    CHECK_THAT(r.root, WithinAbs(c, 1e-13));
  }
}

TEST_CASE("golden-section maximizer", "[numeric]") {
  const auto m = numeric::golden_section_maximize(
      [](double x) { return -(x - 2.0) * (x - 2.0) + 3.0; }, -5.0, 10.0);
  CHECK_THAT(m.argmax, WithinAbs(2.0, 1e-7));
  CHECK_THAT(m.value, WithinAbs(3.0, 1e-14));
}

TEST_CASE("least-squares line", "[numeric]") {
  const auto fit = numeric::fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
  CHECK_THAT(fit.slope, WithinRel(2.0, 1e-14));
  CHECK_THAT(fit.intercept, WithinRel(1.0, 1e-14));
  CHECK_THAT(fit.r_squared, WithinRel(1.0, 1e-14));
  CHECK_THROWS_AS(numeric::fit_line({1.0}, {1.0}), InvalidArgument);
}

TEST_CASE("x/sinh x near zero and far out", "[numeric]") {
  CHECK(numeric::x_over_sinh(0.0) == 1.0);
  for (double x : {1e-9, 1e-5, 1e-3, 0.1, 1.0, 5.0, 30.0}) {
    const double ref = x / std::sinh(x);
    CHECK_THAT(numeric::x_over_sinh(x), WithinRel(ref, 1e-14));
    CHECK(numeric::x_over_sinh(-x) == numeric::x_over_sinh(x));
  }
  CHECK(numeric::x_over_sinh(800.0) >= 0.0);
}
