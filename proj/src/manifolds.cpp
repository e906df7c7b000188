#include "heatbind/manifolds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "heatbind/error.hpp"
#include "heatbind/numeric.hpp"

namespace heatbind {

using numeric::kPi;

namespace {

constexpr double kTailTol = 1e-17;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_time(double t, const char* where) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << where << ": time must be positive and finite (got " << t << ")";
    throw InvalidArgument(os.str());
  }
}

// Reduce x to the minimal image in [-L/2, L/2].
double minimal_image(double x, double length) {
  double r = std::remainder(x, length);
  return r;
}

// Euler-Maclaurin coefficients c_j = (1 - 2^{1-2j}) B_{2j} (-1)^{j-1} / j!
// of the half-integer sum giving the sphere trace at small u.
const std::array<double, 8>& sphere_small_time_coefficients() {
  static const std::array<double, 8> c = [] {
    const std::array<double, 8> bernoulli = {
        1.0 / 6.0,  -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
        5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0};
    std::array<double, 8> out{};
    double factorial = 1.0;
    for (int j = 1; j <= 8; ++j) {
      factorial *= j;
      const double sign = (j % 2 == 1) ? 1.0 : -1.0;
      out[j - 1] = (1.0 - std::pow(2.0, 1 - 2 * j)) * bernoulli[j - 1] * sign /
                   factorial;
    }
    return out;
  }();
  return c;
}

// Below this u = s/R^2 the sphere trace uses the Euler-Maclaurin form.
constexpr double kSphereSmallTime = 1e-2;

// Sum over l >= 0 of (2l+1) e^{-l(l+1)u} P_l(x), truncated by the bound
// sum_{l>L} (2l+1) e^{-l(l+1)u} <= e^{-L(L+1)u}/u (valid once the summand
// decreases).
double legendre_heat_sum(double u, double x) {
  x = std::clamp(x, -1.0, 1.0);
  double p_prev = 1.0;  // P_0
  double p = x;         // P_1
  double sum = 1.0;
  double scale = 1.0;
  const double monotone_from = 0.5 * (std::sqrt(2.0 / u) - 1.0);
  for (long l = 1;; ++l) {
    const double weight = (2.0 * l + 1.0) * std::exp(-static_cast<double>(l) * (l + 1) * u);
    sum += weight * p;
    scale += weight;
    const double tail = std::exp(-static_cast<double>(l) * (l + 1) * u) / u;
    if (l > monotone_from && tail < kTailTol * scale) break;
    if (l > 50'000'000) throw NumericalError("legendre_heat_sum: truncation runaway");
    const double p_next = ((2.0 * l + 1.0) * x * p - l * p_prev) / (l + 1.0);
    p_prev = p;
    p = p_next;
  }
  return sum;
}

// 2u / sqrt(cosh(rho + u^2) - cosh(rho)), written with
// cosh(a+b) - cosh(a) = 2 sinh(a + b/2) sinh(b/2).
double mckean_jacobian(double rho, double u) {
  const double half = 0.5 * u * u;
  const double a = rho + half;
  if (a > 700.0) return 0.0;
  const double denom = 2.0 * std::sinh(a) * std::sinh(half);
  if (denom <= 0.0) return 0.0;
  return 2.0 * u / std::sqrt(denom);
}

double hyperbolic_kernel(double radius, double t, double d) {
  const double rho = d / radius;
  const double tau = t / (radius * radius);
  // Width of the e^{-(2 rho u^2 + u^4)/4 tau} envelope.
  const double width =
      1.0 / std::sqrt(2.0 * rho / (4.0 * tau) + 1.0 / std::sqrt(4.0 * tau));
  auto f = [&](double v) {
    const double u = width * v;
    const double u2 = u * u;
    const double envelope = std::exp(-(2.0 * rho * u2 + u2 * u2) / (4.0 * tau));
    if (envelope == 0.0) return 0.0;
    return (rho + u2) * envelope * mckean_jacobian(rho, u) * width;
  };
  numeric::QuadratureOptions opts;
  opts.rel_tol = 1e-13;
  const double integral = numeric::integrate_to_infinity(f, 0.0, opts).value;
  const double log_prefactor = 0.5 * std::log(2.0) - 0.25 * tau -
                               1.5 * std::log(4.0 * kPi * tau) -
                               rho * rho / (4.0 * tau);
  return std::exp(log_prefactor) * integral / (radius * radius);
}

double plane_kernel(double t, double d) {
  return std::exp(-d * d / (4.0 * t)) / (4.0 * kPi * t);
}

// Direct spectral theta sum without the Poisson switch, used where the
// caller explicitly asks for the eigenvalue series.
double theta_sum_direct(double a) {
  double sum = 1.0;
  for (long n = 1;; ++n) {
    const double term = 2.0 * std::exp(-a * static_cast<double>(n) * n);
    sum += term;
    if (term < kTailTol * sum) break;
  }
  return sum;
}

double torus_excess(double length, double s) {
  const double a = 4.0 * kPi * kPi * s / (length * length);
  if (a < kPi) {
    double delta = 0.0;
    for (long m = 1;; ++m) {
      const double term = 2.0 * std::exp(-kPi * kPi * static_cast<double>(m) * m / a);
      delta += term;
      if (term <= kTailTol * (1.0 + delta)) break;
    }
    return (2.0 * delta + delta * delta) / (4.0 * kPi * s);
  }
  const double theta = torus::theta_sum(a);
  return theta * theta / (length * length) - 1.0 / (4.0 * kPi * s);
}

double sphere_excess(double radius, double s) {
  const double u = s / (radius * radius);
  const double area = 4.0 * kPi * radius * radius;
  if (u < kSphereSmallTime) {
    const auto& c = sphere_small_time_coefficients();
    double poly = 0.0;
    for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) poly = poly * u + c[j];
    return (std::expm1(0.25 * u) / u + std::exp(0.25 * u) * poly) / area;
  }
  return (sphere::trace_spectral(radius, s) - 1.0 / u) / area;
}

}  // namespace

// ---------------------------------------------------------------------------
// ManifoldSpec

ManifoldSpec ManifoldSpec::plane() { return ManifoldSpec(Plane{}); }

ManifoldSpec ManifoldSpec::torus(double length) {
  require(length > 0.0 && std::isfinite(length), "torus: side length must be positive");
  return ManifoldSpec(Torus{length});
}

ManifoldSpec ManifoldSpec::sphere(double radius) {
  require(radius > 0.0 && std::isfinite(radius), "sphere: radius must be positive");
  return ManifoldSpec(Sphere{radius});
}

ManifoldSpec ManifoldSpec::hyperbolic(double radius) {
  require(radius > 0.0 && std::isfinite(radius),
          "hyperbolic: curvature radius must be positive");
  return ManifoldSpec(Hyperbolic{radius});
}

ManifoldSpec ManifoldSpec::line() { return ManifoldSpec(Line{}); }

bool ManifoldSpec::is_compact() const noexcept {
  return std::holds_alternative<Torus>(variant_) ||
         std::holds_alternative<Sphere>(variant_);
}

bool ManifoldSpec::is_homogeneous_2d() const noexcept {
  return std::holds_alternative<Plane>(variant_) || is_compact();
}

double ManifoldSpec::volume() const {
  return std::visit(
      overloaded{
          [](const Torus& m) { return m.length * m.length; },
          [](const Sphere& m) { return 4.0 * kPi * m.radius * m.radius; },
          [this](const auto&) -> double {
            throw InvalidArgument("volume: " + name() + " is not compact");
          },
      },
      variant_);
}

std::string ManifoldSpec::name() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Plane&) { os << "plane"; },
                 [&](const Torus& m) { os << "torus(L=" << m.length << ")"; },
                 [&](const Sphere& m) { os << "sphere(R=" << m.radius << ")"; },
                 [&](const Hyperbolic& m) { os << "hyperbolic(R=" << m.radius << ")"; },
                 [&](const Line&) { os << "line"; },
             },
             variant_);
  return os.str();
}

// ---------------------------------------------------------------------------
// torus

namespace torus {

double theta_sum(double a) {
  require(a > 0.0, "theta_sum: argument must be positive");
  if (a >= kPi) return theta_sum_direct(a);
  return std::sqrt(kPi / a) * theta_sum_direct(kPi * kPi / a);
}

double crossover_time(double length) { return length * length / (4.0 * kPi); }

double kernel_1d_images(double length, double t, double x) {
  x = minimal_image(x, length);
  const double norm = 1.0 / std::sqrt(4.0 * kPi * t);
  double sum = std::exp(-x * x / (4.0 * t));
  for (long m = 1;; ++m) {
    const double a = x + m * length;
    const double b = x - m * length;
    const double term = std::exp(-a * a / (4.0 * t)) + std::exp(-b * b / (4.0 * t));
    sum += term;
    if (term <= kTailTol * sum) break;
  }
  return norm * sum;
}

double kernel_1d_spectral(double length, double t, double x) {
  const double a = 4.0 * kPi * kPi * t / (length * length);
  const double phase = 2.0 * kPi * x / length;
  double sum = 1.0;
  for (long n = 1;; ++n) {
    const double weight = 2.0 * std::exp(-a * static_cast<double>(n) * n);
    sum += weight * std::cos(phase * n);
    if (weight <= kTailTol) break;
  }
  return sum / length;
}

double kernel_images(double length, double t, Displacement disp) {
  return kernel_1d_images(length, t, disp.dx) * kernel_1d_images(length, t, disp.dy);
}

double kernel_spectral(double length, double t, Displacement disp) {
  return kernel_1d_spectral(length, t, disp.dx) *
         kernel_1d_spectral(length, t, disp.dy);
}

}  // namespace torus

// ---------------------------------------------------------------------------
// sphere

namespace sphere {

double kernel_legendre(double radius, double t, double theta) {
  const double u = t / (radius * radius);
  return legendre_heat_sum(u, std::cos(theta)) / (4.0 * kPi * radius * radius);
}

double kernel_small_time(double radius, double t, double theta) {
  const double u = t / (radius * radius);
  theta = std::clamp(theta, 0.0, kPi);
  const double a = kPi - theta;
  // phi = pi - a cos(2 beta) maps beta in [0, pi/4] onto [theta, pi] and
  // absorbs the inverse square-root singularity at phi = theta.
  auto jacobian = [&](double beta) {
    if (a < 1e-8) return 2.0 * std::sqrt(2.0);
    const double sb = std::sin(beta), cb = std::cos(beta);
    return 4.0 * a * sb * cb /
           std::sqrt(2.0 * std::sin(a * cb * cb) * std::sin(a * sb * sb));
  };
  // Image sum scaled by e^{theta^2/4u}; every exponent is then non-positive.
  auto images = [&](double phi) {
    double sum = 0.0;
    for (int k = -6; k <= 6; ++k) {
      const double y = phi + 2.0 * kPi * k;
      const double term = y * std::exp(-(y * y - theta * theta) / (4.0 * u));
      sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
  };
  auto f = [&](double beta) {
    return images(kPi - a * std::cos(2.0 * beta)) * jacobian(beta);
  };
  numeric::QuadratureOptions opts;
  opts.rel_tol = 1e-13;
  opts.abs_tol = 0.0;
  const double integral = numeric::integrate(f, 0.0, 0.25 * kPi, opts).value;
  const double log_prefactor = 0.5 * std::log(2.0) + 0.25 * u -
                               1.5 * std::log(4.0 * kPi * u) -
                               theta * theta / (4.0 * u);
  return std::exp(log_prefactor) * integral / (radius * radius);
}

double trace_spectral(double radius, double s) {
  const double u = s / (radius * radius);
  return legendre_heat_sum(u, 1.0);
}

double trace_small_time(double radius, double s) {
  const double u = s / (radius * radius);
  const auto& c = sphere_small_time_coefficients();
  double poly = 0.0;
  for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j) poly = poly * u + c[j];
  return std::exp(0.25 * u) * (1.0 / u + poly);
}

}  // namespace sphere

// ---------------------------------------------------------------------------
// kernels and traces

double heat_kernel(const ManifoldSpec& m, double t, double d) {
  require(d >= 0.0, "heat_kernel: separation must be non-negative");
  if (m.as<Torus>()) return heat_kernel(m, t, Displacement{d, 0.0});
  require_time(t, "heat_kernel");
  return std::visit(
      overloaded{
          [&](const Plane&) { return plane_kernel(t, d); },
          [&](const Sphere& s) {
            if (t < s.radius * s.radius)
              return sphere::kernel_small_time(s.radius, t, d / s.radius);
            return sphere::kernel_legendre(s.radius, t, d / s.radius);
          },
          [&](const Hyperbolic& h) { return hyperbolic_kernel(h.radius, t, d); },
          [&](const Torus&) -> double { return 0.0; },
          [&](const Line&) -> double {
            throw InvalidArgument(
                "heat_kernel: the line kernel belongs to the one-dimensional module");
          },
      },
      m.variant());
}

double heat_kernel(const ManifoldSpec& m, double t, Displacement disp) {
  require_time(t, "heat_kernel");
  if (const auto* tor = m.as<Torus>()) {
    if (t < torus::crossover_time(tor->length))
      return torus::kernel_images(tor->length, t, disp);
    return torus::kernel_spectral(tor->length, t, disp);
  }
  return heat_kernel(m, t, std::hypot(disp.dx, disp.dy));
}

double heat_trace(const ManifoldSpec& m, double s) {
  require_time(s, "heat_trace");
  if (const auto* tor = m.as<Torus>()) {
    const double theta = torus::theta_sum(4.0 * kPi * kPi * s / (tor->length * tor->length));
    return theta * theta;
  }
  if (const auto* sph = m.as<Sphere>()) {
    const double u = s / (sph->radius * sph->radius);
    return u < kSphereSmallTime ? sphere::trace_small_time(sph->radius, s)
                                : sphere::trace_spectral(sph->radius, s);
  }
  throw InvalidArgument("heat_trace: " + m.name() + " is not compact");
}

double heat_trace_excess(const ManifoldSpec& m, double s) {
  require_time(s, "heat_trace_excess");
  if (m.as<Plane>()) return 0.0;
  if (const auto* tor = m.as<Torus>()) return torus_excess(tor->length, s);
  if (const auto* sph = m.as<Sphere>()) return sphere_excess(sph->radius, s);
  throw InvalidArgument("heat_trace_excess: unsupported manifold " + m.name());
}

// ---------------------------------------------------------------------------
// spectral basis

SpectralBasis spectral_basis(const ManifoldSpec& m, double reference_time,
                             double rel_tol) {
  require_time(reference_time, "spectral_basis");
  require(rel_tol > 0.0, "spectral_basis: tolerance must be positive");
  SpectralBasis basis;
  basis.reference_time = reference_time;

  if (const auto* sph = m.as<Sphere>()) {
    const double r2 = sph->radius * sph->radius;
    const double u = reference_time / r2;
    const double monotone_from = 0.5 * (std::sqrt(2.0 / u) - 1.0);
    double partial = 0.0;
    for (long l = 0;; ++l) {
      const double sigma = static_cast<double>(l) * (l + 1) / r2;
      basis.entries.push_back({sigma, 2 * l + 1});
      partial += (2.0 * l + 1.0) * std::exp(-sigma * reference_time);
      basis.tail_bound = std::exp(-static_cast<double>(l) * (l + 1) * u) / u;
      if (l > monotone_from && basis.tail_bound <= rel_tol * partial) break;
    }
    basis.truncation_cutoff = basis.entries.back().sigma;
    return basis;
  }

  if (const auto* tor = m.as<Torus>()) {
    const double unit = 4.0 * kPi * kPi / (tor->length * tor->length);
    const double a = unit * reference_time;
    const double theta = torus::theta_sum(a);
    // Lattice points with |n|^2 > K have max(|n1|,|n2|) > M = floor(sqrt(K/2)),
    // so the omitted trace is at most 2 theta * sum_{|n|>M} e^{-a n^2}.
    auto tail_1d = [a](long big_m) {
      const double first = std::exp(-a * static_cast<double>(big_m + 1) * (big_m + 1));
      return 2.0 * first / (-std::expm1(-a * (2.0 * big_m + 3.0)));
    };
    long k_max = 4;
    for (;;) {
      const long big_m = static_cast<long>(std::floor(std::sqrt(k_max / 2.0)));
      const double bound = 2.0 * theta * tail_1d(big_m);
      if (bound <= rel_tol * theta * theta) {
        basis.tail_bound = bound;
        break;
      }
      k_max *= 2;
      if (k_max > (1L << 40)) throw NumericalError("spectral_basis: lattice too large");
    }
    std::map<long, long> degeneracy;
    const long n_max = static_cast<long>(std::floor(std::sqrt(static_cast<double>(k_max))));
    for (long i = -n_max; i <= n_max; ++i) {
      for (long j = -n_max; j <= n_max; ++j) {
        const long k = i * i + j * j;
        if (k <= k_max) ++degeneracy[k];
      }
    }
    for (const auto& [k, count] : degeneracy) basis.entries.push_back({unit * k, count});
    basis.truncation_cutoff = basis.entries.back().sigma;
    return basis;
  }

  throw InvalidArgument("spectral_basis: " + m.name() + " is not compact");
}

void write_spectral_basis_csv(const SpectralBasis& basis, std::ostream& os) {
  os << "sigma,degeneracy\n";
  os << std::setprecision(17);
  for (const auto& e : basis.entries) os << e.sigma << ',' << e.degeneracy << '\n';
}

// ---------------------------------------------------------------------------
// short-time coefficient

ShortTimeEstimate short_time_u1(const ManifoldSpec& m) {
  double scale = 0.0;
  std::function<double(double)> normalized_diagonal;  // 4 pi t Theta(t) / V
  if (const auto* sph = m.as<Sphere>()) {
    scale = sph->radius * sph->radius;
    const double radius = sph->radius;
    normalized_diagonal = [radius](double t) {
      return 4.0 * kPi * t * sphere::trace_spectral(radius, t) /
             (4.0 * kPi * radius * radius);
    };
  } else if (const auto* tor = m.as<Torus>()) {
    scale = tor->length * tor->length;
    const double length = tor->length;
    normalized_diagonal = [length](double t) {
      const double theta = theta_sum_direct(4.0 * kPi * kPi * t / (length * length));
      return 4.0 * kPi * t * theta * theta / (length * length);
    };
  } else {
    throw InvalidArgument("short_time_u1: " + m.name() + " is not compact");
  }

  constexpr int kLevels = 8;
  const double h0 = 0.02 * scale;
  std::array<std::array<double, kLevels>, kLevels> table{};
  ShortTimeEstimate est;
  for (int k = 0; k < kLevels; ++k) {
    const double t = h0 / std::pow(2.0, k);
    table[k][0] = (normalized_diagonal(t) - 1.0) / t;
    for (int j = 1; j <= k; ++j) {
      const double f = std::pow(2.0, j);
      table[k][j] = (f * table[k][j - 1] - table[k - 1][j - 1]) / (f - 1.0);
    }
    est.sequence.push_back(table[k][k]);
    if (k >= 3) {
      const double change = std::abs(table[k][k] - table[k - 1][k - 1]);
      if (change <= 1e-8 * std::max(1.0, std::abs(table[k][k])) / scale) {
        est.u1 = table[k][k];
        return est;
      }
    }
  }
  std::ostringstream os;
  os << "short_time_u1: Richardson extrapolation did not settle; sequence:";
  for (double v : est.sequence) os << ' ' << v;
  throw NumericalError(os.str());
}

// ---------------------------------------------------------------------------
// semigroup and completeness

namespace {

double gaussian_1d(double t, double x) {
  return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
}

double torus_kernel_1d(double length, double t, double x) {
  return t < torus::crossover_time(length) ? torus::kernel_1d_images(length, t, x)
                                           : torus::kernel_1d_spectral(length, t, x);
}

// int over one period of k_{t1}(z) k_{t2}(z - shift), split at both peaks.
double periodic_convolution(double length, double t1, double t2, double shift) {
  shift = minimal_image(shift, length);
  auto f = [&](double z) {
    return torus_kernel_1d(length, t1, z) * torus_kernel_1d(length, t2, z - shift);
  };
  std::vector<double> cuts = {-0.5 * length, 0.0, shift, 0.5 * length};
  std::sort(cuts.begin(), cuts.end());
  numeric::QuadratureOptions opts;
  opts.rel_tol = 1e-13;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) total += numeric::integrate(f, cuts[i], cuts[i + 1], opts).value;
  }
  return total;
}

}  // namespace

double semigroup_residual(const ManifoldSpec& m, double t1, double t2, double d) {
  require_time(t1, "semigroup_residual");
  require_time(t2, "semigroup_residual");
  require(d >= 0.0, "semigroup_residual: separation must be non-negative");
  numeric::QuadratureOptions opts;
  opts.rel_tol = 1e-13;

  if (m.as<Plane>()) {
    auto along = [&](double shift) {
      return numeric::integrate_real_line(
                 [&](double z) { return gaussian_1d(t1, z) * gaussian_1d(t2, z - shift); },
                 opts)
          .value;
    };
    const double lhs = along(d) * along(0.0);
    return std::abs(lhs - plane_kernel(t1 + t2, d));
  }
  if (const auto* tor = m.as<Torus>()) {
    const double lhs = periodic_convolution(tor->length, t1, t2, d) *
                       periodic_convolution(tor->length, t1, t2, 0.0);
    return std::abs(lhs - heat_kernel(m, t1 + t2, d));
  }
  if (const auto* sph = m.as<Sphere>()) {
    const double radius = sph->radius;
    const double u1 = t1 / (radius * radius);
    const double u2 = t2 / (radius * radius);
    const double theta_y = d / radius;
    const double norm = 1.0 / (4.0 * kPi * radius * radius);
    const double cy = std::cos(theta_y);
    const double sy = std::sin(theta_y);
    numeric::QuadratureOptions inner_opts;
    inner_opts.rel_tol = 1e-12;
    // x at the north pole, y at polar angle theta_y; phi symmetric about 0.
    auto outer = [&](double theta) {
      const double ct = std::cos(theta);
      const double st = std::sin(theta);
      const double k1 = norm * legendre_heat_sum(u1, ct);
      auto inner = [&](double phi) {
        return norm * legendre_heat_sum(u2, ct * cy + st * sy * std::cos(phi));
      };
      const double ring = sy == 0.0
                              ? kPi * inner(0.0)
                              : numeric::integrate(inner, 0.0, kPi, inner_opts).value;
      return 2.0 * radius * radius * st * k1 * ring;
    };
    numeric::QuadratureOptions outer_opts;
    outer_opts.rel_tol = 1e-11;
    const double lhs = numeric::integrate(outer, 0.0, kPi, outer_opts).value;
    return std::abs(lhs - heat_kernel(m, t1 + t2, d));
  }
  throw InvalidArgument("semigroup_residual: unsupported manifold " + m.name());
}

double stochastic_completeness_residual(const ManifoldSpec& m, double t) {
  require_time(t, "stochastic_completeness_residual");
  numeric::QuadratureOptions opts;
  opts.rel_tol = 1e-13;
  if (m.as<Plane>()) {
    const double one_d =
        numeric::integrate_real_line([&](double z) { return gaussian_1d(t, z); }, opts).value;
    return std::abs(one_d * one_d - 1.0);
  }
  if (const auto* tor = m.as<Torus>()) {
    const double length = tor->length;
    auto f = [&](double z) { return torus_kernel_1d(length, t, z); };
    const double one_d = numeric::integrate(f, -0.5 * length, 0.0, opts).value +
                         numeric::integrate(f, 0.0, 0.5 * length, opts).value;
    return std::abs(one_d * one_d - 1.0);
  }
  if (const auto* sph = m.as<Sphere>()) {
    const double radius = sph->radius;
    auto f = [&](double theta) {
      return 2.0 * kPi * radius * radius * std::sin(theta) *
             sphere::kernel_legendre(radius, t, theta);
    };
    return std::abs(numeric::integrate(f, 0.0, kPi, opts).value - 1.0);
  }
  throw InvalidArgument("stochastic_completeness_residual: unsupported manifold " +
                        m.name());
}

double cheeger_yau_ratio(double t, double d, double length) {
  require_time(t, "cheeger_yau_ratio");
  require(length > 0.0, "cheeger_yau_ratio: side length must be positive");
  const double x = std::abs(minimal_image(d, length));
  if (t < torus::crossover_time(length)) {
    // Image sum divided termwise by the flat term: 1 + positive corrections.
    double along_x = 1.0;
    for (long m = 1;; ++m) {
      const double a = x + m * length;
      const double b = x - m * length;
      const double term = std::exp(-(a * a - x * x) / (4.0 * t)) +
                          std::exp(-(b * b - x * x) / (4.0 * t));
      along_x += term;
      if (term <= kTailTol * along_x) break;
    }
    double along_y = 1.0;
    for (long m = 1;; ++m) {
      const double a = m * length;
      const double term = 2.0 * std::exp(-a * a / (4.0 * t));
      along_y += term;
      if (term <= kTailTol * along_y) break;
    }
    return along_x * along_y;
  }
  return torus::kernel_spectral(length, t, Displacement{x, 0.0}) / plane_kernel(t, x);
}

bool cheeger_yau_check(double t, double d, double length) {
  return cheeger_yau_ratio(t, d, length) >= 1.0;
}

double mckean_h2_diagonal(double radius, double t) {
  require(radius > 0.0, "mckean_h2_diagonal: radius must be positive");
  require_time(t, "mckean_h2_diagonal");
  // s = sigma sqrt(8t)/R; s/sqrt(cosh s - 1) = sqrt2 (s/2)/sinh(s/2).
  const double scale = std::sqrt(8.0 * t) / radius;
  auto f = [&](double sigma) {
    return std::exp(-sigma * sigma) * std::sqrt(2.0) *
           numeric::x_over_sinh(0.5 * scale * sigma) * scale;
  };
  numeric::QuadratureOptions opts;
  opts.rel_tol = 1e-13;
  const double integral = numeric::integrate_to_infinity(f, 0.0, opts).value;
  const double prefactor = radius * std::sqrt(2.0) / std::pow(8.0 * kPi * t, 1.5) *
                           std::exp(-t / (2.0 * radius * radius));
  return prefactor * integral;
}

}  // namespace heatbind
