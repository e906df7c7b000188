#pragma once

// Heat kernels, heat traces and Laplacian spectra for the model
// two-dimensional geometries: the plane, the square flat torus, the round
// sphere and the hyperbolic plane (plus the line, which only carries a
// tag here; its kernel lives in onedim).
//
// Units: hbar = 2m = 1, so times carry length^2 and kernels 1/length^2.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace heatbind {

struct Plane {};
struct Torus {
  double length;
};
struct Sphere {
  double radius;
};
struct Hyperbolic {
  double radius;
};
struct Line {};

class ManifoldSpec {
 public:
  using Variant = std::variant<Plane, Torus, Sphere, Hyperbolic, Line>;

  static ManifoldSpec plane();
  static ManifoldSpec torus(double length);
  static ManifoldSpec sphere(double radius);
  static ManifoldSpec hyperbolic(double radius);
  static ManifoldSpec line();

  const Variant& variant() const noexcept { return variant_; }
  bool is_compact() const noexcept;
  bool is_homogeneous_2d() const noexcept;  // Plane, Torus, Sphere

  /// Riemannian volume; throws InvalidArgument for non-compact variants.
  double volume() const;
  std::string name() const;

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&variant_);
  }

 private:
  explicit ManifoldSpec(Variant v) : variant_(v) {}
  Variant variant_;
};

/// Separation vector on the torus; reduced to the minimal image internally.
struct Displacement {
  double dx = 0.0;
  double dy = 0.0;
};

/// K_t at geodesic separation d. For the torus d is taken along one lattice
/// axis, i.e. Displacement{d, 0}.
double heat_kernel(const ManifoldSpec& m, double t, double d);
double heat_kernel(const ManifoldSpec& m, double t, Displacement disp);

/// Theta(s) = sum_l d_l exp(-sigma_l s) on a compact manifold.
double heat_trace(const ManifoldSpec& m, double s);

/// Theta(s)/V - 1/(4 pi s), evaluated without the cancellation of the two
/// 1/s terms. Zero on the plane.
double heat_trace_excess(const ManifoldSpec& m, double s);

struct SpectralEntry {
  double sigma;
  long degeneracy;
};

struct SpectralBasis {
  std::vector<SpectralEntry> entries;  // strictly increasing sigma
  double truncation_cutoff = 0.0;      // largest sigma kept
  double reference_time = 0.0;
  double tail_bound = 0.0;  // bound on the omitted trace at reference_time
};

/// Truncated spectrum, extended until tail_bound <= rel_tol * partial trace
/// at the reference time.
SpectralBasis spectral_basis(const ManifoldSpec& m, double reference_time,
                             double rel_tol = 1e-14);

/// CSV dump with header "sigma,degeneracy".
void write_spectral_basis_csv(const SpectralBasis& basis, std::ostream& os);

struct ShortTimeEstimate {
  double u1 = 0.0;
  std::vector<double> sequence;  // Richardson diagonal, for diagnostics
};

/// Coefficient u_1 of 4 pi t K_t(x,x) = 1 + u_1 t + O(t^2), from
/// Richardson extrapolation of the spectral sum.
ShortTimeEstimate short_time_u1(const ManifoldSpec& m);

/// |int K_{t1}(x,z) K_{t2}(z,y) dz - K_{t1+t2}(x,y)| by quadrature.
double semigroup_residual(const ManifoldSpec& m, double t1, double t2,
                          double d);

/// |int K_t(x,y) dmu(y) - 1| by quadrature.
double stochastic_completeness_residual(const ManifoldSpec& m, double t);

/// Torus(L) kernel divided by the plane kernel at the same geodesic
/// distance; never below one.
double cheeger_yau_ratio(double t, double d, double length);
bool cheeger_yau_check(double t, double d, double length);

/// Diagonal hyperbolic kernel at time 2t:
///   R sqrt2 / (8 pi t)^{3/2} e^{-t/2R^2} int_0^inf s e^{-s^2 R^2/8t} /
///   sqrt(cosh s - 1) ds.
/// Callers wanting K_s(x,x) pass t = s/2.
double mckean_h2_diagonal(double radius, double t);

namespace torus {

/// sum_{n in Z} exp(-a n^2), a > 0, direct for a >= pi and through
/// Poisson summation below.
double theta_sum(double a);

/// One-dimensional periodic kernel by image sum and by cosine series.
double kernel_1d_images(double length, double t, double x);
double kernel_1d_spectral(double length, double t, double x);

double kernel_images(double length, double t, Displacement disp);
double kernel_spectral(double length, double t, Displacement disp);

/// Image/spectral crossover time L^2 / (4 pi).
double crossover_time(double length);

}  // namespace torus

namespace sphere {

/// Legendre sum (1/4 pi R^2) sum_l (2l+1) e^{-l(l+1)t/R^2} P_l(cos theta).
double kernel_legendre(double radius, double t, double theta);

/// Image form for t < R^2, positive and accurate where the Legendre sum
/// cancels:
///   sqrt2 e^{u/4} / (4 pi u)^{3/2} / R^2 sum_k (-1)^k
///     int_theta^pi (phi + 2 pi k) e^{-(phi + 2 pi k)^2/4u} /
///     sqrt(cos theta - cos phi) dphi,  u = t/R^2.
double kernel_small_time(double radius, double t, double theta);

/// Spectral trace sum_l (2l+1) exp(-l(l+1) s / R^2).
double trace_spectral(double radius, double s);

/// Small-time Euler-Maclaurin form of the same trace,
/// e^{u/4} (1/u + 1/12 + 7u/480 + ...), u = s/R^2.
double trace_small_time(double radius, double s);

}  // namespace sphere

}  // namespace heatbind
