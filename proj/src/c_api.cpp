#include "heatbind/heatbind.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <string>
#include <vector>

#include "heatbind/error.hpp"
#include "heatbind/manifolds.hpp"
#include "heatbind/meanfield2d.hpp"
#include "heatbind/onedim.hpp"
#include "heatbind/parallel.hpp"
#include "heatbind/principal.hpp"
#include "heatbind/renorm.hpp"

struct hb_manifold {
  heatbind::ManifoldSpec spec;
};

struct hb_scheme {
  heatbind::RenormScheme scheme;
};

namespace {

thread_local std::string last_error;

hb_status fail(hb_status status, const char* what) {
  last_error = what;
  return status;
}

template <class F>
hb_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return HB_OK;
  } catch (const heatbind::Error& e) {
    switch (e.kind()) {
      case heatbind::ErrorKind::InvalidArgument:
        return fail(HB_INVALID_ARGUMENT, e.what());
      case heatbind::ErrorKind::Numerical:
        return fail(HB_NUMERICAL, e.what());
      case heatbind::ErrorKind::Io:
        return fail(HB_IO, e.what());
    }
    return fail(HB_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HB_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HB_INTERNAL, e.what());
  } catch (...) {
    return fail(HB_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* name) {
  if (!p) throw heatbind::InvalidArgument(std::string(name) + " must not be NULL");
}

template <class F>
hb_status make_manifold(hb_manifold** out, F&& factory) {
  return guarded([&] {
    need(out, "out");
    *out = new hb_manifold{factory()};
  });
}

template <class F>
hb_status make_scheme(hb_scheme** out, F&& factory) {
  return guarded([&] {
    need(out, "out");
    *out = new hb_scheme{factory()};
  });
}

template <class F>
hb_status scalar(double* out, F&& compute) {
  return guarded([&] {
    need(out, "out");
    *out = compute();
  });
}

const heatbind::ManifoldSpec& spec(const hb_manifold* m) {
  need(m, "manifold");
  return m->spec;
}

const heatbind::RenormScheme& scheme(const hb_scheme* s) {
  need(s, "scheme");
  return s->scheme;
}

heatbind::TorusMode to_mode(hb_torus_mode m) { return {m.qx, m.qy}; }

}  // namespace

extern "C" {

const char* hb_last_error(void) { return last_error.c_str(); }

size_t hb_thread_cap(void) { return heatbind::thread_cap(); }

hb_status hb_manifold_plane(hb_manifold** out) {
  return make_manifold(out, [] { return heatbind::ManifoldSpec::plane(); });
}
hb_status hb_manifold_torus(double length, hb_manifold** out) {
  return make_manifold(out, [=] { return heatbind::ManifoldSpec::torus(length); });
}
hb_status hb_manifold_sphere(double radius, hb_manifold** out) {
  return make_manifold(out, [=] { return heatbind::ManifoldSpec::sphere(radius); });
}
hb_status hb_manifold_hyperbolic(double radius, hb_manifold** out) {
  return make_manifold(out, [=] { return heatbind::ManifoldSpec::hyperbolic(radius); });
}
hb_status hb_manifold_line(hb_manifold** out) {
  return make_manifold(out, [] { return heatbind::ManifoldSpec::line(); });
}
void hb_manifold_free(hb_manifold* m) { delete m; }

hb_status hb_manifold_name(const hb_manifold* m, char* buffer, size_t capacity) {
  return guarded([&] {
    need(buffer, "buffer");
    heatbind::require(capacity > 0, "buffer capacity must be positive");
    const std::string name = spec(m).name();
    const size_t n = std::min(name.size(), capacity - 1);
    std::memcpy(buffer, name.data(), n);
    buffer[n] = '\0';
  });
}
hb_status hb_manifold_volume(const hb_manifold* m, double* out) {
  return scalar(out, [&] { return spec(m).volume(); });
}

hb_status hb_heat_kernel(const hb_manifold* m, double t, double distance, double* out) {
  return scalar(out, [&] { return heatbind::heat_kernel(spec(m), t, distance); });
}
hb_status hb_heat_kernel_xy(const hb_manifold* m, double t, double dx, double dy, double* out) {
  return scalar(out, [&] {
    return heatbind::heat_kernel(spec(m), t, heatbind::Displacement{dx, dy});
  });
}
hb_status hb_heat_trace(const hb_manifold* m, double s, double* out) {
  return scalar(out, [&] { return heatbind::heat_trace(spec(m), s); });
}
hb_status hb_heat_trace_excess(const hb_manifold* m, double s, double* out) {
  return scalar(out, [&] { return heatbind::heat_trace_excess(spec(m), s); });
}
hb_status hb_semigroup_residual(const hb_manifold* m, double t1, double t2, double distance,
                                double* out) {
  return scalar(out, [&] { return heatbind::semigroup_residual(spec(m), t1, t2, distance); });
}
hb_status hb_stochastic_completeness_residual(const hb_manifold* m, double t, double* out) {
  return scalar(out, [&] { return heatbind::stochastic_completeness_residual(spec(m), t); });
}
hb_status hb_short_time_u1(const hb_manifold* m, double* out) {
  return scalar(out, [&] { return heatbind::short_time_u1(spec(m)).u1; });
}
hb_status hb_cheeger_yau_ratio(double t, double distance, double length, double* out) {
  return scalar(out, [&] { return heatbind::cheeger_yau_ratio(t, distance, length); });
}
hb_status hb_torus_kernel_images(double length, double t, double dx, double dy, double* out) {
  return scalar(out, [&] {
    return heatbind::torus::kernel_images(length, t, heatbind::Displacement{dx, dy});
  });
}
hb_status hb_torus_kernel_spectral(double length, double t, double dx, double dy, double* out) {
  return scalar(out, [&] {
    return heatbind::torus::kernel_spectral(length, t, heatbind::Displacement{dx, dy});
  });
}
hb_status hb_write_spectral_basis_csv(const hb_manifold* m, double reference_time,
                                      double rel_tol, const char* path) {
  return guarded([&] {
    need(path, "path");
    const auto basis = heatbind::spectral_basis(spec(m), reference_time, rel_tol);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw heatbind::Error(heatbind::ErrorKind::Io, std::string("cannot open ") + path);
    heatbind::write_spectral_basis_csv(basis, os);
    if (!os) throw heatbind::Error(heatbind::ErrorKind::Io, std::string("write failed: ") + path);
  });
}

hb_status hb_scheme_bound_state(double mu2, hb_scheme** out) {
  return make_scheme(out, [=] { return heatbind::RenormScheme::bound_state(mu2); });
}
hb_status hb_scheme_coupling(double scale, double lambda_r, hb_scheme** out) {
  return make_scheme(out, [=] { return heatbind::RenormScheme::coupling(scale, lambda_r); });
}
void hb_scheme_free(hb_scheme* s) { delete s; }

hb_status hb_scheme_mu2(const hb_scheme* s, double* out) {
  return scalar(out, [&] { return scheme(s).mu2(); });
}
hb_status hb_scheme_log_mu2(const hb_scheme* s, double* out) {
  return scalar(out, [&] { return scheme(s).log_mu2(); });
}
hb_status hb_scheme_coupling_parameters(const hb_scheme* s, int* is_coupling, double* scale,
                                        double* lambda_r) {
  return guarded([&] {
    need(is_coupling, "is_coupling");
    const auto* c = scheme(s).as_coupling();
    *is_coupling = c ? 1 : 0;
    if (c) {
      if (scale) *scale = c->scale;
      if (lambda_r) *lambda_r = c->lambda_r;
    }
  });
}
hb_status hb_scheme_convert(const hb_scheme* s, int has_target, double target_scale,
                            hb_scheme** out) {
  return make_scheme(out, [&] {
    return heatbind::scheme_convert(
        scheme(s), has_target ? std::optional<double>(target_scale) : std::nullopt);
  });
}
hb_status hb_bare_coupling(double cutoff, double mu2, double* out) {
  return scalar(out, [=] { return heatbind::bare_coupling(cutoff, mu2); });
}
hb_status hb_renormalized_coupling(double cutoff, double mu2, double scale, double* out) {
  return scalar(out, [=] { return heatbind::renormalized_coupling(cutoff, mu2, scale); });
}
hb_status hb_beta(double lambda_r, double* out) {
  return scalar(out, [=] { return heatbind::beta(lambda_r); });
}
hb_status hb_flow(double lambda_r, double gamma, double* out) {
  return scalar(out, [=] { return heatbind::flow(lambda_r, gamma); });
}
hb_status hb_flow_ode(double lambda_r, double gamma, double* out) {
  return scalar(out, [=] { return heatbind::flow_ode(lambda_r, gamma); });
}

hb_status hb_omega0(const hb_manifold* m, const hb_scheme* s, double energy, double* out) {
  return scalar(out, [&] { return heatbind::omega0(spec(m), scheme(s), energy); });
}
hb_status hb_omega_mode(double length, const hb_scheme* s, double energy, hb_torus_mode mode,
                        double* out) {
  return scalar(out, [&] {
    return heatbind::omega_mode(length, scheme(s), energy, to_mode(mode));
  });
}
hb_status hb_solve_two_body(const hb_manifold* m, const hb_scheme* s, double window_min,
                            double window_max, hb_bound_state* out) {
  return guarded([&] {
    need(out, "out");
    heatbind::SolveOptions opts;
    if (window_min > 0.0) opts.window_min = window_min;
    if (window_max > 0.0) opts.window_max = window_max;
    const auto r = heatbind::solve_two_body(spec(m), scheme(s), opts);
    *out = {r.energy, r.bracket_lo, r.bracket_hi, r.residual, r.iterations};
  });
}
hb_status hb_flow_curves(const hb_manifold* m, const hb_scheme* s, const double* energies,
                         size_t n_energies, const hb_torus_mode* modes, size_t n_modes,
                         double* omega, double* domega_dE) {
  return guarded([&] {
    need(energies, "energies");
    need(modes, "modes");
    need(omega, "omega");
    need(domega_dE, "domega_dE");
    std::vector<heatbind::TorusMode> mode_list;
    for (size_t i = 0; i < n_modes; ++i) mode_list.push_back(to_mode(modes[i]));
    const auto curves = heatbind::flow_curves(
        spec(m), scheme(s), std::span<const double>(energies, n_energies), mode_list);
    for (size_t k = 0; k < curves.size(); ++k) {
      for (size_t i = 0; i < n_energies; ++i) {
        omega[k * n_energies + i] = curves[k].samples[i].omega;
        domega_dE[k * n_energies + i] = curves[k].samples[i].domega_dE;
      }
    }
  });
}
hb_status hb_domega_dE_check(const hb_manifold* m, const hb_scheme* s, double energy,
                             double* finite_difference, double* integral) {
  return guarded([&] {
    need(finite_difference, "finite_difference");
    need(integral, "integral");
    const auto c = heatbind::domega_dE_check(spec(m), scheme(s), energy);
    *finite_difference = c.finite_difference;
    *integral = c.integral;
  });
}
hb_status hb_nbody_upper_bound(int n, const hb_manifold* m, const hb_scheme* s, double* out) {
  return scalar(out, [&] { return heatbind::nbody_upper_bound(n, spec(m), scheme(s)); });
}
hb_status hb_nbody_bound_from_binding(int n, double volume, double binding, double* out) {
  return scalar(out, [=] { return heatbind::nbody_bound_from_binding(n, volume, binding); });
}
hb_status hb_hyperbolic_estar(double radius, double mu2, int printed_shift, hb_estar* out) {
  return guarded([&] {
    need(out, "out");
    const auto r = heatbind::hyperbolic_estar(
        radius, mu2,
        printed_shift ? heatbind::HyperbolicShift::Printed : heatbind::HyperbolicShift::Dimensional);
    *out = {r.energy, r.shifted, r.shift, r.residual, r.iterations};
  });
}
hb_status hb_divergence_demo(const hb_manifold* m, double energy, const double* cutoffs,
                             size_t n_cutoffs, double* values, hb_linear_fit* fit) {
  return guarded([&] {
    need(cutoffs, "cutoffs");
    need(values, "values");
    const auto d = heatbind::divergence_demo(spec(m), energy,
                                             std::span<const double>(cutoffs, n_cutoffs));
    for (size_t i = 0; i < d.points.size(); ++i) values[i] = d.points[i].value;
    if (fit) *fit = {d.coefficient, d.intercept, d.r_squared};
  });
}

hb_status hb_kdq(int dimension, double q, double* out) {
  return scalar(out, [=] { return heatbind::kdq(dimension, q); });
}
hb_status hb_meanfield_bound_solve(int n, double mu2, double aubin, hb_meanfield_bound* out) {
  return guarded([&] {
    need(out, "out");
    heatbind::MeanFieldProblem p;
    p.n = n;
    p.mu2 = mu2;
    p.aubin = aubin;
    const auto r = heatbind::meanfield_bound(p);
    *out = {r.log_ratio, r.stated_log_ratio, r.iterations, r.degenerate_aubin ? 1 : 0,
            r.below_recommended_n ? 1 : 0};
  });
}

namespace {
hb_meanfield_residual to_c(const heatbind::MeanFieldResidual& r) {
  return {r.lhs,           r.rhs,           r.residual,      r.kinetic,
          r.kinetic_ratio, r.quartic_overlap, r.linear_overlap};
}
}  // namespace

hb_status hb_meanfield_residual_radial(double spacing, const double* u, const double* psi,
                                       size_t count, int n, double mu2, double energy,
                                       hb_meanfield_residual* out) {
  return guarded([&] {
    need(u, "u");
    need(out, "out");
    heatbind::RadialProfile pu{spacing, std::vector<double>(u, u + count)};
    heatbind::RadialProfile pp;
    if (psi) pp = {spacing, std::vector<double>(psi, psi + count)};
    *out = to_c(heatbind::meanfield_residual(pu, psi ? &pp : nullptr, n, mu2, energy));
  });
}
hb_status hb_meanfield_residual_torus(double length, size_t points, const double* u,
                                      const double* psi, int n, double mu2, double energy,
                                      hb_meanfield_residual* out) {
  return guarded([&] {
    need(u, "u");
    need(out, "out");
    const size_t count = points * points;
    heatbind::PeriodicGridProfile pu{length, points, std::vector<double>(u, u + count)};
    heatbind::PeriodicGridProfile pp;
    if (psi) pp = {length, points, std::vector<double>(psi, psi + count)};
    *out = to_c(heatbind::meanfield_residual(pu, psi ? &pp : nullptr, n, mu2, energy));
  });
}
hb_status hb_gaussian_radial_profile(double width, double spacing, double r_max, double* values,
                                     size_t* count) {
  return guarded([&] {
    need(count, "count");
    const auto p = heatbind::gaussian_radial_profile(width, spacing, r_max);
    if (values) {
      heatbind::require(*count >= p.values.size(), "output buffer too small");
      std::copy(p.values.begin(), p.values.end(), values);
    }
    *count = p.values.size();
  });
}
hb_status hb_gaussian_torus_profile(double length, size_t points, double width, double* values) {
  return guarded([&] {
    need(values, "values");
    const auto p = heatbind::gaussian_torus_profile(length, points, width);
    std::copy(p.values.begin(), p.values.end(), values);
  });
}

hb_status hb_exact_ground_energy_1d(int n, double lambda, double* out) {
  return scalar(out, [=] { return heatbind::onedim::exact_ground_energy(n, lambda); });
}
hb_status hb_hartree_ground_energy_1d(int n, double lambda, double* out) {
  return scalar(out, [=] { return heatbind::onedim::hartree_ground_energy(n, lambda); });
}
hb_status hb_hartree_profile_1d(int n, double lambda, double x, double* out) {
  return scalar(out, [=] { return heatbind::onedim::hartree_profile(n, lambda, x); });
}
hb_status hb_sobolev_1d(double q, double* out) {
  return scalar(out, [=] { return heatbind::onedim::sobolev_1d(q); });
}
hb_status hb_two_body_phi_1d(double lambda, double energy, int verify, double* out) {
  return scalar(out, [=] { return heatbind::onedim::two_body_phi_1d(lambda, energy, verify != 0); });
}
hb_status hb_two_body_zero_1d(double lambda, double* out) {
  return scalar(out, [=] { return heatbind::onedim::two_body_zero_1d(lambda).root; });
}
hb_status hb_meanfield_1d_solve(int n, double lambda, hb_meanfield_1d* out) {
  return guarded([&] {
    need(out, "out");
    const auto r = heatbind::onedim::meanfield_1d_solve(n, lambda);
    *out = {r.energy, r.z_star, r.b};
  });
}

}  // extern "C"
