#ifndef HEATBIND_H
#define HEATBIND_H

/*
 * C interface to the heatbind library. Every function returns an hb_status;
 * results are written through out-pointers. On failure hb_last_error()
 * returns a message for the calling thread that stays valid until the next
 * call into the library on that thread.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define HB_API __declspec(dllexport)
#else
#define HB_API __attribute__((visibility("default")))
#endif

typedef enum hb_status {
  HB_OK = 0,
  HB_INVALID_ARGUMENT = 1,
  HB_NUMERICAL = 2,
  HB_IO = 3,
  HB_INTERNAL = 4
} hb_status;

typedef struct hb_manifold hb_manifold;
typedef struct hb_scheme hb_scheme;

/* Message of the last failed call on this thread; empty after a success. */
HB_API const char* hb_last_error(void);
HB_API size_t hb_thread_cap(void);

/* manifolds */
HB_API hb_status hb_manifold_plane(hb_manifold** out);
HB_API hb_status hb_manifold_torus(double length, hb_manifold** out);
HB_API hb_status hb_manifold_sphere(double radius, hb_manifold** out);
HB_API hb_status hb_manifold_hyperbolic(double radius, hb_manifold** out);
HB_API hb_status hb_manifold_line(hb_manifold** out);
HB_API void hb_manifold_free(hb_manifold* m);
/* Writes at most capacity bytes including the terminating zero. */
HB_API hb_status hb_manifold_name(const hb_manifold* m, char* buffer, size_t capacity);
HB_API hb_status hb_manifold_volume(const hb_manifold* m, double* out);

HB_API hb_status hb_heat_kernel(const hb_manifold* m, double t, double distance, double* out);
HB_API hb_status hb_heat_kernel_xy(const hb_manifold* m, double t, double dx, double dy,
                                   double* out);
HB_API hb_status hb_heat_trace(const hb_manifold* m, double s, double* out);
HB_API hb_status hb_heat_trace_excess(const hb_manifold* m, double s, double* out);
HB_API hb_status hb_semigroup_residual(const hb_manifold* m, double t1, double t2,
                                       double distance, double* out);
HB_API hb_status hb_stochastic_completeness_residual(const hb_manifold* m, double t,
                                                     double* out);
HB_API hb_status hb_short_time_u1(const hb_manifold* m, double* out);
HB_API hb_status hb_cheeger_yau_ratio(double t, double distance, double length, double* out);
HB_API hb_status hb_torus_kernel_images(double length, double t, double dx, double dy,
                                        double* out);
HB_API hb_status hb_torus_kernel_spectral(double length, double t, double dx, double dy,
                                          double* out);
HB_API hb_status hb_write_spectral_basis_csv(const hb_manifold* m, double reference_time,
                                             double rel_tol, const char* path);

/* renormalization */
HB_API hb_status hb_scheme_bound_state(double mu2, hb_scheme** out);
HB_API hb_status hb_scheme_coupling(double scale, double lambda_r, hb_scheme** out);
HB_API void hb_scheme_free(hb_scheme* s);
HB_API hb_status hb_scheme_mu2(const hb_scheme* s, double* out);
HB_API hb_status hb_scheme_log_mu2(const hb_scheme* s, double* out);
/* is_coupling receives 1 for Coupling(M, lambda_R); scale and lambda_r are then set. */
HB_API hb_status hb_scheme_coupling_parameters(const hb_scheme* s, int* is_coupling,
                                               double* scale, double* lambda_r);
/* has_target = 0 uses the default scale. */
HB_API hb_status hb_scheme_convert(const hb_scheme* s, int has_target, double target_scale,
                                   hb_scheme** out);
HB_API hb_status hb_bare_coupling(double cutoff, double mu2, double* out);
HB_API hb_status hb_renormalized_coupling(double cutoff, double mu2, double scale,
                                          double* out);
HB_API hb_status hb_beta(double lambda_r, double* out);
HB_API hb_status hb_flow(double lambda_r, double gamma, double* out);
HB_API hb_status hb_flow_ode(double lambda_r, double gamma, double* out);

/* two-body principal operator */
typedef struct hb_bound_state {
  double energy;
  double bracket_lo;
  double bracket_hi;
  double residual;
  int iterations;
} hb_bound_state;

typedef struct hb_torus_mode {
  int qx;
  int qy;
} hb_torus_mode;

HB_API hb_status hb_omega0(const hb_manifold* m, const hb_scheme* s, double energy,
                           double* out);
HB_API hb_status hb_omega_mode(double length, const hb_scheme* s, double energy,
                               hb_torus_mode mode, double* out);
/* window_min and window_max bound |E| / mu^2; pass 0 for the defaults. */
HB_API hb_status hb_solve_two_body(const hb_manifold* m, const hb_scheme* s, double window_min,
                                   double window_max, hb_bound_state* out);
/* omega and domega_dE are mode-major arrays of n_modes * n_energies entries. */
HB_API hb_status hb_flow_curves(const hb_manifold* m, const hb_scheme* s,
                                const double* energies, size_t n_energies,
                                const hb_torus_mode* modes, size_t n_modes, double* omega,
                                double* domega_dE);
HB_API hb_status hb_domega_dE_check(const hb_manifold* m, const hb_scheme* s, double energy,
                                    double* finite_difference, double* integral);
HB_API hb_status hb_nbody_upper_bound(int n, const hb_manifold* m, const hb_scheme* s,
                                      double* out);
HB_API hb_status hb_nbody_bound_from_binding(int n, double volume, double binding,
                                             double* out);

typedef struct hb_estar {
  double energy;
  double shifted;
  double shift;
  double residual;
  int iterations;
} hb_estar;

/* printed_shift = 1 selects s = R^2/2 instead of 1/(2 R^2). */
HB_API hb_status hb_hyperbolic_estar(double radius, double mu2, int printed_shift,
                                     hb_estar* out);

typedef struct hb_linear_fit {
  double coefficient;
  double intercept;
  double r_squared;
} hb_linear_fit;

/* values receives I(eps) for each cutoff. */
HB_API hb_status hb_divergence_demo(const hb_manifold* m, double energy, const double* cutoffs,
                                    size_t n_cutoffs, double* values, hb_linear_fit* fit);

/* mean-field bound in two dimensions */
HB_API hb_status hb_kdq(int dimension, double q, double* out);

typedef struct hb_meanfield_bound {
  double log_ratio;
  double stated_log_ratio;
  int iterations;
  int degenerate_aubin;
  int below_recommended_n;
} hb_meanfield_bound;

HB_API hb_status hb_meanfield_bound_solve(int n, double mu2, double aubin,
                                          hb_meanfield_bound* out);

typedef struct hb_meanfield_residual {
  double lhs;
  double rhs;
  double residual;
  double kinetic;
  double kinetic_ratio;
  double quartic_overlap;
  double linear_overlap;
} hb_meanfield_residual;

/* psi may be NULL for the Cauchy-Schwarz saturating choice. */
HB_API hb_status hb_meanfield_residual_radial(double spacing, const double* u, const double* psi,
                                              size_t count, int n, double mu2, double energy,
                                              hb_meanfield_residual* out);
HB_API hb_status hb_meanfield_residual_torus(double length, size_t points, const double* u,
                                             const double* psi, int n, double mu2,
                                             double energy, hb_meanfield_residual* out);
/* Two-call pattern: with values == NULL only *count is set. */
HB_API hb_status hb_gaussian_radial_profile(double width, double spacing, double r_max,
                                            double* values, size_t* count);
/* values must hold points * points entries. */
HB_API hb_status hb_gaussian_torus_profile(double length, size_t points, double width,
                                           double* values);

/* one dimension */
HB_API hb_status hb_exact_ground_energy_1d(int n, double lambda, double* out);
HB_API hb_status hb_hartree_ground_energy_1d(int n, double lambda, double* out);
HB_API hb_status hb_hartree_profile_1d(int n, double lambda, double x, double* out);
HB_API hb_status hb_sobolev_1d(double q, double* out);
HB_API hb_status hb_two_body_phi_1d(double lambda, double energy, int verify, double* out);
HB_API hb_status hb_two_body_zero_1d(double lambda, double* out);

typedef struct hb_meanfield_1d {
  double energy;
  double z_star;
  double b;
} hb_meanfield_1d;

HB_API hb_status hb_meanfield_1d_solve(int n, double lambda, hb_meanfield_1d* out);

#ifdef __cplusplus
}
#endif

#endif
