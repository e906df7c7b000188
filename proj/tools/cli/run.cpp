#include "run.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <heatbind/heatbind.h>

#include "output.hpp"

namespace hbcli {

namespace {

constexpr double kPi = 3.14159265358979323846;

class ApiFailure : public std::runtime_error {
 public:
  ApiFailure(hb_status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  hb_status status() const noexcept { return status_; }

 private:
  hb_status status_;
};

void check(hb_status status) {
  if (status != HB_OK) throw ApiFailure(status, hb_last_error());
}

struct ManifoldDeleter {
  void operator()(hb_manifold* m) const { hb_manifold_free(m); }
};
struct SchemeDeleter {
  void operator()(hb_scheme* s) const { hb_scheme_free(s); }
};
using Manifold = std::unique_ptr<hb_manifold, ManifoldDeleter>;
using Scheme = std::unique_ptr<hb_scheme, SchemeDeleter>;

Manifold make_manifold(const RunConfig& c) {
  hb_manifold* m = nullptr;
  if (c.manifold == "plane") check(hb_manifold_plane(&m));
  else if (c.manifold == "torus") check(hb_manifold_torus(*c.length, &m));
  else if (c.manifold == "sphere") check(hb_manifold_sphere(*c.radius, &m));
  else if (c.manifold == "hyperbolic") check(hb_manifold_hyperbolic(*c.radius, &m));
  else check(hb_manifold_line(&m));
  return Manifold(m);
}

Scheme make_scheme(const RunConfig& c) {
  hb_scheme* s = nullptr;
  if (c.mu2) check(hb_scheme_bound_state(*c.mu2, &s));
  else check(hb_scheme_coupling(c.scale, *c.lambda_r, &s));
  return Scheme(s);
}

nlohmann::json manifold_json(const RunConfig& c) {
  nlohmann::json j;
  j["kind"] = c.manifold;
  if (c.manifold == "torus") j["length"] = *c.length;
  if (c.manifold == "sphere" || c.manifold == "hyperbolic") j["radius"] = *c.radius;
  return j;
}

nlohmann::json scheme_json(const RunConfig& c, const hb_scheme* s) {
  nlohmann::json j;
  double mu2 = 0.0;
  check(hb_scheme_mu2(s, &mu2));
  if (c.mu2) {
    j["kind"] = "bound_state";
  } else {
    j["kind"] = "coupling";
    j["scale"] = c.scale;
    j["lambda_r"] = *c.lambda_r;
  }
  j["mu2"] = mu2;
  return j;
}

nlohmann::json envelope(const RunConfig& c) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = c.command;
  return j;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string csv(const CsvTable& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

/// Distinct torus mode classes ordered by |q|^2: (0,0), (1,0), (1,1), (2,0), ...
std::vector<hb_torus_mode> torus_modes(int count) {
  std::vector<hb_torus_mode> modes;
  for (int norm = 0; static_cast<int>(modes.size()) < count; ++norm) {
    for (int qx = 0; qx * qx <= norm && static_cast<int>(modes.size()) < count; ++qx) {
      for (int qy = 0; qy <= qx; ++qy) {
        if (qx * qx + qy * qy == norm) modes.push_back({qx, qy});
      }
    }
  }
  modes.resize(count);
  return modes;
}

std::string run_heat(const RunConfig& c) {
  auto m = make_manifold(c);
  auto j = envelope(c);
  j["manifold"] = manifold_json(c);
  j["t"] = *c.t;
  j["distance"] = c.distance;
  double kernel = 0.0;
  check(hb_heat_kernel(m.get(), *c.t, c.distance, &kernel));
  j["kernel"] = kernel;
  if (c.manifold == "torus" || c.manifold == "sphere") {
    double trace = 0.0, excess = 0.0, volume = 0.0;
    check(hb_heat_trace(m.get(), *c.t, &trace));
    check(hb_heat_trace_excess(m.get(), *c.t, &excess));
    check(hb_manifold_volume(m.get(), &volume));
    j["trace"] = trace;
    j["trace_excess"] = excess;
    j["volume"] = volume;
    if (!c.spectral_basis.empty()) {
      check(hb_write_spectral_basis_csv(m.get(), *c.t, c.rel_tol, c.spectral_basis.c_str()));
      j["spectral_basis"] = c.spectral_basis;
    }
  } else if (!c.spectral_basis.empty()) {
    throw ApiFailure(HB_INVALID_ARGUMENT, "spectral basis needs a compact manifold");
  }
  return dump(j);
}

std::string run_twobody(const RunConfig& c) {
  auto m = make_manifold(c);
  auto s = make_scheme(c);
  hb_bound_state r{};
  check(hb_solve_two_body(m.get(), s.get(), c.window_min, c.window_max, &r));
  auto j = envelope(c);
  j["manifold"] = manifold_json(c);
  j["scheme"] = scheme_json(c, s.get());
  j["E_gr"] = r.energy;
  j["bracket_lo"] = r.bracket_lo;
  j["bracket_hi"] = r.bracket_hi;
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  return dump(j);
}

std::string run_flow(const RunConfig& c) {
  auto m = make_manifold(c);
  auto s = make_scheme(c);
  const auto n = static_cast<std::size_t>(c.points);
  std::vector<double> energies(n);
  for (std::size_t i = 0; i < n; ++i)
    energies[i] = c.emin + (c.emax - c.emin) * static_cast<double>(i) / static_cast<double>(n - 1);
  energies.back() = c.emax;
  const auto modes = torus_modes(c.modes);
  std::vector<double> omega(n * modes.size()), slope(n * modes.size());
  check(hb_flow_curves(m.get(), s.get(), energies.data(), n, modes.data(), modes.size(),
                       omega.data(), slope.data()));
  CsvTable t;
  t.header = {"E", "omega", "domega_dE", "mode"};
  for (std::size_t k = 0; k < modes.size(); ++k)
    for (std::size_t i = 0; i < n; ++i)
      t.rows.push_back({energies[i], omega[k * n + i], slope[k * n + i], static_cast<double>(k)});
  return csv(t);
}

std::string run_rg(const RunConfig& c) {
  double flowed = 0.0, flowed_ode = 0.0, beta = 0.0, beta_flowed = 0.0;
  check(hb_flow(*c.lambda, *c.gamma, &flowed));
  check(hb_flow_ode(*c.lambda, *c.gamma, &flowed_ode));
  check(hb_beta(*c.lambda, &beta));
  check(hb_beta(flowed, &beta_flowed));
  auto j = envelope(c);
  j["lambda_r"] = *c.lambda;
  j["gamma"] = *c.gamma;
  j["flowed"] = flowed;
  j["flowed_ode"] = flowed_ode;
  j["beta"] = beta;
  j["beta_flowed"] = beta_flowed;
  return dump(j);
}

void read_radial_profile(const std::string& path, double& spacing, std::vector<double>& u) {
  std::ifstream in(path);
  if (!in) throw ApiFailure(HB_IO, "cannot open profile '" + path + "'");
  CsvTable t;
  try {
    t = read_csv(in);
  } catch (const std::exception& e) {
    throw ApiFailure(HB_INVALID_ARGUMENT, "profile '" + path + "': " + e.what());
  }
  if (t.header.size() != 2 || t.rows.size() < 3)
    throw ApiFailure(HB_INVALID_ARGUMENT,
                     "profile '" + path + "' needs columns r,u and at least three rows");
  spacing = t.rows[1][0] - t.rows[0][0];
  if (t.rows[0][0] != 0.0 || !(spacing > 0.0))
    throw ApiFailure(HB_INVALID_ARGUMENT, "profile grid must start at r = 0 and increase");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double expected = static_cast<double>(i) * spacing;
    if (std::abs(t.rows[i][0] - expected) > 1e-9 * std::max(1.0, expected))
      throw ApiFailure(HB_INVALID_ARGUMENT, "profile grid must be uniform");
    u.push_back(t.rows[i][1]);
  }
}

std::string run_meanfield2d(const RunConfig& c) {
  const double mu2 = c.mu2.value_or(1.0);
  auto j = envelope(c);
  j["manifold"] = manifold_json(c);
  j["mu2"] = mu2;
  j["aubin"] = c.aubin;
  nlohmann::json bounds = nlohmann::json::array();
  std::vector<double> xs, ys;
  for (int n : c.n) {
    hb_meanfield_bound b{};
    check(hb_meanfield_bound_solve(n, mu2, c.aubin, &b));
    bounds.push_back({{"n", n},
                      {"log_ratio", b.log_ratio},
                      {"stated_log_ratio", b.stated_log_ratio},
                      {"iterations", b.iterations},
                      {"degenerate_aubin", b.degenerate_aubin != 0},
                      {"below_recommended_n", b.below_recommended_n != 0}});
    xs.push_back(n);
    ys.push_back(b.log_ratio);
  }
  j["bounds"] = bounds;
  if (xs.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx > 0) j["slope"] = sxy / sxx;
  }

  if (c.energy) {
    const int n = c.n.front();
    hb_meanfield_residual r{};
    if (c.manifold == "torus") {
      const auto points = static_cast<std::size_t>(c.grid_points);
      std::vector<double> u(points * points);
      check(hb_gaussian_torus_profile(*c.length, points, c.width, u.data()));
      check(hb_meanfield_residual_torus(*c.length, points, u.data(), nullptr, n, mu2, *c.energy,
                                        &r));
      j["profile"] = {{"kind", "gaussian"}, {"width", c.width}, {"grid_points", c.grid_points}};
    } else if (c.manifold == "plane") {
      double spacing = 0.0;
      std::vector<double> u;
      if (!c.profile.empty()) {
        read_radial_profile(c.profile, spacing, u);
        j["profile"] = {{"kind", "file"}, {"path", c.profile}};
      } else {
        spacing = c.width / 100.0;
        std::size_t count = 0;
        check(hb_gaussian_radial_profile(c.width, spacing, 10.0 * c.width, nullptr, &count));
        u.resize(count);
        check(hb_gaussian_radial_profile(c.width, spacing, 10.0 * c.width, u.data(), &count));
        j["profile"] = {{"kind", "gaussian"}, {"width", c.width}};
      }
      check(hb_meanfield_residual_radial(spacing, u.data(), nullptr, u.size(), n, mu2, *c.energy,
                                         &r));
    } else {
      throw ApiFailure(HB_INVALID_ARGUMENT,
                       "profile residuals are available on the plane and the torus");
    }
    j["residual"] = {{"n", n},
                     {"energy", *c.energy},
                     {"lhs", r.lhs},
                     {"rhs", r.rhs},
                     {"residual", r.residual},
                     {"kinetic", r.kinetic},
                     {"kinetic_ratio", r.kinetic_ratio},
                     {"quartic_overlap", r.quartic_overlap},
                     {"linear_overlap", r.linear_overlap}};
  }
  return dump(j);
}

std::string run_onedim(const RunConfig& c) {
  CsvTable t;
  t.header = {"n", "exact", "hartree", "meanfield", "hartree_gap", "meanfield_gap"};
  for (int n : c.n) {
    double exact = 0.0, hartree = 0.0;
    check(hb_exact_ground_energy_1d(n, *c.lambda, &exact));
    check(hb_hartree_ground_energy_1d(n, *c.lambda, &hartree));
    double meanfield = std::nan("");
    if (n >= 3) {
      hb_meanfield_1d mf{};
      check(hb_meanfield_1d_solve(n, *c.lambda, &mf));
      meanfield = mf.energy;
    }
    t.rows.push_back({static_cast<double>(n), exact, hartree, meanfield, hartree / exact - 1.0,
                      meanfield / exact - 1.0});
  }
  return csv(t);
}

std::string run_nbody(const RunConfig& c) {
  auto m = make_manifold(c);
  auto s = make_scheme(c);
  double volume = 0.0;
  check(hb_manifold_volume(m.get(), &volume));
  hb_bound_state two{};
  check(hb_solve_two_body(m.get(), s.get(), c.window_min, c.window_max, &two));
  CsvTable t;
  t.header = {"n", "E2", "bound"};
  for (int n : c.n) {
    double bound = 0.0;
    check(hb_nbody_bound_from_binding(n, volume, -two.energy, &bound));
    t.rows.push_back({static_cast<double>(n), two.energy, bound});
  }
  return csv(t);
}

std::string run_hyperbolic(const RunConfig& c) {
  hb_estar r{};
  check(hb_hyperbolic_estar(*c.radius, *c.mu2, c.printed_shift ? 1 : 0, &r));
  auto j = envelope(c);
  j["radius"] = *c.radius;
  j["mu2"] = *c.mu2;
  j["shift_convention"] = c.printed_shift ? "printed" : "dimensional";
  j["E_star"] = r.energy;
  j["shifted"] = r.shifted;
  j["shift"] = r.shift;
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  return dump(j);
}

std::string run_divergence(const RunConfig& c) {
  auto m = make_manifold(c);
  std::vector<double> values(c.cutoffs.size());
  hb_linear_fit fit{};
  check(hb_divergence_demo(m.get(), *c.energy, c.cutoffs.data(), c.cutoffs.size(),
                           values.data(), &fit));
  auto j = envelope(c);
  j["manifold"] = manifold_json(c);
  j["energy"] = *c.energy;
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < values.size(); ++i)
    points.push_back({{"cutoff", c.cutoffs[i]}, {"value", values[i]}});
  j["points"] = points;
  j["coefficient"] = fit.coefficient;
  j["intercept"] = fit.intercept;
  j["r_squared"] = fit.r_squared;
  j["expected_coefficient"] = 1.0 / (4.0 * kPi);
  return dump(j);
}

std::string dispatch(const RunConfig& c) {
  const std::string& cmd = c.command;
  if (cmd == "heat") return run_heat(c);
  if (cmd == "twobody") return run_twobody(c);
  if (cmd == "flow") return run_flow(c);
  if (cmd == "rg") return run_rg(c);
  if (cmd == "meanfield2d") return run_meanfield2d(c);
  if (cmd == "onedim") return run_onedim(c);
  if (cmd == "nbody-bound") return run_nbody(c);
  if (cmd == "hyperbolic") return run_hyperbolic(c);
  if (cmd == "divergence") return run_divergence(c);
  throw ApiFailure(HB_INVALID_ARGUMENT, "unknown command '" + cmd + "'");
}

int report(std::ostream& err, int code, const char* kind, const std::vector<std::string>& messages) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["status"] = "error";
  j["kind"] = kind;
  j["exit_code"] = code;
  j["messages"] = messages;
  err << j.dump() << '\n';
  return code;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = dispatch(config);
  } catch (const ApiFailure& e) {
    switch (e.status()) {
      case HB_INVALID_ARGUMENT:
        return report(err, 1, "invalid_argument", {e.what()});
      case HB_IO:
        return report(err, 1, "io", {e.what()});
      case HB_NUMERICAL:
        return report(err, 2, "numerical", {e.what()});
      default:
        return report(err, 2, "internal", {e.what()});
    }
  }
  if (config.output.empty()) {
    out << text;
    out.flush();
    return 0;
  }
  std::ofstream file(config.output, std::ios::binary);
  file << text;
  file.close();
  if (!file) return report(err, 1, "io", {"cannot write '" + config.output + "'"});
  return 0;
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_config(argc, argv);
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const ConfigError& e) {
    return report(err, 1, "validation", e.messages());
  }
  return run(config, out, err);
}

}  // namespace hbcli
