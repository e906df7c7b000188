#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

namespace hbcli {

namespace {

enum class Kind { Number, Integer, Text, Flag, IntegerList, NumberList };

struct Field {
  const char* key;
  Kind kind;
  const char* help;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"command", Kind::Text, "subcommand to run"},
      {"manifold", Kind::Text, "plane, torus, sphere, hyperbolic or line"},
      {"length", Kind::Number, "torus side length L"},
      {"radius", Kind::Number, "sphere or hyperbolic radius R"},
      {"mu2", Kind::Number, "bound-state scheme: flat binding scale mu^2"},
      {"lambda-r", Kind::Number, "coupling scheme: renormalized coupling lambda_R"},
      {"scale", Kind::Number, "coupling scheme: renormalization scale M (default 1)"},
      {"emin", Kind::Number, "lowest energy of the flow grid"},
      {"emax", Kind::Number, "highest energy of the flow grid (< 0)"},
      {"points", Kind::Integer, "number of energy grid points"},
      {"modes", Kind::Integer, "number of torus modes in the flow output"},
      {"t", Kind::Number, "heat-kernel time"},
      {"distance", Kind::Number, "geodesic distance for the heat kernel"},
      {"spectral-basis", Kind::Text, "also write the spectral basis CSV to this path"},
      {"n", Kind::IntegerList, "particle number(s), comma separated"},
      {"lambda", Kind::Number, "coupling (rg: lambda_R; onedim: 1D coupling)"},
      {"gamma", Kind::Number, "scale factor for the rg flow"},
      {"aubin", Kind::Number, "Aubin constant A_1(0) for compact surfaces"},
      {"energy", Kind::Number, "energy E < 0"},
      {"profile", Kind::Text, "radial profile CSV with columns r,u"},
      {"width", Kind::Number, "Gaussian profile width"},
      {"grid-points", Kind::Integer, "torus profile grid points per side"},
      {"cutoffs", Kind::NumberList, "decreasing cutoff list, comma separated"},
      {"printed-shift", Kind::Flag, "hyperbolic: use the shift R^2/2 instead of 1/(2R^2)"},
      {"output", Kind::Text, "output path (default: standard output)"},
      {"window-min", Kind::Number, "smallest |E|/mu^2 searched by the bound-state solver"},
      {"window-max", Kind::Number, "largest |E|/mu^2 searched by the bound-state solver"},
      {"rel-tol", Kind::Number, "relative truncation tolerance of the spectral basis"},
  };
  return table;
}

const Field* find_field(const std::string& key) {
  for (const auto& f : fields())
    if (key == f.key) return &f;
  return nullptr;
}

class Collector {
 public:
  void add(std::string message) { messages_.push_back(std::move(message)); }
  bool empty() const { return messages_.empty(); }
  [[noreturn]] void raise() { throw ConfigError(messages_); }

 private:
  std::vector<std::string> messages_;
};

bool is_number(const nlohmann::json& v) { return v.is_number(); }

bool is_integer(const nlohmann::json& v) {
  if (v.is_number_integer()) return true;
  return v.is_number_float() && std::floor(v.get<double>()) == v.get<double>();
}

void check_type(const Field& f, const nlohmann::json& v, Collector& errors) {
  bool ok = true;
  switch (f.kind) {
    case Kind::Number:
      ok = is_number(v);
      break;
    case Kind::Integer:
      ok = is_integer(v);
      break;
    case Kind::Text:
      ok = v.is_string();
      break;
    case Kind::Flag:
      ok = v.is_boolean();
      break;
    case Kind::IntegerList:
      ok = is_integer(v) || (v.is_array() && std::all_of(v.begin(), v.end(), is_integer));
      break;
    case Kind::NumberList:
      ok = is_number(v) || (v.is_array() && std::all_of(v.begin(), v.end(), is_number));
      break;
  }
  if (!ok) errors.add(std::string("'") + f.key + "' has the wrong type");
}

template <class T>
std::vector<T> as_list(const nlohmann::json& v) {
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

bool needs_manifold(const std::string& c) {
  return c == "heat" || c == "twobody" || c == "flow" || c == "nbody-bound" ||
         c == "meanfield2d" || c == "divergence";
}

bool needs_scheme(const std::string& c) {
  return c == "twobody" || c == "flow" || c == "nbody-bound";
}

void validate(const RunConfig& c, Collector& errors) {
  const auto& known = commands();
  if (c.command.empty()) {
    errors.add("missing command; expected one of heat, twobody, flow, rg, meanfield2d, onedim, "
               "nbody-bound, hyperbolic, divergence");
    return;
  }
  if (std::find(known.begin(), known.end(), c.command) == known.end()) {
    errors.add("unknown command '" + c.command + "'");
    return;
  }
  const std::string& cmd = c.command;

  if (needs_manifold(cmd)) {
    const std::string& m = c.manifold;
    if (m == "torus") {
      if (!c.length) errors.add("torus needs --length");
      else if (!(*c.length > 0.0)) errors.add("--length must be positive");
    } else if (m == "sphere" || m == "hyperbolic") {
      if (!c.radius) errors.add(m + " needs --radius");
      else if (!(*c.radius > 0.0)) errors.add("--radius must be positive");
    } else if (m != "plane" && m != "line") {
      errors.add("unknown manifold '" + m + "'");
    }
    if (m == "line") errors.add("the line is handled by the onedim command");
  }

  if (needs_scheme(cmd) || (cmd == "meanfield2d" && c.has_scheme())) {
    if (c.mu2 && c.lambda_r) {
      errors.add("conflicting renormalization schemes: give either --mu2 or --lambda-r, not both");
    } else if (!c.has_scheme()) {
      errors.add("missing renormalization scheme: pass --mu2 (bound state) or --lambda-r with "
                 "--scale (coupling)");
    }
  }
  if (c.mu2 && !(*c.mu2 > 0.0)) errors.add("--mu2 must be positive");
  if (c.lambda_r && !(*c.lambda_r > 0.0)) errors.add("--lambda-r must be positive");
  if (!(c.scale > 0.0)) errors.add("--scale must be positive");
  if (!(c.window_min > 0.0)) errors.add("--window-min must be positive");
  if (!(c.window_max > c.window_min)) errors.add("--window-max must exceed --window-min");
  if (!(c.rel_tol > 0.0)) errors.add("--rel-tol must be positive");

  if (cmd == "heat") {
    if (!c.t) errors.add("heat needs --t");
    else if (!(*c.t > 0.0)) errors.add("--t must be positive");
    if (!(c.distance >= 0.0)) errors.add("--distance must be non-negative");
  }
  if (cmd == "flow") {
    if (!(c.emin < c.emax)) errors.add("energy grid must satisfy --emin < --emax");
    if (!(c.emax < 0.0)) errors.add("--emax must be negative");
    if (c.points < 2) errors.add("--points must be at least 2");
    if (c.modes < 1) errors.add("--modes must be at least 1");
    if (c.modes > 1 && c.manifold != "torus")
      errors.add("excited modes (--modes > 1) are available on the torus only");
  }
  if (cmd == "rg") {
    if (!c.lambda) errors.add("rg needs --lambda");
    else if (!(*c.lambda > 0.0)) errors.add("--lambda must be positive");
    if (!c.gamma) errors.add("rg needs --gamma");
    else if (!(*c.gamma > 0.0)) errors.add("--gamma must be positive");
  }
  if (cmd == "onedim") {
    if (!c.lambda) errors.add("onedim needs --lambda");
    else if (!(*c.lambda > 0.0)) errors.add("--lambda must be positive");
    if (c.n.empty()) errors.add("onedim needs --n");
    for (int k : c.n)
      if (k < 2) errors.add("onedim particle numbers must be at least 2");
  }
  if (cmd == "nbody-bound") {
    if (c.n.empty()) errors.add("nbody-bound needs --n");
    for (int k : c.n)
      if (k < 2) errors.add("nbody-bound particle numbers must be at least 2");
  }
  if (cmd == "meanfield2d") {
    if (c.n.empty()) errors.add("meanfield2d needs --n");
    for (int k : c.n)
      if (k < 3) errors.add("meanfield2d particle numbers must be at least 3");
    if (c.lambda_r) errors.add("meanfield2d takes the bound-state scheme --mu2 only");
    if (!(c.aubin >= 0.0)) errors.add("--aubin must be non-negative");
    if ((c.manifold == "plane" || c.manifold == "hyperbolic") && c.aubin != 0.0)
      errors.add("the Aubin constant vanishes on the " + c.manifold + "; drop --aubin");
    if (c.energy && !(*c.energy < 0.0)) errors.add("--energy must be negative");
    if (!(c.width > 0.0)) errors.add("--width must be positive");
    if (c.grid_points < 8 || c.grid_points % 2 != 0)
      errors.add("--grid-points must be an even number of at least 8");
    if (!c.profile.empty() && c.manifold != "plane")
      errors.add("--profile is a radial profile and needs --manifold plane");
  }
  if (cmd == "hyperbolic") {
    if (!c.radius) errors.add("hyperbolic needs --radius");
    else if (!(*c.radius > 0.0)) errors.add("--radius must be positive");
    if (!c.mu2) errors.add("hyperbolic needs --mu2");
  }
  if (cmd == "divergence") {
    if (!c.energy) errors.add("divergence needs --energy");
    else if (!(*c.energy < 0.0)) errors.add("--energy must be negative");
    if (c.cutoffs.size() < 2) errors.add("divergence needs at least two --cutoffs");
    for (std::size_t i = 0; i < c.cutoffs.size(); ++i) {
      if (!(c.cutoffs[i] > 0.0)) errors.add("cutoffs must be positive");
      if (i > 0 && !(c.cutoffs[i] < c.cutoffs[i - 1]))
        errors.add("cutoffs must be strictly decreasing");
    }
  }
}

}  // namespace

namespace {
std::string join_messages(const std::vector<std::string>& m) {
  std::string s;
  for (const auto& x : m) {
    if (!s.empty()) s += "; ";
    s += x;
  }
  return s;
}
}  // namespace

ConfigError::ConfigError(std::vector<std::string> messages)
    : std::runtime_error(join_messages(messages)), messages_(std::move(messages)) {}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> list = {"heat",        "twobody",     "flow",
                                                "rg",          "meanfield2d", "onedim",
                                                "nbody-bound", "hyperbolic",  "divergence"};
  return list;
}

RunConfig config_from_json(const nlohmann::json& j) {
  Collector errors;
  if (!j.is_object()) {
    errors.add("configuration must be a JSON object");
    errors.raise();
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "schema_version") continue;
    const Field* f = find_field(it.key());
    if (!f) errors.add("unknown configuration key '" + it.key() + "'");
    else check_type(*f, it.value(), errors);
  }
  if (!errors.empty()) errors.raise();

  RunConfig c;
  auto num = [&](const char* k, auto& dst) {
    if (j.contains(k)) dst = j.at(k).get<double>();
  };
  auto integer = [&](const char* k, int& dst) {
    if (j.contains(k)) dst = static_cast<int>(j.at(k).get<double>());
  };
  auto text = [&](const char* k, std::string& dst) {
    if (j.contains(k)) dst = j.at(k).get<std::string>();
  };
  text("command", c.command);
  text("manifold", c.manifold);
  num("length", c.length);
  num("radius", c.radius);
  num("mu2", c.mu2);
  num("lambda-r", c.lambda_r);
  num("scale", c.scale);
  num("emin", c.emin);
  num("emax", c.emax);
  integer("points", c.points);
  integer("modes", c.modes);
  num("t", c.t);
  num("distance", c.distance);
  text("spectral-basis", c.spectral_basis);
  if (j.contains("n")) {
    for (double v : as_list<double>(j.at("n"))) c.n.push_back(static_cast<int>(v));
  }
  num("lambda", c.lambda);
  num("gamma", c.gamma);
  num("aubin", c.aubin);
  num("energy", c.energy);
  text("profile", c.profile);
  num("width", c.width);
  integer("grid-points", c.grid_points);
  if (j.contains("cutoffs")) c.cutoffs = as_list<double>(j.at("cutoffs"));
  if (j.contains("printed-shift")) c.printed_shift = j.at("printed-shift").get<bool>();
  text("output", c.output);
  num("window-min", c.window_min);
  num("window-max", c.window_max);
  num("rel-tol", c.rel_tol);

  if (c.command == "divergence" && c.cutoffs.empty())
    c.cutoffs = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

  validate(c, errors);
  if (!errors.empty()) errors.raise();
  return c;
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = c.command;
  j["manifold"] = c.manifold;
  if (c.length) j["length"] = *c.length;
  if (c.radius) j["radius"] = *c.radius;
  if (c.mu2) j["mu2"] = *c.mu2;
  if (c.lambda_r) j["lambda-r"] = *c.lambda_r;
  j["scale"] = c.scale;
  j["emin"] = c.emin;
  j["emax"] = c.emax;
  j["points"] = c.points;
  j["modes"] = c.modes;
  if (c.t) j["t"] = *c.t;
  j["distance"] = c.distance;
  if (!c.spectral_basis.empty()) j["spectral-basis"] = c.spectral_basis;
  if (!c.n.empty()) j["n"] = c.n;
  if (c.lambda) j["lambda"] = *c.lambda;
  if (c.gamma) j["gamma"] = *c.gamma;
  j["aubin"] = c.aubin;
  if (c.energy) j["energy"] = *c.energy;
  if (!c.profile.empty()) j["profile"] = c.profile;
  j["width"] = c.width;
  j["grid-points"] = c.grid_points;
  if (!c.cutoffs.empty()) j["cutoffs"] = c.cutoffs;
  j["printed-shift"] = c.printed_shift;
  if (!c.output.empty()) j["output"] = c.output;
  j["window-min"] = c.window_min;
  j["window-max"] = c.window_max;
  j["rel-tol"] = c.rel_tol;
  return j;
}

RunConfig parse_config(int argc, const char* const* argv) {
  CLI::App app{"heatbind: heat-kernel renormalization of two-body contact interactions"};
  app.allow_extras(false);
  nlohmann::json flags = nlohmann::json::object();
  std::string config_path;
  app.add_option("--config", config_path, "JSON configuration file; flags override it");
  app.add_option_function<std::string>(
      "command", [&flags](const std::string& v) { flags["command"] = v; },
      "heat | twobody | flow | rg | meanfield2d | onedim | nbody-bound | hyperbolic | divergence");
  for (const auto& f : fields()) {
    if (std::string(f.key) == "command") continue;
    const std::string name = std::string("--") + f.key;
    const std::string key = f.key;
    switch (f.kind) {
      case Kind::Number:
        app.add_option_function<double>(
            name, [&flags, key](const double& v) { flags[key] = v; }, f.help);
        break;
      case Kind::Integer:
        app.add_option_function<int>(
            name, [&flags, key](const int& v) { flags[key] = v; }, f.help);
        break;
      case Kind::Text:
        app.add_option_function<std::string>(
            name, [&flags, key](const std::string& v) { flags[key] = v; }, f.help);
        break;
      case Kind::Flag:
        app.add_flag_function(
            name, [&flags, key](std::int64_t count) { flags[key] = count > 0; }, f.help);
        break;
      case Kind::IntegerList:
        app.add_option_function<std::vector<int>>(
               name, [&flags, key](const std::vector<int>& v) { flags[key] = v; }, f.help)
            ->delimiter(',');
        break;
      case Kind::NumberList:
        app.add_option_function<std::vector<double>>(
               name, [&flags, key](const std::vector<double>& v) { flags[key] = v; }, f.help)
            ->delimiter(',');
        break;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw ConfigError({e.what()});
  }

  nlohmann::json merged = nlohmann::json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError({"cannot open config file '" + config_path + "'"});
    try {
      merged = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError({"malformed JSON in '" + config_path + "': " + e.what()});
    }
    if (!merged.is_object())
      throw ConfigError({"config file '" + config_path + "' must hold a JSON object"});
  }
  merged.update(flags);
  return config_from_json(merged);
}

}  // namespace hbcli
