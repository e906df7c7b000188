#pragma once

// Run configuration for the heatbind command-line tool: flags, an optional
// JSON config file (flags win), and validation that reports every problem.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace hbcli {

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string command;

  std::string manifold = "plane";
  std::optional<double> length;
  std::optional<double> radius;

  std::optional<double> mu2;
  std::optional<double> lambda_r;
  double scale = 1.0;

  double emin = -10.0;
  double emax = -0.1;
  int points = 200;
  int modes = 1;

  std::optional<double> t;
  double distance = 0.0;
  std::string spectral_basis;

  std::vector<int> n;
  std::optional<double> lambda;
  std::optional<double> gamma;

  double aubin = 0.0;
  std::optional<double> energy;
  std::string profile;
  double width = 0.2;
  int grid_points = 128;

  std::vector<double> cutoffs;
  bool printed_shift = false;

  std::string output;
  double window_min = 1e-6;
  double window_max = 1e6;
  double rel_tol = 1e-14;

  bool has_scheme() const { return mu2.has_value() || lambda_r.has_value(); }
};

/// Raised for unknown flags, malformed JSON and violated constraints. The
/// message list carries one entry per problem.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> messages);
  const std::vector<std::string>& messages() const noexcept { return messages_; }

 private:
  std::vector<std::string> messages_;
};

/// Set when --help was requested; carries the usage text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& commands();

/// Parses argv (argv[0] is the program name). A --config file is read first
/// and every flag given on the command line overrides it.
RunConfig parse_config(int argc, const char* const* argv);

/// Builds and validates a RunConfig from a JSON object using the same keys
/// as the config file.
RunConfig config_from_json(const nlohmann::json& j);

/// JSON form of a config, suitable as a config file.
nlohmann::json config_to_json(const RunConfig& c);

}  // namespace hbcli
