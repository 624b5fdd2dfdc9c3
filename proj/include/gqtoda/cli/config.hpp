#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gqtoda/difference_operator.hpp"
#include "gqtoda/hirota.hpp"
#include "gqtoda/lattice.hpp"

namespace gqtoda::cli {

struct ModeConfig {
  double alpha = 0.0;
  int beta_sign = 1;
  double eta = 0.0;
  std::optional<double> beta;  ///< explicit beta overrides the dispersion relation
};

/// (x, t) sampling window of `soliton`, `residual` and `figures`.
struct WindowConfig {
  double x_min = -5.0;
  double x_max = 5.0;
  int x_count = 100;
  double t_min = -10.0;
  double t_max = 10.0;
  int t_count = 101;
};

struct HierarchyConfig {
  AlgebraLimits limits;
  int samples = 100;
  double x_min = 0.05;
  double x_max = 0.5;
};

struct ResidualConfig {
  int samples = 50;          ///< samples per axis
  double min_abs_x = 0.5;    ///< skip |x| below this (phases grow like 1/x)
};

/// Flat `section.key = value` run configuration.
struct RunConfig {
  std::optional<double> epsilon;
  std::optional<double> e_epsilon;
  std::vector<ModeConfig> modes;
  int random_modes = 0;  ///< draw this many modes from the seed instead
  double grid_y0 = -50.0;
  int grid_count = 200;
  IntegratorConfig integrator;
  std::string output_dir;
  std::string output_format = "csv";
  std::uint64_t seed = 1;
  WindowConfig window;
  HierarchyConfig hierarchy;
  ResidualConfig residual;
  std::optional<double> tol;

  /// Exactly one of epsilon / e_epsilon must be set.
  ShiftParams params() const;
  /// Modes from the config (random ones drawn from the seed). Not validated.
  SolitonSpec spec() const;
  /// True when some mode fixes beta explicitly.
  bool has_explicit_beta() const;
};

/// Parses the key-value format; diagnostics name `source` and the line.
RunConfig parse_config(std::istream& in, const std::string& source);
RunConfig load_config(const std::filesystem::path& path);
/// Resolved config in the same format, keys in a fixed order, 17 digits.
std::string serialize_config(const RunConfig& cfg);

/// %.17g
std::string format_number(double v);

}  // namespace gqtoda::cli
