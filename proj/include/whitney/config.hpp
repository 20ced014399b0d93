#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "whitney/geometry.hpp"
#include "whitney/quadrature.hpp"

namespace whitney {

struct Resolution {
  int h_grid = 33;
  QuadratureSpec quad{};
  /// Minimax / L1 fitting grid; empty selects the default per order.
  std::vector<int> fit_grid;
};

/// Parsed experiment configuration (one JSON document).
///
/// `box` gives a lower/upper pair per axis or one scalar pair broadcast to
/// every dimension. p = inf is written as the string "inf".
struct ExperimentConfig {
  std::vector<std::string> function_ids;
  std::vector<std::size_t> dimensions{1, 2};
  std::vector<MultiIndex> orders;
  std::vector<double> p_values{1.0, 2.0, std::numeric_limits<double>::infinity()};
  std::vector<double> box_lower{0.0};
  std::vector<double> box_upper{1.0};
  int shrink_levels = 4;
  int t_sweep = 12;
  /// Ratio between consecutive t values of the K-functional sweep (t_0 = t-bar).
  double t_sweep_factor = 0.70710678118654752;
  Resolution resolution{};
  /// Compute w/W alongside Omega in whitney sweeps.
  bool mean_modulus = true;
  /// Step vector for single evaluations; defaults per subcommand.
  std::optional<std::vector<double>> t;
  std::string output_path;
  std::string format = "csv";
  int jobs = 1;
  bool timing = false;

  /// Parallelepiped for dimension d.
  Box box_for(std::size_t d) const;
};

/// Parses and validates a configuration document. Throws ConfigError.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// "inf" for infinity, shortest decimal otherwise.
std::string format_p(double p);

}  // namespace whitney
