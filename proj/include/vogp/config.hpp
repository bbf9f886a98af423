#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vogp/engine.hpp"

namespace vogp {

enum class Algorithm { vogp, ne, vogp_continuous };

/// Flat experiment configuration. Defaults follow the benchmark protocol:
/// epsilon 0.1, delta 0.05, noise 0.1, beta divided by 32.
struct RunConfig {
  std::string problem = "BC";  // builtin name or CSV path
  std::string cone = "right";  // builtin name, theta:<deg>, or matrix file
  double epsilon = 0.1;
  double delta = 0.05;
  double noise_std = 0.1;
  double beta_divisor = 32.0;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  Algorithm algorithm = Algorithm::vogp;
  std::size_t max_rounds = 100000;
  bool fit_kernel = true;
  Eigen::VectorXd lengthscales;  // explicit kernel when fit_kernel is false
  double signal_variance = 1.0;
  std::size_t grid_per_dim = 100;
  std::size_t truth_grid_per_dim = 300;
  std::optional<Eigen::VectorXd> reference;
  std::size_t dataset_size = 500;
  std::uint64_t dataset_seed = 0;
  std::optional<std::size_t> ne_budget;  // empty: derived from a VOGP run
  double rkhs_bound = 0.1;
  double split_factor = 1.0;
  int max_depth = 5;
  int initial_depth = 0;
  EmptyIntersection empty_intersection = EmptyIntersection::reset;
  bool parallel = false;
  std::string outdir;

  /// Throws InvalidConfig on out-of-range values.
  void validate() const;
};

std::string to_string(Algorithm a);

/// Reads `key = value` lines ('#' or ';' comments). Unknown keys are
/// rejected. Relative paths resolve against the file's directory.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text, const std::string& base_dir = ".");

}  // namespace vogp
