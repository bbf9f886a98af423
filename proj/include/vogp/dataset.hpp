#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace vogp {

/// Designs and objectives min-max scaled to [0,1] per column, with the raw
/// offsets and ranges kept for de-normalization.
struct Dataset {
  Eigen::MatrixXd designs;
  Eigen::MatrixXd objectives;
  Eigen::VectorXd design_min;
  Eigen::VectorXd design_range;
  Eigen::VectorXd objective_min;
  Eigen::VectorXd objective_range;

  Eigen::Index size() const { return designs.rows(); }
  Eigen::MatrixXd raw_designs() const;
  Eigen::MatrixXd raw_objectives() const;
};

/// Column-wise min-max scaling. A constant column maps to zeros with a
/// warning. Throws NonFiniteInput, DimensionMismatch or TooFewRows.
Dataset make_dataset(const Eigen::MatrixXd& raw_designs, const Eigen::MatrixXd& raw_objectives);

/// Parses a CSV with header d0..d{D-1},o0..o{M-1} and at least two rows.
/// Throws Io, MalformedHeader, NonNumericCell or TooFewRows.
Dataset load_dataset_csv(const std::string& path);

/// `size` seeded uniform designs in [0,1]^2 evaluated on a builtin problem.
Dataset builtin_dataset(const std::string& name, std::size_t size, std::uint64_t seed);

}  // namespace vogp
