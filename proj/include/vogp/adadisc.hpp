#pragma once

// Adaptive discretization of [0,1]^D for continuous design spaces: a cell
// tree whose active leaves act as the VOGP designs.

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <vector>

#include "vogp/cone.hpp"
#include "vogp/engine.hpp"
#include "vogp/gp.hpp"
#include "vogp/metrics.hpp"

namespace vogp {

enum class CellStatus { active, expanded, pruned };

struct Cell {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  int depth = 0;
  CellStatus status = CellStatus::active;
  std::vector<std::size_t> children;

  Eigen::VectorXd center() const { return 0.5 * (lower + upper); }
  double diameter() const { return (upper - lower).norm(); }
  double volume() const { return (upper - lower).prod(); }
};

class CellTree {
 public:
  explicit CellTree(Eigen::Index dim, int max_depth = 5);

  /// Bisects every design dimension of an active leaf into 2^D children.
  /// Throws DepthExceeded or AlreadyExpanded.
  std::vector<std::size_t> refine(std::size_t leaf);
  void prune(std::size_t leaf);
  /// Refines every active leaf until all sit at `depth`.
  void expand_to(int depth);

  IndexSet active_leaves() const;
  const std::vector<Cell>& nodes() const { return nodes_; }
  const Cell& node(std::size_t id) const { return nodes_.at(id); }
  Eigen::Index dim() const { return dim_; }
  int max_depth() const { return max_depth_; }
  /// Leaf counts by depth, active leaves only.
  std::vector<std::size_t> depth_histogram() const;

 private:
  Eigen::Index dim_;
  int max_depth_;
  std::vector<Cell> nodes_;
};

struct ContinuousParams {
  VogpParams base;
  double rkhs_bound = 0.1;
  double split_factor = 1.0;
  int max_depth = 5;
  int initial_depth = 0;
};

/// (B + sqrt(2 (gamma_t + 1 + ln(1/delta))))^2 / divisor, with gamma_t the
/// information gain of the model's observations.
WidthPolicy rkhs_width_policy(double rkhs_bound, double delta, double divisor);

using PointOracle = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct ContinuousRound {
  RoundRecord record;
  std::size_t active_leaves = 0;
  std::size_t splits = 0;
  std::vector<std::size_t> depth_histogram;
};

struct ContinuousResult {
  CellTree tree;
  IndexSet pareto_cells;
  std::vector<ContinuousRound> rounds;
  std::vector<QueryRecord> queries;
  std::vector<Eigen::VectorXd> query_points;
  std::size_t coverage_violations = 0;
  bool max_rounds_exceeded = false;
  InvariantViolations violations;
  SurrogateModel model;
  double wall_seconds = 0.0;
};

/// VOGP over the active leaves of a cell tree on [0,1]^D. Leaves split
/// once their confidence diagonal is at most split_factor times the cell
/// diameter; identification waits until every undecided leaf sits at
/// max depth.
ContinuousResult run_continuous(Eigen::Index dim, const KernelSpec& kernel, const ContinuousParams& params,
                                const ConeOrder& cone, const PointOracle& oracle, const WidthPolicy& policy);

/// Uniform grid with `per_dim` points per axis (endpoints included; the
/// midpoint when per_dim is 1). Throws GridTooLarge above 1e6 points.
Eigen::MatrixXd uniform_grid(Eigen::Index dim, std::size_t per_dim);

struct DenseFront {
  Eigen::MatrixXd designs;
  Eigen::MatrixXd means;
};

/// Cone-Pareto subset of the posterior means over a uniform grid.
DenseFront extract_dense_pareto(const SurrogateModel& model, Eigen::Index dim, const ConeOrder& cone,
                                std::size_t grid_per_dim, Execution exec = Execution::serial);

}  // namespace vogp
