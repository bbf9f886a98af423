#pragma once

// Small dense convex subsolvers used by the cone geometry and the VOGP
// decision rules: box/halfspace LP feasibility and the minimum-norm point of
// a polyhedron {z : Wz >= c}.

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <vector>

namespace vogp {

/// Uniform lenient slack applied to every halfspace constraint.
inline constexpr double kConstraintSlack = 1e-9;

/// Axis-aligned box in objective space. The whole-space sentinel uses
/// infinite bounds and must never reach a solver.
struct Hyperrectangle {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  Hyperrectangle() = default;
  Hyperrectangle(Eigen::VectorXd lo, Eigen::VectorXd hi);

  static Hyperrectangle whole_space(Eigen::Index dim);
  static Hyperrectangle point(const Eigen::VectorXd& y);

  Eigen::Index dim() const { return lower.size(); }
  bool empty_storage() const { return lower.size() == 0; }
  bool is_finite() const;

  /// Euclidean length of the main diagonal, ||upper - lower||_2.
  double diagonal() const;
  /// Vertex selected by the bits of `mask` (bit j set -> upper_j).
  Eigen::VectorXd vertex(unsigned mask) const;
  unsigned vertex_count() const { return 1u << static_cast<unsigned>(dim()); }
  bool contains(const Eigen::VectorXd& y, double tol = 0.0) const;
  bool contains(const Hyperrectangle& other, double tol = 0.0) const;

  bool operator==(const Hyperrectangle& other) const;
};

/// Constraints A*y >= b over the finite box `box`.
struct FeasibilityProblem {
  Hyperrectangle box;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};

/// Witness-producing form of feasible_box_halfspaces. Returns a point y in
/// the box with A*y >= b - kConstraintSlack, or nullopt when none exists.
std::optional<Eigen::VectorXd> find_feasible_point(const FeasibilityProblem& p);

/// True iff some y in the box satisfies A*y >= b - kConstraintSlack.
bool feasible_box_halfspaces(const FeasibilityProblem& p);

namespace detail {
/// Phase-1 dense simplex with Bland's rule, no exact shortcuts. Exposed so
/// the tests can exercise the pivoting core directly.
std::optional<Eigen::VectorXd> simplex_feasible_point(const FeasibilityProblem& p);
}  // namespace detail

struct MinNormResult {
  Eigen::VectorXd z;
  double norm = 0.0;
  Eigen::VectorXd multipliers;  // lambda >= 0 with z = W^T lambda
  std::size_t sweeps = 0;
};

/// Minimum Euclidean-norm point of {z : W z >= c}. Dual coordinate descent
/// on lambda >= 0 (z = W^T lambda) followed by an active-set polish.
MinNormResult min_norm_qp(const Eigen::MatrixXd& W, const Eigen::VectorXd& c);

/// Largest violation of the KKT system of min_norm_qp at (z, lambda).
double min_norm_kkt_residual(const Eigen::MatrixXd& W, const Eigen::VectorXd& c,
                             const MinNormResult& r);

}  // namespace vogp
