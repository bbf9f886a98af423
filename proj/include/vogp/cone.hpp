#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

namespace vogp {

/// Polyhedral ordering cone C = {x : W x >= 0} with unit-norm rows.
///
/// The accuracy vector u* and the ordering hardness d_C come from the
/// minimum-norm point z* of {z : W z >= 1}: d_C = ||z*||, u* = z* / d_C.
/// Instances are immutable and safe to share across threads.
class ConeOrder {
 public:
  const Eigen::MatrixXd& W() const { return w_; }
  const Eigen::VectorXd& u_star() const { return u_star_; }
  double hardness() const { return d_c_; }
  /// max { w_n^T u : u in C, ||u|| <= 1 } for every row n.
  const Eigen::VectorXd& support() const { return support_; }

  Eigen::Index halfspaces() const { return w_.rows(); }
  Eigen::Index dim() const { return w_.cols(); }

 private:
  friend ConeOrder build_cone(const Eigen::MatrixXd& rows);

  Eigen::MatrixXd w_;
  Eigen::VectorXd u_star_;
  double d_c_ = 0.0;
  Eigen::VectorXd support_;
};

/// Validates and normalizes the halfspace normals (one per row).
/// Throws ZeroRow, NotPointed, EmptyInterior or DimensionMismatch.
ConeOrder build_cone(const Eigen::MatrixXd& rows);
ConeOrder build_cone(const std::vector<Eigen::VectorXd>& rows);

/// 2D cone whose boundary rays sit at 45 +- theta/2 degrees.
ConeOrder cone_2d(double theta_degrees);

/// Named benchmark cones: "acute", "right", "obtuse" for M = 2 or 3.
ConeOrder builtin_cone(std::string_view name, Eigen::Index dim);

enum class Dominance { weak, strict };

/// True when y2 dominates y, i.e. y <=_C y2 (weak: W(y2-y) >= 0) or
/// y <_C y2 (strict: W(y2-y) > 0). Pure sign tests without tolerance.
bool dominates(const ConeOrder& cone, const Eigen::VectorXd& y, const Eigen::VectorXd& y2,
               Dominance mode = Dominance::weak);

/// Cone gap m(x, x'), taking delta = f(x') - f(x): the smallest s >= 0 such
/// that some u in B(1) and C moves f(x) + s*u out of f(x') - int(C).
double m_gap(const ConeOrder& cone, const Eigen::VectorXd& delta);

/// Delta*_x for every row of `objectives` (rows are designs).
std::vector<double> suboptimality_gaps(const ConeOrder& cone, const Eigen::MatrixXd& objectives);

/// Parses the cone file format: a whitespace matrix (one row per line) or
/// a single `theta:<degrees>` token.
ConeOrder parse_cone_spec(const std::string& text);

}  // namespace vogp
