#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "vogp/cone.hpp"
#include "vogp/execution.hpp"

namespace vogp {

using IndexSet = std::vector<std::size_t>;

/// Indices whose objective vector (one row per design) is not dominated
/// through C \ {0} by any other row. Equal copies of a maximal value are
/// all kept. Ascending order.
IndexSet true_pareto_front(const Eigen::MatrixXd& objectives, const ConeOrder& cone,
                           Execution exec = Execution::serial);

/// True when some u in B(epsilon) and C gives y_star <=_C y + u.
bool epsilon_covers(const ConeOrder& cone, const Eigen::VectorXd& y, const Eigen::VectorXd& y_star,
                    double epsilon);

struct F1Counts {
  std::size_t true_positive = 0;
  std::size_t false_negative = 0;
  std::size_t false_positive = 0;
  double score = 0.0;
};

struct FrontEvaluation {
  IndexSet true_pareto;
  IndexSet predicted;
  std::vector<double> gaps;
  F1Counts f1;
  bool covered = false;       // every Pareto design is epsilon-covered
  bool gaps_bounded = false;  // every returned non-Pareto design has gap <= 2 epsilon
  bool pac_success = false;
};

/// Computes P*, the gaps, the epsilon-F1 counts and both success
/// conditions in one pass.
FrontEvaluation evaluate_front(const Eigen::MatrixXd& objectives, const ConeOrder& cone,
                               const IndexSet& predicted, double epsilon);

double epsilon_f1(const Eigen::MatrixXd& objectives, const ConeOrder& cone, const IndexSet& predicted,
                  double epsilon);

bool pac_success(const Eigen::MatrixXd& objectives, const ConeOrder& cone, const IndexSet& predicted,
                 double epsilon);

/// Lebesgue measure of the union of boxes [ref, p] over the rows of
/// `points`. Rows not dominating `ref` contribute nothing.
double dominated_hypervolume(const Eigen::MatrixXd& points, const Eigen::VectorXd& ref);

/// HV_C: hypervolume of the W-images of the front rows against W*reference.
/// Rows whose image fails to dominate the reference image are dropped
/// with a warning.
double cone_hypervolume(const Eigen::MatrixXd& front, const ConeOrder& cone,
                        const Eigen::VectorXd& reference);

/// Componentwise minimum of both fronts minus a tenth of the range, moved
/// further along -u* until every image dominates the reference image.
Eigen::VectorXd default_reference(const Eigen::MatrixXd& front_a, const Eigen::MatrixXd& front_b,
                                  const ConeOrder& cone);

/// |HV_C(true) - HV_C(predicted)|.
double hv_discrepancy(const Eigen::MatrixXd& predicted_front, const Eigen::MatrixXd& true_front,
                      const ConeOrder& cone, const Eigen::VectorXd& reference);

/// Rows of `m` selected by `idx`, in order.
Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m, const IndexSet& idx);

}  // namespace vogp
