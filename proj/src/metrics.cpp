#include "vogp/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "vogp/convex.hpp"
#include "vogp/error.hpp"

namespace vogp {

namespace {

// a dominated by b in image space: b >= a componentwise and b != a.
bool image_dominated(const Eigen::MatrixXd& img, Eigen::Index a, Eigen::Index b) {
  bool differs = false;
  for (Eigen::Index k = 0; k < img.cols(); ++k) {
    const double d = img(b, k) - img(a, k);
    if (d < 0.0) return false;
    if (d > 0.0) differs = true;
  }
  return differs;
}

IndexSet pareto_sweep_2d(const Eigen::MatrixXd& img) {
  const Eigen::Index n = img.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (img(a, 0) != img(b, 0)) return img(a, 0) > img(b, 0);
    return img(a, 1) > img(b, 1);
  });
  IndexSet keep;
  double best_above = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && img(order[j], 0) == img(order[i], 0)) ++j;
    const double group_max = img(order[i], 1);
    for (std::size_t k = i; k < j; ++k) {
      const double v = img(order[k], 1);
      if (best_above < v && !(group_max > v)) keep.push_back(static_cast<std::size_t>(order[k]));
    }
    best_above = std::max(best_above, group_max);
    i = j;
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

}  // namespace

IndexSet true_pareto_front(const Eigen::MatrixXd& objectives, const ConeOrder& cone, Execution exec) {
  if (objectives.rows() == 0) throw Error(ErrorCode::EmptyInput, "no objectives given");
  if (objectives.cols() != cone.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "objective dimension does not match cone");
  }
  const Eigen::MatrixXd img = objectives * cone.W().transpose();
  if (img.cols() == 2) return pareto_sweep_2d(img);

  const Eigen::Index n = img.rows();
  std::vector<char> dominated(static_cast<std::size_t>(n), 0);
  auto check = [&](Eigen::Index a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      if (b != a && image_dominated(img, a, b)) {
        dominated[static_cast<std::size_t>(a)] = 1;
        return;
      }
    }
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (Eigen::Index a = 0; a < n; ++a) check(a);
  } else {
    for (Eigen::Index a = 0; a < n; ++a) check(a);
  }
  IndexSet keep;
  for (Eigen::Index a = 0; a < n; ++a) {
    if (!dominated[static_cast<std::size_t>(a)]) keep.push_back(static_cast<std::size_t>(a));
  }
  return keep;
}

bool epsilon_covers(const ConeOrder& cone, const Eigen::VectorXd& y, const Eigen::VectorXd& y_star,
                    double epsilon) {
  const Eigen::VectorXd need = (cone.W() * (y_star - y)).cwiseMax(0.0);
  if ((need.array() <= 0.0).all()) return true;
  return min_norm_qp(cone.W(), need).norm <= epsilon + 1e-9;
}

FrontEvaluation evaluate_front(const Eigen::MatrixXd& objectives, const ConeOrder& cone,
                               const IndexSet& predicted, double epsilon) {
  const auto n = static_cast<std::size_t>(objectives.rows());
  for (std::size_t p : predicted) {
    if (p >= n) throw Error(ErrorCode::IndexOutOfRange, "predicted index " + std::to_string(p));
  }
  FrontEvaluation ev;
  ev.true_pareto = true_pareto_front(objectives, cone);
  ev.predicted = predicted;
  std::sort(ev.predicted.begin(), ev.predicted.end());
  ev.predicted.erase(std::unique(ev.predicted.begin(), ev.predicted.end()), ev.predicted.end());
  ev.gaps = suboptimality_gaps(cone, objectives);

  std::vector<char> in_pareto(n, 0);
  for (std::size_t p : ev.true_pareto) in_pareto[p] = 1;

  for (std::size_t p : ev.predicted) {
    if (ev.gaps[p] <= epsilon) {
      ++ev.f1.true_positive;
    } else {
      ++ev.f1.false_positive;
    }
  }
  ev.covered = true;
  for (std::size_t s : ev.true_pareto) {
    const Eigen::VectorXd ys = objectives.row(static_cast<Eigen::Index>(s)).transpose();
    bool hit = false;
    for (std::size_t p : ev.predicted) {
      if (epsilon_covers(cone, objectives.row(static_cast<Eigen::Index>(p)).transpose(), ys, epsilon)) {
        hit = true;
        break;
      }
    }
    if (!hit) {
      ++ev.f1.false_negative;
      ev.covered = false;
    }
  }
  const double tp2 = 2.0 * static_cast<double>(ev.f1.true_positive);
  const double denom = tp2 + static_cast<double>(ev.f1.false_negative + ev.f1.false_positive);
  ev.f1.score = denom > 0.0 ? tp2 / denom : 0.0;

  ev.gaps_bounded = true;
  for (std::size_t p : ev.predicted) {
    if (!in_pareto[p] && ev.gaps[p] > 2.0 * epsilon) ev.gaps_bounded = false;
  }
  ev.pac_success = ev.covered && ev.gaps_bounded;
  return ev;
}

double epsilon_f1(const Eigen::MatrixXd& objectives, const ConeOrder& cone, const IndexSet& predicted,
                  double epsilon) {
  return evaluate_front(objectives, cone, predicted, epsilon).f1.score;
}

bool pac_success(const Eigen::MatrixXd& objectives, const ConeOrder& cone, const IndexSet& predicted,
                 double epsilon) {
  return evaluate_front(objectives, cone, predicted, epsilon).pac_success;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m, const IndexSet& idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= static_cast<std::size_t>(m.rows())) {
      throw Error(ErrorCode::IndexOutOfRange, "row index " + std::to_string(idx[i]));
    }
    out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(idx[i]));
  }
  return out;
}

}  // namespace vogp
