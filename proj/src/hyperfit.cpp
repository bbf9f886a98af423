#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "vogp/error.hpp"
#include "vogp/gp.hpp"

namespace vogp {

double log_marginal_likelihood(const SquaredExponential& k, const Eigen::MatrixXd& designs,
                               const Eigen::VectorXd& y, double noise_variance, Eigen::VectorXd* gradient) {
  const Eigen::Index n = designs.rows();
  const Eigen::Index d = designs.cols();
  const Eigen::MatrixXd ks = k.gram(designs, designs);
  Eigen::MatrixXd g = ks;
  g.diagonal().array() += noise_variance;
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) {
    g.diagonal().array() += 1e-8;
    llt.compute(g);
    if (llt.info() != Eigen::Success) throw Error(ErrorCode::FactorizationFailure, "likelihood Gram");
  }
  const Eigen::VectorXd alpha = llt.solve(y);
  const Eigen::MatrixXd l = llt.matrixL();
  const double lml = -0.5 * y.dot(alpha) - l.diagonal().array().log().sum() -
                     0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  if (gradient) {
    const Eigen::MatrixXd a =
        alpha * alpha.transpose() - llt.solve(Eigen::MatrixXd::Identity(n, n));
    gradient->resize(d + 1);
    for (Eigen::Index j = 0; j < d; ++j) {
      const double inv2 = 1.0 / (k.lengthscales[j] * k.lengthscales[j]);
      double acc = 0.0;
      for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) {
          const double diff = designs(r, j) - designs(c, j);
          acc += a(r, c) * ks(r, c) * diff * diff * inv2;
        }
      }
      (*gradient)[j] = 0.5 * acc;
    }
    (*gradient)[d] = 0.5 * (a.array() * ks.array()).sum();
  }
  return lml;
}

namespace {

struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
  Eigen::VectorXd project(const Eigen::VectorXd& v) const { return v.cwiseMax(lo).cwiseMin(hi); }
};

SquaredExponential unpack(const Eigen::VectorXd& theta) {
  const Eigen::Index d = theta.size() - 1;
  return {theta.head(d).array().exp().matrix(), std::exp(theta[d])};
}

double objective(const Eigen::VectorXd& theta, const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                 double noise, Eigen::VectorXd* grad) {
  return log_marginal_likelihood(unpack(theta), x, y, noise, grad);
}

// Projected quasi-Newton ascent: BFGS on the free variables, Armijo
// backtracking along the projected path.
Eigen::VectorXd ascend(Eigen::VectorXd theta, const Box& box, const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                       double noise, std::size_t max_iterations, double& value) {
  const Eigen::Index k = theta.size();
  Eigen::VectorXd grad;
  value = objective(theta, x, y, noise, &grad);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(k, k);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    // Variables pinned at a bound by an outward gradient stay fixed.
    Eigen::VectorXd free = Eigen::VectorXd::Ones(k);
    for (Eigen::Index j = 0; j < k; ++j) {
      if ((theta[j] <= box.lo[j] && grad[j] < 0.0) || (theta[j] >= box.hi[j] && grad[j] > 0.0)) free[j] = 0.0;
    }
    const Eigen::VectorXd g = grad.cwiseProduct(free);
    if (g.norm() < 1e-6) break;
    Eigen::VectorXd dir = (h * g).cwiseProduct(free);
    if (dir.dot(g) <= 0.0) {
      h.setIdentity();
      dir = g;
    }
    double step = 1.0;
    bool accepted = false;
    Eigen::VectorXd cand, cand_grad;
    double v = value;
    for (int halving = 0; halving < 40; ++halving) {
      cand = box.project(theta + step * dir);
      const Eigen::VectorXd move = cand - theta;
      if (move.cwiseAbs().maxCoeff() < 1e-12) break;
      v = objective(cand, x, y, noise, &cand_grad);
      if (v >= value + 1e-4 * grad.dot(move)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const Eigen::VectorXd s = cand - theta;
    const Eigen::VectorXd yk = grad - cand_grad;  // gradient change of the minimized -lml
    const double sy = s.dot(yk);
    if (sy > 1e-12) {
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(k, k);
      const double rho = 1.0 / sy;
      h = (id - rho * s * yk.transpose()) * h * (id - rho * yk * s.transpose()) + rho * s * s.transpose();
    }
    const double gain = v - value;
    theta = cand;
    value = v;
    grad = cand_grad;
    if (gain < 1e-10 * (1.0 + std::abs(value))) break;
  }
  return theta;
}

}  // namespace

FitReport fit_hyperparameters(const Eigen::MatrixXd& designs, const Eigen::MatrixXd& targets,
                              double noise_variance, const FitOptions& options) {
  const Eigen::Index n = designs.rows();
  if (n < 2) throw Error(ErrorCode::TooFewRows, "hyperparameter fit needs at least two points");
  if (targets.rows() != n) throw Error(ErrorCode::DimensionMismatch, "designs and targets differ in length");
  if (!designs.allFinite() || !targets.allFinite()) throw Error(ErrorCode::NonFiniteInput, "fit data");
  bool distinct = false;
  for (Eigen::Index i = 1; i < n && !distinct; ++i) distinct = designs.row(i) != designs.row(0);
  if (!distinct) throw Error(ErrorCode::DegenerateData, "all designs are identical");

  std::mt19937_64 rng(options.seed);
  std::vector<Eigen::Index> rows(static_cast<std::size_t>(n));
  std::iota(rows.begin(), rows.end(), Eigen::Index{0});
  if (static_cast<std::size_t>(n) > options.max_points) {
    std::shuffle(rows.begin(), rows.end(), rng);
    rows.resize(options.max_points);
    std::sort(rows.begin(), rows.end());
  }
  const auto used = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index d = designs.cols();
  Eigen::MatrixXd x(used, d);
  Eigen::MatrixXd y(used, targets.cols());
  for (Eigen::Index i = 0; i < used; ++i) {
    x.row(i) = designs.row(rows[static_cast<std::size_t>(i)]);
    y.row(i) = targets.row(rows[static_cast<std::size_t>(i)]);
  }

  Eigen::VectorXd range = (x.colwise().maxCoeff() - x.colwise().minCoeff()).transpose();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (range[j] <= 0.0) range[j] = 1.0;
  }
  Box box{Eigen::VectorXd(d + 1), Eigen::VectorXd(d + 1)};
  box.lo.head(d) = (1e-2 * range).array().log().matrix();
  box.hi.head(d) = (10.0 * range).array().log().matrix();
  box.lo[d] = std::log(1e-4);
  box.hi[d] = 0.0;

  FitReport report;
  std::vector<SquaredExponential> kernels;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (Eigen::Index p = 0; p < targets.cols(); ++p) {
    const Eigen::VectorXd yp = y.col(p).array() - y.col(p).mean();
    const double var = std::clamp(yp.squaredNorm() / static_cast<double>(used), 1e-3, 1.0);
    Eigen::VectorXd best;
    double best_value = -std::numeric_limits<double>::infinity();
    std::vector<double> starts;
    for (std::size_t r = 0; r < std::max<std::size_t>(options.restarts, 1); ++r) {
      Eigen::VectorXd theta(d + 1);
      if (r == 0) {
        theta.head(d) = (0.3 * range).array().log().matrix();
        theta[d] = std::log(var);
      } else {
        for (Eigen::Index j = 0; j < d; ++j) {
          theta[j] = std::log(range[j]) + std::log(0.05) + unit(rng) * (std::log(1.0) - std::log(0.05));
        }
        theta[d] = std::log(1e-2) * (1.0 - unit(rng));
      }
      theta = box.project(theta);
      starts.push_back(objective(theta, x, yp, noise_variance, nullptr));
      double value = 0.0;
      const Eigen::VectorXd out = ascend(theta, box, x, yp, noise_variance, options.max_iterations, value);
      if (value > best_value) {
        best_value = value;
        best = out;
      }
    }
    kernels.push_back(unpack(best));
    report.log_likelihood.push_back(best_value);
    report.start_likelihood.push_back(std::move(starts));
  }
  report.kernel = KernelSpec::per_output(std::move(kernels));
  return report;
}

}  // namespace vogp
