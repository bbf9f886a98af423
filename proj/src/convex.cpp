#include "vogp/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vogp/error.hpp"

namespace vogp {

Hyperrectangle::Hyperrectangle(Eigen::VectorXd lo, Eigen::VectorXd hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size()) {
    throw Error(ErrorCode::DimensionMismatch, "hyperrectangle bounds differ in size");
  }
}

Hyperrectangle Hyperrectangle::whole_space(Eigen::Index dim) {
  const double inf = std::numeric_limits<double>::infinity();
  return {Eigen::VectorXd::Constant(dim, -inf), Eigen::VectorXd::Constant(dim, inf)};
}

Hyperrectangle Hyperrectangle::point(const Eigen::VectorXd& y) { return {y, y}; }

bool Hyperrectangle::is_finite() const { return lower.allFinite() && upper.allFinite(); }

double Hyperrectangle::diagonal() const { return (upper - lower).norm(); }

Eigen::VectorXd Hyperrectangle::vertex(unsigned mask) const {
  Eigen::VectorXd v(dim());
  for (Eigen::Index j = 0; j < dim(); ++j) {
    v[j] = (mask >> j) & 1u ? upper[j] : lower[j];
  }
  return v;
}

bool Hyperrectangle::contains(const Eigen::VectorXd& y, double tol) const {
  return ((y - lower).array() >= -tol).all() && ((upper - y).array() >= -tol).all();
}

bool Hyperrectangle::contains(const Hyperrectangle& other, double tol) const {
  return ((other.lower - lower).array() >= -tol).all() &&
         ((upper - other.upper).array() >= -tol).all();
}

bool Hyperrectangle::operator==(const Hyperrectangle& other) const {
  return lower.size() == other.lower.size() && lower == other.lower && upper == other.upper;
}

namespace {

void validate(const FeasibilityProblem& p) {
  const Eigen::Index m = p.box.dim();
  if (p.A.cols() != m || p.A.rows() != p.b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "constraint matrix does not match box/rhs");
  }
  if (!p.box.is_finite()) {
    throw Error(ErrorCode::UnboundedBox, "feasibility box must be finite");
  }
  if ((p.box.lower.array() > p.box.upper.array()).any()) {
    throw Error(ErrorCode::DimensionMismatch, "box lower bound exceeds upper bound");
  }
}

bool satisfies(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& y) {
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    if (A.row(i).dot(y) < b[i] - kConstraintSlack) return false;
  }
  return true;
}

// Dense tableau for phase 1. Rows: K general constraints followed by M
// upper-bound rows. Columns: x (M), surplus (K), bound slack (M),
// artificials, then the right-hand side.
class Phase1Tableau {
 public:
  Phase1Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& rhs, const Eigen::VectorXd& width)
      : m_vars_(A.cols()), k_rows_(A.rows()) {
    const Eigen::Index M = m_vars_;
    const Eigen::Index K = k_rows_;
    std::vector<Eigen::Index> needs_artificial;
    for (Eigen::Index i = 0; i < K; ++i) {
      if (rhs[i] > 0.0) needs_artificial.push_back(i);
    }
    const Eigen::Index n_art = static_cast<Eigen::Index>(needs_artificial.size());
    cols_ = M + K + M + n_art;
    rows_ = K + M;
    t_ = Eigen::MatrixXd::Zero(rows_, cols_ + 1);
    basis_.assign(static_cast<std::size_t>(rows_), 0);

    Eigen::Index art = 0;
    for (Eigen::Index i = 0; i < K; ++i) {
      if (rhs[i] > 0.0) {
        t_.row(i).head(M) = A.row(i);
        t_(i, M + i) = -1.0;
        t_(i, M + K + M + art) = 1.0;
        t_(i, cols_) = rhs[i];
        basis_[static_cast<std::size_t>(i)] = M + K + M + art;
        ++art;
      } else {
        t_.row(i).head(M) = -A.row(i);
        t_(i, M + i) = 1.0;
        t_(i, cols_) = -rhs[i];
        basis_[static_cast<std::size_t>(i)] = M + i;
      }
    }
    for (Eigen::Index j = 0; j < M; ++j) {
      const Eigen::Index r = K + j;
      t_(r, j) = 1.0;
      t_(r, M + K + j) = 1.0;
      t_(r, cols_) = width[j];
      basis_[static_cast<std::size_t>(r)] = M + K + j;
    }
    // Reduced costs of min sum(artificials) in canonical form.
    cost_ = Eigen::RowVectorXd::Zero(cols_ + 1);
    const Eigen::Index first_art = M + K + M;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] >= first_art) cost_ -= t_.row(i);
    }
    for (Eigen::Index a = first_art; a < cols_; ++a) cost_[a] = 0.0;
  }

  // Returns the phase-1 optimum (sum of artificials).
  double solve() {
    constexpr double kReducedTol = 1e-12;
    constexpr double kPivotTol = 1e-12;
    const std::size_t cap = 200 * static_cast<std::size_t>(rows_ + cols_) + 1000;
    for (std::size_t it = 0; it < cap; ++it) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < cols_; ++j) {
        if (cost_[j] < -kReducedTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return -cost_[cols_];

      Eigen::Index leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = t_(i, cols_) / a;
        if (ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 && leave >= 0 &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          best_ratio = ratio;
          leave = i;
        }
      }
      // Phase 1 is bounded below by zero, so a missing ratio means the
      // column is numerically degenerate; treat as optimal.
      if (leave < 0) return -cost_[cols_];
      pivot(leave, enter);
    }
    throw Error(ErrorCode::NotConverged, "simplex iteration cap reached");
  }

  Eigen::VectorXd primal_x() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(m_vars_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index var = basis_[static_cast<std::size_t>(i)];
      if (var < m_vars_) x[var] = t_(i, cols_);
    }
    return x;
  }

 private:
  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    const double f = cost_[c];
    if (f != 0.0) cost_ -= f * t_.row(r);
    basis_[static_cast<std::size_t>(r)] = c;
  }

  Eigen::Index m_vars_;
  Eigen::Index k_rows_;
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  Eigen::MatrixXd t_;
  Eigen::RowVectorXd cost_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

namespace detail {

std::optional<Eigen::VectorXd> simplex_feasible_point(const FeasibilityProblem& p) {
  validate(p);
  const Eigen::VectorXd& lo = p.box.lower;
  const Eigen::VectorXd width = p.box.upper - lo;
  // Shift to x = y - lower so that 0 <= x <= width.
  const Eigen::VectorXd rhs = (p.b.array() - kConstraintSlack).matrix() - p.A * lo;
  if (p.A.rows() == 0) return lo;

  Phase1Tableau tab(p.A, rhs, width);
  const double infeasibility = tab.solve();
  const double scale = 1.0 + (rhs.size() ? rhs.cwiseAbs().maxCoeff() : 0.0);
  if (infeasibility > 1e-10 * scale) return std::nullopt;
  Eigen::VectorXd y = lo + tab.primal_x();
  return y.cwiseMax(p.box.lower).cwiseMin(p.box.upper);
}

}  // namespace detail

std::optional<Eigen::VectorXd> find_feasible_point(const FeasibilityProblem& p) {
  validate(p);
  const Eigen::Index m = p.box.dim();
  const Eigen::MatrixXd& A = p.A;

  // Exact rejection: some constraint cannot be met anywhere in the box.
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    double best = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      best += std::max(A(i, j) * p.box.lower[j], A(i, j) * p.box.upper[j]);
    }
    if (best < p.b[i] - kConstraintSlack) return std::nullopt;
  }
  // Exact acceptance: a box vertex is already a witness.
  if (m <= 10) {
    for (unsigned mask = 0; mask < p.box.vertex_count(); ++mask) {
      Eigen::VectorXd v = p.box.vertex(mask);
      if (satisfies(A, p.b, v)) return v;
    }
  }
  return detail::simplex_feasible_point(p);
}

bool feasible_box_halfspaces(const FeasibilityProblem& p) {
  return find_feasible_point(p).has_value();
}

namespace {

double kkt_residual(const Eigen::MatrixXd& W, const Eigen::VectorXd& c, const Eigen::VectorXd& z,
                    const Eigen::VectorXd& lambda) {
  double res = 0.0;
  const Eigen::VectorXd slack = W * z - c;
  for (Eigen::Index n = 0; n < W.rows(); ++n) {
    res = std::max(res, -slack[n]);
    res = std::max(res, -lambda[n]);
    res = std::max(res, std::abs(lambda[n] * slack[n]));
  }
  return res;
}

// Solve the equality-constrained projection on the support of lambda. Returns
// true and overwrites (z, lambda) when the result satisfies the KKT system.
bool polish(const Eigen::MatrixXd& W, const Eigen::VectorXd& c, Eigen::VectorXd& z,
            Eigen::VectorXd& lambda) {
  std::vector<Eigen::Index> active;
  for (Eigen::Index n = 0; n < W.rows(); ++n) {
    if (lambda[n] > 0.0) active.push_back(n);
  }
  if (active.empty() || static_cast<Eigen::Index>(active.size()) > W.cols()) return false;
  const Eigen::Index k = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXd Wa(k, W.cols());
  Eigen::VectorXd ca(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    Wa.row(i) = W.row(active[static_cast<std::size_t>(i)]);
    ca[i] = c[active[static_cast<std::size_t>(i)]];
  }
  const Eigen::MatrixXd G = Wa * Wa.transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
  if (lu.rank() < k) return false;
  const Eigen::VectorXd la = lu.solve(ca);
  if ((la.array() < 0.0).any()) return false;
  Eigen::VectorXd lam = Eigen::VectorXd::Zero(W.rows());
  for (Eigen::Index i = 0; i < k; ++i) lam[active[static_cast<std::size_t>(i)]] = la[i];
  Eigen::VectorXd zz = W.transpose() * lam;
  const double scale = 1.0 + c.cwiseAbs().maxCoeff();
  if (kkt_residual(W, c, zz, lam) > 1e-12 * scale) return false;
  z = std::move(zz);
  lambda = std::move(lam);
  return true;
}

}  // namespace

MinNormResult min_norm_qp(const Eigen::MatrixXd& W, const Eigen::VectorXd& c) {
  if (W.rows() != c.size()) {
    throw Error(ErrorCode::DimensionMismatch, "min_norm_qp: W rows must match c");
  }
  if (!W.allFinite() || !c.allFinite()) {
    throw Error(ErrorCode::NonFiniteInput, "min_norm_qp: non-finite input");
  }
  MinNormResult out;
  out.z = Eigen::VectorXd::Zero(W.cols());
  out.multipliers = Eigen::VectorXd::Zero(W.rows());
  if (W.rows() == 0 || (c.array() <= 0.0).all()) return out;

  const Eigen::VectorXd row_sq = W.rowwise().squaredNorm();
  for (Eigen::Index n = 0; n < W.rows(); ++n) {
    if (row_sq[n] == 0.0 && c[n] > 0.0) {
      throw Error(ErrorCode::Infeasible, "zero row with positive right-hand side");
    }
  }

  constexpr std::size_t kMaxSweeps = 100000;
  constexpr double kTol = 1e-8;
  const double blowup = 1e12 * (1.0 + c.cwiseAbs().maxCoeff());
  Eigen::VectorXd& lambda = out.multipliers;
  Eigen::VectorXd& z = out.z;

  for (std::size_t sweep = 1; sweep <= kMaxSweeps; ++sweep) {
    for (Eigen::Index n = 0; n < W.rows(); ++n) {
      if (row_sq[n] == 0.0) continue;
      const double g = c[n] - W.row(n).dot(z);
      const double updated = std::max(0.0, lambda[n] + g / row_sq[n]);
      const double d = updated - lambda[n];
      if (d != 0.0) {
        z.noalias() += d * W.row(n).transpose();
        lambda[n] = updated;
      }
    }
    out.sweeps = sweep;
    if (lambda.cwiseAbs().maxCoeff() > blowup) {
      throw Error(ErrorCode::Infeasible, "min_norm_qp: dual diverges, {Wz >= c} is empty");
    }
    if (polish(W, c, z, lambda)) break;
    if (sweep == 1000) {
      const double radius = 1e6 * (1.0 + c.cwiseAbs().maxCoeff());
      FeasibilityProblem probe{
          Hyperrectangle(Eigen::VectorXd::Constant(W.cols(), -radius),
                         Eigen::VectorXd::Constant(W.cols(), radius)),
          W, c};
      if (!feasible_box_halfspaces(probe)) {
        throw Error(ErrorCode::Infeasible, "min_norm_qp: {Wz >= c} is empty");
      }
    }
    z = W.transpose() * lambda;
    if (kkt_residual(W, c, z, lambda) < kTol) break;
    if (sweep == kMaxSweeps) {
      throw Error(ErrorCode::NotConverged, "min_norm_qp: sweep cap reached");
    }
  }
  out.norm = z.norm();
  return out;
}

double min_norm_kkt_residual(const Eigen::MatrixXd& W, const Eigen::VectorXd& c,
                             const MinNormResult& r) {
  const Eigen::VectorXd recon = W.transpose() * r.multipliers;
  return std::max(kkt_residual(W, c, r.z, r.multipliers), (recon - r.z).cwiseAbs().maxCoeff());
}

}  // namespace vogp
