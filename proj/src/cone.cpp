#include "vogp/cone.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vogp/convex.hpp"
#include "vogp/error.hpp"
#include "vogp/metrics.hpp"

namespace vogp {

namespace {

bool is_pointed(const Eigen::MatrixXd& W) {
  const Eigen::Index m = W.cols();
  if (W.rows() < m) return false;
  // C and -C share a nonzero point iff {Wx >= 0, -Wx >= 0, ||x||_inf = 1}
  // is feasible; the sup-norm sphere splits into 2M box faces.
  Eigen::MatrixXd A(2 * W.rows(), m);
  A << W, -W;
  const Eigen::VectorXd b = Eigen::VectorXd::Zero(A.rows());
  for (Eigen::Index j = 0; j < m; ++j) {
    for (double s : {-1.0, 1.0}) {
      Eigen::VectorXd lo = Eigen::VectorXd::Constant(m, -1.0);
      Eigen::VectorXd hi = Eigen::VectorXd::Constant(m, 1.0);
      lo[j] = hi[j] = s;
      if (feasible_box_halfspaces({Hyperrectangle(lo, hi), A, b})) return false;
    }
  }
  return true;
}

bool has_interior(const Eigen::MatrixXd& W) {
  const Eigen::Index m = W.cols();
  const double r = 1e4;
  FeasibilityProblem p{Hyperrectangle(Eigen::VectorXd::Constant(m, -r), Eigen::VectorXd::Constant(m, r)),
                       W, Eigen::VectorXd::Ones(W.rows())};
  return feasible_box_halfspaces(p);
}

}  // namespace

ConeOrder build_cone(const Eigen::MatrixXd& rows) {
  if (rows.rows() == 0 || rows.cols() == 0) {
    throw Error(ErrorCode::EmptyInput, "cone needs at least one row");
  }
  if (!rows.allFinite()) throw Error(ErrorCode::NonFiniteInput, "cone rows must be finite");
  ConeOrder cone;
  cone.w_ = rows;
  for (Eigen::Index n = 0; n < rows.rows(); ++n) {
    const double norm = rows.row(n).norm();
    if (norm == 0.0) {
      throw Error(ErrorCode::ZeroRow, "row " + std::to_string(n) + " is zero");
    }
    cone.w_.row(n) /= norm;
  }
  if (!is_pointed(cone.w_)) {
    throw Error(ErrorCode::NotPointed, "cone contains a line (C and -C intersect)");
  }
  if (!has_interior(cone.w_)) {
    throw Error(ErrorCode::EmptyInterior, "cone has empty interior");
  }

  const MinNormResult z = min_norm_qp(cone.w_, Eigen::VectorXd::Ones(cone.w_.rows()));
  cone.d_c_ = z.norm;
  cone.u_star_ = z.z / z.norm;

  // Support of each normal over the unit ball inside C is the length of
  // its projection onto C.
  cone.support_.resize(cone.w_.rows());
  for (Eigen::Index n = 0; n < cone.w_.rows(); ++n) {
    const Eigen::VectorXd w = cone.w_.row(n).transpose();
    const Eigen::VectorXd shift = min_norm_qp(cone.w_, -(cone.w_ * w)).z;
    cone.support_[n] = (w + shift).norm();
  }
  return cone;
}

ConeOrder build_cone(const std::vector<Eigen::VectorXd>& rows) {
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "cone needs at least one row");
  const Eigen::Index m = rows.front().size();
  Eigen::MatrixXd W(static_cast<Eigen::Index>(rows.size()), m);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m) throw Error(ErrorCode::DimensionMismatch, "ragged cone rows");
    W.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return build_cone(W);
}

ConeOrder cone_2d(double theta_degrees) {
  if (!(theta_degrees > 0.0 && theta_degrees < 180.0)) {
    throw Error(ErrorCode::ThetaOutOfRange, "theta must lie in (0, 180)");
  }
  const double deg = std::numbers::pi / 180.0;
  const double lo = (45.0 - theta_degrees / 2.0) * deg;
  const double hi = (45.0 + theta_degrees / 2.0) * deg;
  Eigen::MatrixXd W(2, 2);
  // Inward normals: the lower ray's normal points counter-clockwise, the
  // upper ray's clockwise.
  W << -std::sin(lo), std::cos(lo),
       std::sin(hi), -std::cos(hi);
  return build_cone(W);
}

ConeOrder builtin_cone(std::string_view name, Eigen::Index dim) {
  if (dim == 2) {
    if (name == "acute") return cone_2d(60.0);
    if (name == "right") return cone_2d(90.0);
    if (name == "obtuse") return cone_2d(120.0);
  } else if (dim == 3) {
    Eigen::MatrixXd W(3, 3);
    if (name == "acute") {
      W << 1, -2, 4,
           4, 1, -2,
           -2, 4, 1;
      return build_cone(W);
    }
    if (name == "right") return build_cone(Eigen::MatrixXd::Identity(3, 3));
    if (name == "obtuse") {
      W << 1, 0.4, 1.6,
           1.6, 1, 0.4,
           0.4, 1.6, 1;
      return build_cone(W);
    }
  } else if (name == "right" && dim > 0) {
    return build_cone(Eigen::MatrixXd::Identity(dim, dim));
  }
  throw Error(ErrorCode::UnknownName,
              "no builtin cone '" + std::string(name) + "' for M=" + std::to_string(dim));
}

bool dominates(const ConeOrder& cone, const Eigen::VectorXd& y, const Eigen::VectorXd& y2,
               Dominance mode) {
  if (y.size() != cone.dim() || y2.size() != cone.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vector size does not match cone dimension");
  }
  const Eigen::VectorXd s = cone.W() * (y2 - y);
  return mode == Dominance::weak ? (s.array() >= 0.0).all() : (s.array() > 0.0).all();
}

double m_gap(const ConeOrder& cone, const Eigen::VectorXd& delta) {
  if (delta.size() != cone.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "gap vector size does not match cone dimension");
  }
  const Eigen::VectorXd s = cone.W() * delta;
  // Outside int(C) the point already escapes at s = 0.
  if ((s.array() <= 0.0).any()) return 0.0;
  // Escaping through face n needs s * w_n^T u >= w_n^T delta; the best unit
  // u in C achieves w_n^T u = support_n.
  return (s.array() / cone.support().array()).minCoeff();
}

std::vector<double> suboptimality_gaps(const ConeOrder& cone, const Eigen::MatrixXd& objectives) {
  if (objectives.rows() == 0) throw Error(ErrorCode::EmptyInput, "no objectives given");
  const std::vector<std::size_t> pareto = true_pareto_front(objectives, cone);
  std::vector<double> gaps(static_cast<std::size_t>(objectives.rows()), 0.0);
  for (Eigen::Index i = 0; i < objectives.rows(); ++i) {
    double worst = 0.0;
    for (std::size_t p : pareto) {
      const Eigen::VectorXd delta =
          (objectives.row(static_cast<Eigen::Index>(p)) - objectives.row(i)).transpose();
      worst = std::max(worst, m_gap(cone, delta));
    }
    gaps[static_cast<std::size_t>(i)] = worst;
  }
  return gaps;
}

ConeOrder parse_cone_spec(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Eigen::VectorXd> rows;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    std::vector<double> vals;
    while (ls >> tok) {
      if (tok.rfind("theta:", 0) == 0) {
        if (!rows.empty() || !vals.empty()) {
          throw Error(ErrorCode::InvalidConfig, "theta token must stand alone");
        }
        try {
          return cone_2d(std::stod(tok.substr(6)));
        } catch (const std::invalid_argument&) {
          throw Error(ErrorCode::InvalidConfig, "bad theta value '" + tok + "'");
        }
      }
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidConfig, "non-numeric cone entry '" + tok + "'");
      }
    }
    if (!vals.empty()) rows.push_back(Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size())));
  }
  if (rows.empty()) throw Error(ErrorCode::InvalidConfig, "cone specification is empty");
  return build_cone(rows);
}

}  // namespace vogp
