#include <algorithm>
#include <numeric>
#include <vector>

#include "vogp/error.hpp"
#include "vogp/metrics.hpp"

namespace vogp {

namespace {

using Point = std::vector<double>;

// Union volume of boxes [ref, p] over the first `d` coordinates.
double sweep(std::vector<const Point*> pts, const Point& ref, std::size_t d) {
  if (pts.empty()) return 0.0;
  if (d == 1) {
    double hi = ref[0];
    for (const Point* p : pts) hi = std::max(hi, (*p)[0]);
    return hi - ref[0];
  }
  if (d == 2) {
    std::sort(pts.begin(), pts.end(), [](const Point* a, const Point* b) {
      if ((*a)[0] != (*b)[0]) return (*a)[0] > (*b)[0];
      return (*a)[1] > (*b)[1];
    });
    double area = 0.0;
    double top = ref[1];
    for (const Point* p : pts) {
      if ((*p)[1] > top) {
        area += ((*p)[0] - ref[0]) * ((*p)[1] - top);
        top = (*p)[1];
      }
    }
    return area;
  }
  const std::size_t k = d - 1;
  std::sort(pts.begin(), pts.end(), [k](const Point* a, const Point* b) { return (*a)[k] > (*b)[k]; });
  double volume = 0.0;
  std::vector<const Point*> slice;
  slice.reserve(pts.size());
  std::size_t i = 0;
  while (i < pts.size()) {
    const double level = (*pts[i])[k];
    while (i < pts.size() && (*pts[i])[k] == level) {
      const Point* p = pts[i++];
      // Drop slice members dominated by p in the remaining coordinates.
      bool covered = false;
      for (const Point* q : slice) {
        bool dom = true;
        for (std::size_t j = 0; j < k && dom; ++j) dom = (*q)[j] >= (*p)[j];
        if (dom) {
          covered = true;
          break;
        }
      }
      if (covered) continue;
      std::erase_if(slice, [&](const Point* q) {
        for (std::size_t j = 0; j < k; ++j) {
          if ((*p)[j] < (*q)[j]) return false;
        }
        return true;
      });
      slice.push_back(p);
    }
    const double next = i < pts.size() ? (*pts[i])[k] : ref[k];
    volume += (level - next) * sweep(slice, ref, k);
  }
  return volume;
}

}  // namespace

double dominated_hypervolume(const Eigen::MatrixXd& points, const Eigen::VectorXd& ref) {
  if (points.cols() != ref.size()) throw Error(ErrorCode::DimensionMismatch, "reference size");
  const auto d = static_cast<std::size_t>(ref.size());
  std::vector<Point> store;
  store.reserve(static_cast<std::size_t>(points.rows()));
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    if (((points.row(i).transpose() - ref).array() > 0.0).all()) {
      Point& p = store.emplace_back(d);
      for (std::size_t j = 0; j < d; ++j) p[j] = points(i, static_cast<Eigen::Index>(j));
    }
  }
  std::vector<const Point*> ptrs;
  ptrs.reserve(store.size());
  for (const Point& p : store) ptrs.push_back(&p);
  const Point r(ref.data(), ref.data() + ref.size());
  return sweep(std::move(ptrs), r, d);
}

double cone_hypervolume(const Eigen::MatrixXd& front, const ConeOrder& cone,
                        const Eigen::VectorXd& reference) {
  if (front.rows() == 0) throw Error(ErrorCode::EmptyFront, "hypervolume of an empty front");
  if (front.cols() != cone.dim() || reference.size() != cone.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "front or reference does not match cone dimension");
  }
  const Eigen::MatrixXd img = front * cone.W().transpose();
  const Eigen::VectorXd rimg = cone.W() * reference;
  std::size_t dropped = 0;
  for (Eigen::Index i = 0; i < img.rows(); ++i) {
    if (((img.row(i).transpose() - rimg).array() < 0.0).any()) ++dropped;
  }
  if (dropped > 0) {
    warn(std::to_string(dropped) + " front point(s) do not dominate the reference and were dropped");
  }
  return dominated_hypervolume(img, rimg);
}

Eigen::VectorXd default_reference(const Eigen::MatrixXd& front_a, const Eigen::MatrixXd& front_b,
                                  const ConeOrder& cone) {
  if (front_a.rows() + front_b.rows() == 0) throw Error(ErrorCode::EmptyFront, "no points for reference");
  Eigen::MatrixXd all(front_a.rows() + front_b.rows(), cone.dim());
  if (front_a.rows() > 0) all.topRows(front_a.rows()) = front_a;
  if (front_b.rows() > 0) all.bottomRows(front_b.rows()) = front_b;
  const Eigen::RowVectorXd lo = all.colwise().minCoeff();
  const Eigen::RowVectorXd hi = all.colwise().maxCoeff();
  Eigen::VectorXd range = (hi - lo).transpose();
  for (Eigen::Index j = 0; j < range.size(); ++j) {
    if (range[j] <= 0.0) range[j] = 1.0;
  }
  Eigen::VectorXd ref = lo.transpose() - 0.1 * range;
  // For non-orthant cones a box corner need not lie below every point in
  // the cone order; slide along -u* until it does.
  const Eigen::VectorXd wu = cone.W() * cone.u_star();
  double shift = 0.0;
  for (Eigen::Index i = 0; i < all.rows(); ++i) {
    const Eigen::VectorXd slack = cone.W() * (all.row(i).transpose() - ref);
    for (Eigen::Index n = 0; n < slack.size(); ++n) shift = std::max(shift, -slack[n] / wu[n]);
  }
  if (shift > 0.0) ref -= 1.1 * shift * cone.u_star();
  return ref;
}

double hv_discrepancy(const Eigen::MatrixXd& predicted_front, const Eigen::MatrixXd& true_front,
                      const ConeOrder& cone, const Eigen::VectorXd& reference) {
  if (predicted_front.rows() == 0 || true_front.rows() == 0) {
    throw Error(ErrorCode::EmptyFront, "hypervolume discrepancy needs two nonempty fronts");
  }
  return std::abs(cone_hypervolume(true_front, cone, reference) -
                  cone_hypervolume(predicted_front, cone, reference));
}

}  // namespace vogp
