#pragma once

// Independent brute-force references used only by the tests. None of them
// call into the library's solvers.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline bool in_cone(const Eigen::MatrixXd& W, const Eigen::VectorXd& v, double tol = 0.0) {
  return ((W * v).array() >= -tol).all();
}

/// Membership of a 2D direction in the closed angular sector [lo, hi] (degrees).
inline bool in_sector(const Eigen::Vector2d& v, double lo_deg, double hi_deg) {
  double a = std::atan2(v.y(), v.x()) * 180.0 / std::numbers::pi;
  if (a < lo_deg - 1e-9) a += 360.0;
  return a >= lo_deg - 1e-9 && a <= hi_deg + 1e-9;
}

/// Unit directions inside the cone, by rejection from the sphere.
inline std::vector<Eigen::VectorXd> cone_directions(const Eigen::MatrixXd& W, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Eigen::VectorXd> out;
  const Eigen::Index m = W.cols();
  if (m == 2) {
    // Uniform angular grid over the circle, filtered to the cone and sized
    // so that about `count` directions land inside it.
    std::size_t inside = 0;
    for (int k = 0; k < 3600; ++k) {
      const double a = 2.0 * std::numbers::pi * k / 3600.0;
      inside += in_cone(W, Eigen::Vector2d(std::cos(a), std::sin(a)));
    }
    const std::size_t n = count * 3600 / std::max<std::size_t>(inside, 1);
    for (std::size_t k = 0; k < n; ++k) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      const Eigen::Vector2d u(std::cos(a), std::sin(a));
      if (in_cone(W, u)) out.push_back(u);
    }
    return out;
  }
  if (m == 3) {
    // Fibonacci lattice on the sphere, sized so that about `count` points
    // fall inside the cone.
    auto lattice = [](std::size_t n, std::size_t k) {
      const double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = static_cast<double>(k) * std::numbers::pi * (3.0 - std::sqrt(5.0));
      return Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), z);
    };
    std::size_t inside = 0;
    for (std::size_t k = 0; k < 20000; ++k) inside += in_cone(W, lattice(20000, k));
    const std::size_t n = count * 20000 / std::max<std::size_t>(inside, 1);
    for (std::size_t k = 0; k < n; ++k) {
      const Eigen::VectorXd u = lattice(n, k);
      if (in_cone(W, u)) out.push_back(u);
    }
    return out;
  }
  while (out.size() < count) {
    Eigen::VectorXd u(m);
    for (Eigen::Index j = 0; j < m; ++j) u[j] = normal(rng);
    u.normalize();
    if (in_cone(W, u)) out.push_back(u);
  }
  return out;
}

/// Cone gap by direction sampling: for each unit u in C the escape time
/// of f(x) + s u from f(x') - int(C) is min over halfspaces with
/// w^T u > 0 of w^T delta / w^T u; the gap is the best direction, rounded
/// up to the s grid.
inline double m_gap(const Eigen::MatrixXd& W, const Eigen::VectorXd& delta, const std::vector<Eigen::VectorXd>& dirs,
                    double step = 1e-3) {
  const Eigen::VectorXd wd = W * delta;
  if ((wd.array() <= 0.0).any()) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const Eigen::VectorXd& u : dirs) {
    const Eigen::VectorXd wu = W * u;
    double s = std::numeric_limits<double>::infinity();
    for (Eigen::Index n = 0; n < W.rows(); ++n) {
      if (wu[n] > 0.0) s = std::min(s, wd[n] / wu[n]);
    }
    best = std::min(best, s);
  }
  return std::ceil(best / step - 1e-9) * step;
}

/// Minimum norm over {z : Wz >= c} in 2D: coarse grid, then local refinement.
inline double min_norm_grid_2d(const Eigen::MatrixXd& W, const Eigen::VectorXd& c, double radius) {
  auto search = [&](Eigen::Vector2d center, double half, double step) {
    Eigen::Vector2d best = center;
    double bn = std::numeric_limits<double>::infinity();
    const int n = static_cast<int>(std::round(2.0 * half / step));
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const Eigen::Vector2d z(center.x() - half + i * step, center.y() - half + j * step);
        if (((W * z - c).array() >= 0.0).all() && z.norm() < bn) {
          bn = z.norm();
          best = z;
        }
      }
    }
    return std::pair{best, bn};
  };
  auto [z, n1] = search(Eigen::Vector2d::Zero(), radius, radius / 300.0);
  auto [z2, n2] = search(z, radius / 100.0, radius / 30000.0);
  return std::min(n1, n2);
}

/// Dense grid feasibility of {A y >= b} over the box, step = frac * extent.
inline bool grid_feasible(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, const Eigen::MatrixXd& A,
                          const Eigen::VectorXd& b, double frac = 1e-2) {
  const Eigen::Index m = lo.size();
  const int n = static_cast<int>(std::round(1.0 / frac));
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  Eigen::VectorXd y(m);
  while (true) {
    for (Eigen::Index j = 0; j < m; ++j) y[j] = lo[j] + (hi[j] - lo[j]) * idx[static_cast<std::size_t>(j)] / n;
    if (((A * y - b).array() >= 0.0).all()) return true;
    Eigen::Index j = 0;
    while (j < m && ++idx[static_cast<std::size_t>(j)] > n) idx[static_cast<std::size_t>(j++)] = 0;
    if (j == m) return false;
  }
}

/// Samples a box coordinate with extra mass on its two endpoints.
inline double box_sample(double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = unit(rng);
  if (r < 0.4) return lo;
  if (r < 0.8) return hi;
  return lo + (hi - lo) * unit(rng);
}

/// Condition (i) of the vertex lemma by sampling: every sampled y in rx and
/// y2 in rx2 satisfy W (y2 + shift - y) >= 0.
inline bool sampled_all_dominated(const Eigen::VectorXd& lo1, const Eigen::VectorXd& hi1, const Eigen::VectorXd& lo2,
                                  const Eigen::VectorXd& hi2, const Eigen::MatrixXd& W, const Eigen::VectorXd& shift,
                                  std::size_t pairs, std::mt19937_64& rng) {
  const Eigen::Index m = lo1.size();
  Eigen::VectorXd y(m), y2(m);
  for (std::size_t k = 0; k < pairs; ++k) {
    for (Eigen::Index j = 0; j < m; ++j) {
      y[j] = box_sample(lo1[j], hi1[j], rng);
      y2[j] = box_sample(lo2[j], hi2[j], rng);
    }
    if (((W * (y2 + shift - y)).array() < 0.0).any()) return false;
  }
  return true;
}

/// Coverage by sampling u in B(eps) and C: some u with W (y + u - y_star) >= 0.
inline bool sampled_covers(const Eigen::MatrixXd& W, const Eigen::VectorXd& y, const Eigen::VectorXd& y_star,
                           double eps, std::size_t samples, std::mt19937_64& rng) {
  const Eigen::Index m = y.size();
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (((W * (y - y_star)).array() >= 0.0).all()) return true;
  for (std::size_t k = 0; k < samples; ++k) {
    Eigen::VectorXd u(m);
    for (Eigen::Index j = 0; j < m; ++j) u[j] = normal(rng);
    u *= eps * std::pow(unit(rng), 1.0 / static_cast<double>(m)) / u.norm();
    if (!in_cone(W, u)) continue;
    if (((W * (y + u - y_star)).array() >= 0.0).all()) return true;
  }
  return false;
}

/// O(n^2) Pareto set under W: i survives unless some j has W(y_j - y_i) >= 0
/// with y_j != y_i.
inline std::vector<std::size_t> pareto_pairwise(const Eigen::MatrixXd& W, const Eigen::MatrixXd& y) {
  std::vector<std::size_t> out;
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    bool dominated = false;
    for (Eigen::Index j = 0; j < y.rows() && !dominated; ++j) {
      const Eigen::VectorXd d = (y.row(j) - y.row(i)).transpose();
      dominated = d.squaredNorm() > 0.0 && ((W * d).array() >= 0.0).all();
    }
    if (!dominated) out.push_back(static_cast<std::size_t>(i));
  }
  return out;
}

struct MonteCarlo {
  double value = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo measure of the union of boxes [ref, p] for the rows of pts.
inline MonteCarlo hypervolume_mc(const Eigen::MatrixXd& pts, const Eigen::VectorXd& ref, std::size_t samples,
                                 std::uint64_t seed) {
  const Eigen::Index m = ref.size();
  Eigen::VectorXd hi = ref;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) hi = hi.cwiseMax(pts.row(i).transpose());
  const double box = (hi - ref).prod();
  if (box <= 0.0) return {};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t hits = 0;
  Eigen::VectorXd s(m);
  for (std::size_t k = 0; k < samples; ++k) {
    for (Eigen::Index j = 0; j < m; ++j) s[j] = ref[j] + (hi[j] - ref[j]) * unit(rng);
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
      if ((pts.row(i).transpose().array() >= s.array()).all()) {
        ++hits;
        break;
      }
    }
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {box * p, box * std::sqrt(std::max(p * (1.0 - p), 1.0 / static_cast<double>(samples)) / static_cast<double>(samples))};
}

/// Dense-formula multi-output GP posterior with explicit (Mt x Mt) matrices,
/// for a diagonal output kernel with per-output SE kernels.
struct DenseGp {
  std::vector<Eigen::VectorXd> lengthscales;
  std::vector<double> variances;
  double noise = 0.01;

  double k(const Eigen::VectorXd& a, std::size_t p, const Eigen::VectorXd& b, std::size_t q) const {
    if (p != q) return 0.0;
    const Eigen::VectorXd d = (a - b).cwiseQuotient(lengthscales[p]);
    return variances[p] * std::exp(-0.5 * d.squaredNorm());
  }

  std::pair<Eigen::VectorXd, Eigen::VectorXd> posterior(const std::vector<Eigen::VectorXd>& xs,
                                                        const std::vector<Eigen::VectorXd>& ys,
                                                        const Eigen::VectorXd& x) const {
    const std::size_t m = variances.size();
    const std::size_t t = xs.size();
    const auto n = static_cast<Eigen::Index>(m * t);
    Eigen::MatrixXd K(n, n);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < t; ++i) {
      for (std::size_t p = 0; p < m; ++p) {
        y[static_cast<Eigen::Index>(i * m + p)] = ys[i][static_cast<Eigen::Index>(p)];
        for (std::size_t j = 0; j < t; ++j) {
          for (std::size_t q = 0; q < m; ++q) {
            K(static_cast<Eigen::Index>(i * m + p), static_cast<Eigen::Index>(j * m + q)) = k(xs[i], p, xs[j], q);
          }
        }
      }
    }
    K += noise * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd Kinv = K.inverse();
    Eigen::VectorXd mu(static_cast<Eigen::Index>(m)), sd(static_cast<Eigen::Index>(m));
    for (std::size_t p = 0; p < m; ++p) {
      Eigen::VectorXd kx(n);
      for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t q = 0; q < m; ++q) kx[static_cast<Eigen::Index>(i * m + q)] = k(x, p, xs[i], q);
      }
      mu[static_cast<Eigen::Index>(p)] = kx.dot(Kinv * y);
      sd[static_cast<Eigen::Index>(p)] = std::sqrt(std::max(0.0, k(x, p, x, p) - kx.dot(Kinv * kx)));
    }
    return {mu, sd};
  }
};

/// Exhaustive best information gain over multisets of size t drawn from the
/// rows of `gram` (single output), 0.5 ln det(I + K_S / noise).
inline double best_subset_info_gain(const Eigen::MatrixXd& gram, std::size_t t, double noise) {
  const auto n = static_cast<std::size_t>(gram.rows());
  std::vector<std::size_t> pick(t, 0);
  double best = 0.0;
  while (true) {
    const auto tt = static_cast<Eigen::Index>(t);
    Eigen::MatrixXd ks(tt, tt);
    for (std::size_t a = 0; a < t; ++a) {
      for (std::size_t b = 0; b < t; ++b) {
        ks(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            gram(static_cast<Eigen::Index>(pick[a]), static_cast<Eigen::Index>(pick[b]));
      }
    }
    const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(tt, tt) + ks / noise;
    best = std::max(best, 0.5 * std::log(m.determinant()));
    std::size_t k = t;
    while (k > 0 && pick[k - 1] == n - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t r = k; r < t; ++r) pick[r] = pick[k - 1];
  }
  return best;
}

}  // namespace oracle
