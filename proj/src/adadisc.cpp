#include "vogp/adadisc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iterator>

#include "vogp/error.hpp"
#include "vogp/phases.hpp"

namespace vogp {

CellTree::CellTree(Eigen::Index dim, int max_depth) : dim_(dim), max_depth_(max_depth) {
  if (dim <= 0) throw Error(ErrorCode::DimensionMismatch, "cell tree needs a positive dimension");
  if (dim > 16) throw Error(ErrorCode::DimensionMismatch, "cell tree supports at most 16 dimensions");
  if (max_depth < 0) throw Error(ErrorCode::InvalidConfig, "max depth must be nonnegative");
  Cell root;
  root.lower = Eigen::VectorXd::Zero(dim);
  root.upper = Eigen::VectorXd::Ones(dim);
  nodes_.push_back(std::move(root));
}

std::vector<std::size_t> CellTree::refine(std::size_t leaf) {
  Cell& c = nodes_.at(leaf);
  if (c.status == CellStatus::expanded) throw Error(ErrorCode::AlreadyExpanded, "cell already split");
  if (c.status == CellStatus::pruned) throw Error(ErrorCode::InvalidConfig, "cannot split a pruned cell");
  if (c.depth >= max_depth_) throw Error(ErrorCode::DepthExceeded, "cell is at max depth");
  const Eigen::VectorXd lo = c.lower;
  const Eigen::VectorXd hi = c.upper;
  const Eigen::VectorXd mid = c.center();
  const int depth = c.depth + 1;
  c.status = CellStatus::expanded;
  std::vector<std::size_t> ids;
  const unsigned count = 1u << static_cast<unsigned>(dim_);
  for (unsigned mask = 0; mask < count; ++mask) {
    Cell child;
    child.lower.resize(dim_);
    child.upper.resize(dim_);
    for (Eigen::Index j = 0; j < dim_; ++j) {
      const bool upper_half = (mask >> j) & 1u;
      child.lower[j] = upper_half ? mid[j] : lo[j];
      child.upper[j] = upper_half ? hi[j] : mid[j];
    }
    child.depth = depth;
    ids.push_back(nodes_.size());
    nodes_.push_back(std::move(child));
  }
  nodes_[leaf].children = ids;
  return ids;
}

void CellTree::prune(std::size_t leaf) {
  Cell& c = nodes_.at(leaf);
  if (c.status != CellStatus::active) throw Error(ErrorCode::InvalidConfig, "only active leaves can be pruned");
  c.status = CellStatus::pruned;
}

void CellTree::expand_to(int depth) {
  if (depth > max_depth_) throw Error(ErrorCode::DepthExceeded, "initial depth exceeds max depth");
  for (int d = 0; d < depth; ++d) {
    for (std::size_t id : active_leaves()) {
      if (nodes_[id].depth < depth) refine(id);
    }
  }
}

IndexSet CellTree::active_leaves() const {
  IndexSet out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].status == CellStatus::active) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> CellTree::depth_histogram() const {
  std::vector<std::size_t> h(static_cast<std::size_t>(max_depth_) + 1, 0);
  for (const Cell& c : nodes_) {
    if (c.status == CellStatus::active) ++h[static_cast<std::size_t>(c.depth)];
  }
  return h;
}

WidthPolicy rkhs_width_policy(double rkhs_bound, double delta, double divisor) {
  if (!(delta > 0.0 && delta < 1.0) || !(divisor > 0.0) || !(rkhs_bound >= 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "bad width policy parameters");
  }
  return [=](std::size_t, const SurrogateModel& model) {
    const double root = rkhs_bound + std::sqrt(2.0 * (model.information_gain() + 1.0 + std::log(1.0 / delta)));
    return root * root / divisor;
  };
}

namespace {

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet set_minus(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

ContinuousResult run_continuous(Eigen::Index dim, const KernelSpec& kernel, const ContinuousParams& params,
                                const ConeOrder& cone, const PointOracle& oracle, const WidthPolicy& policy) {
  params.base.validate();
  if (kernel.input_dim() != dim) throw Error(ErrorCode::DimensionMismatch, "kernel input dimension");
  if (kernel.outputs() != cone.dim()) throw Error(ErrorCode::DimensionMismatch, "kernel outputs vs cone");
  if (!(params.split_factor > 0.0)) throw Error(ErrorCode::InvalidConfig, "split factor must be positive");
  if (!policy) throw Error(ErrorCode::InvalidConfig, "continuous mode needs a width policy");
  const auto start = std::chrono::steady_clock::now();
  const double eps = params.base.epsilon;
  const Execution exec = params.base.exec;

  ContinuousResult out{CellTree(dim, params.max_depth), {}, {}, {}, {}, 0, false, {},
                       SurrogateModel(kernel, params.base.noise_std * params.base.noise_std), 0.0};
  CellTree& tree = out.tree;
  SurrogateModel& model = out.model;
  tree.expand_to(params.initial_depth);

  std::vector<Hyperrectangle> rects;
  auto grow = [&] { rects.resize(tree.nodes().size(), Hyperrectangle::whole_space(cone.dim())); };
  grow();

  // Intersects the current confidence boxes into the rectangles of `cells`.
  auto model_cells = [&](const IndexSet& cells, double beta) {
    if (cells.empty()) return;
    Eigen::MatrixXd centers(static_cast<Eigen::Index>(cells.size()), dim);
    for (std::size_t k = 0; k < cells.size(); ++k) {
      centers.row(static_cast<Eigen::Index>(k)) = tree.node(cells[k]).center().transpose();
    }
    const PosteriorBatch pb = model.posterior_batch(centers, exec);
    const double root = std::sqrt(beta);
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const auto row = static_cast<Eigen::Index>(k);
      const Eigen::VectorXd mu = pb.mean.row(row).transpose();
      const Eigen::VectorXd half = root * pb.stddev.row(row).transpose();
      Hyperrectangle& r = rects[cells[k]];
      const Hyperrectangle prev = r;
      if (intersect_into(r, Hyperrectangle(mu - half, mu + half), params.base.empty_intersection)) {
        ++out.coverage_violations;
      } else if (!prev.contains(r)) {
        ++out.violations.rect_not_nested;
      }
    }
  };

  IndexSet undecided = tree.active_leaves();
  IndexSet predicted;
  std::size_t t = 1;
  while (!undecided.empty() && t <= params.base.max_rounds) {
    ContinuousRound round;
    round.record.round = t;
    const double beta = policy(t, model);
    round.record.beta = beta;
    const IndexSet predicted_before = predicted;

    const IndexSet active = set_union(undecided, predicted);
    model_cells(active, beta);

    const IndexSet removed = discard_phase(rects, active, undecided, cone, eps, exec);
    for (std::size_t x : removed) {
      tree.prune(x);
      rects[x] = Hyperrectangle();
    }
    undecided = set_minus(undecided, removed);

    // Refinement of confident leaves; children are modeled right away.
    IndexSet kept;
    IndexSet fresh;
    for (std::size_t x : undecided) {
      const Cell& c = tree.node(x);
      if (c.depth < tree.max_depth() && rects[x].diagonal() <= params.split_factor * c.diameter()) {
        const std::vector<std::size_t> kids = tree.refine(x);
        fresh.insert(fresh.end(), kids.begin(), kids.end());
        rects[x] = Hyperrectangle();
        ++round.splits;
      } else {
        kept.push_back(x);
      }
    }
    grow();
    model_cells(fresh, beta);
    undecided = set_union(kept, fresh);

    const bool settled = std::all_of(undecided.begin(), undecided.end(),
                                     [&](std::size_t x) { return tree.node(x).depth == tree.max_depth(); });
    const IndexSet competitors = set_union(undecided, predicted);
    if (settled) {
      const IndexSet moved = identification_phase(rects, competitors, undecided, cone, eps, exec);
      undecided = set_minus(undecided, moved);
      predicted = set_union(predicted, moved);
    }
    if (!std::includes(predicted.begin(), predicted.end(), predicted_before.begin(), predicted_before.end())) {
      ++out.violations.predicted_shrink;
    }

    double omega = 0.0;
    for (std::size_t x : competitors) omega = std::max(omega, rects[x].diagonal());
    round.record.omega_bar = omega;

    if (!undecided.empty()) {
      const std::size_t sel = select_evaluation(rects, competitors);
      const Eigen::VectorXd x = tree.node(sel).center();
      const Eigen::VectorXd y = oracle(x);
      model.condition(x, y);
      out.queries.push_back({t, sel, y});
      out.query_points.push_back(x);
      round.record.selected = sel;
    }
    round.record.undecided = undecided.size();
    round.record.predicted = predicted.size();
    round.record.discarded = removed.size() + (out.rounds.empty() ? 0 : out.rounds.back().record.discarded);
    round.active_leaves = tree.active_leaves().size();
    round.depth_histogram = tree.depth_histogram();
    out.rounds.push_back(std::move(round));
    ++t;
  }
  out.max_rounds_exceeded = !undecided.empty();
  if (out.max_rounds_exceeded) {
    warn("max_rounds reached with " + std::to_string(undecided.size()) + " undecided cells");
  }
  out.pareto_cells = predicted;
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

Eigen::MatrixXd uniform_grid(Eigen::Index dim, std::size_t per_dim) {
  if (dim <= 0 || per_dim == 0) throw Error(ErrorCode::InvalidConfig, "grid needs a positive size");
  const double total = std::pow(static_cast<double>(per_dim), static_cast<double>(dim));
  if (total > 1e6) throw Error(ErrorCode::GridTooLarge, "grid exceeds 1e6 points");
  const auto n = static_cast<Eigen::Index>(std::llround(total));
  Eigen::VectorXd axis(static_cast<Eigen::Index>(per_dim));
  if (per_dim == 1) {
    axis[0] = 0.5;
  } else {
    axis = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(per_dim), 0.0, 1.0);
  }
  Eigen::MatrixXd g(n, dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index rest = i;
    for (Eigen::Index j = 0; j < dim; ++j) {
      g(i, j) = axis[rest % static_cast<Eigen::Index>(per_dim)];
      rest /= static_cast<Eigen::Index>(per_dim);
    }
  }
  return g;
}

DenseFront extract_dense_pareto(const SurrogateModel& model, Eigen::Index dim, const ConeOrder& cone,
                                std::size_t grid_per_dim, Execution exec) {
  const Eigen::MatrixXd grid = uniform_grid(dim, grid_per_dim);
  const PosteriorBatch pb = model.posterior_batch(grid, exec);
  const IndexSet front = true_pareto_front(pb.mean, cone, exec);
  return {select_rows(grid, front), select_rows(pb.mean, front)};
}

}  // namespace vogp
