#include "vogp/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iterator>

#include "vogp/error.hpp"
#include "vogp/phases.hpp"

namespace vogp {

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

AlgState AlgState::initial(std::size_t designs, Eigen::Index objectives) {
  if (designs == 0) throw Error(ErrorCode::EmptyInput, "design set is empty");
  AlgState s;
  s.undecided.resize(designs);
  for (std::size_t i = 0; i < designs; ++i) s.undecided[i] = i;
  s.rects.assign(designs, Hyperrectangle::whole_space(objectives));
  return s;
}

IndexSet AlgState::active() const { return set_union(undecided, predicted); }

void VogpParams::validate() const {
  if (!(epsilon >= 0.0)) throw Error(ErrorCode::InvalidConfig, "epsilon must be nonnegative");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidConfig, "delta must lie in (0, 1)");
  if (!(noise_std > 0.0)) throw Error(ErrorCode::InvalidConfig, "noise_std must be positive");
  if (!(beta_divisor > 0.0)) throw Error(ErrorCode::InvalidConfig, "beta divisor must be positive");
}

bool intersect_into(Hyperrectangle& r, const Hyperrectangle& q, EmptyIntersection policy) {
  const Hyperrectangle prev = r;
  r.lower = r.lower.cwiseMax(q.lower);
  r.upper = r.upper.cwiseMin(q.upper);
  bool empty = false;
  for (Eigen::Index j = 0; j < r.dim(); ++j) {
    if (r.lower[j] <= r.upper[j]) continue;
    empty = true;
    if (policy == EmptyIntersection::reset) {
      r.lower[j] = q.lower[j];
      r.upper[j] = q.upper[j];
    } else {
      const double mid = std::clamp(0.5 * (r.lower[j] + r.upper[j]), prev.lower[j], prev.upper[j]);
      r.lower[j] = r.upper[j] = mid;
    }
  }
  return empty;
}

RoundRecord step(AlgState& state, SurrogateModel& model, const Eigen::MatrixXd& designs,
                 const VogpParams& params, const ConeOrder& cone, double beta, const Oracle& oracle) {
  if (state.undecided.empty()) throw Error(ErrorCode::EmptySet, "no undecided design left");
  RoundRecord rec;
  rec.round = state.round;
  rec.beta = beta;
  const IndexSet active = state.active();
  const IndexSet predicted_before = state.predicted;

  // Modeling.
  const PosteriorBatch pb = model.posterior_batch(select_rows(designs, active), params.exec);
  const double root = std::sqrt(beta);
  bool coverage_event = false;
  for (std::size_t k = 0; k < active.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    const Eigen::VectorXd mu = pb.mean.row(row).transpose();
    const Eigen::VectorXd half = root * pb.stddev.row(row).transpose();
    Hyperrectangle& r = state.rects[active[k]];
    const Hyperrectangle prev = r;
    if (intersect_into(r, Hyperrectangle(mu - half, mu + half), params.empty_intersection)) {
      ++state.coverage_violations;
      coverage_event = true;
    } else if (!prev.contains(r)) {
      ++state.violations.rect_not_nested;
    }
  }

  // Discarding.
  const IndexSet removed = discard_phase(state.rects, active, state.undecided, cone, params.epsilon, params.exec);
  state.undecided = set_minus(state.undecided, removed);
  state.discarded = set_union(state.discarded, removed);
  for (std::size_t x : removed) state.rects[x] = Hyperrectangle();

  // Pareto identification.
  const IndexSet remaining = state.active();
  const IndexSet moved =
      identification_phase(state.rects, remaining, state.undecided, cone, params.epsilon, params.exec);
  state.undecided = set_minus(state.undecided, moved);
  state.predicted = set_union(state.predicted, moved);

  double omega = 0.0;
  for (std::size_t x : remaining) omega = std::max(omega, state.rects[x].diagonal());
  rec.omega_bar = omega;
  if (omega > state.last_omega_bar && !coverage_event) ++state.violations.omega_increase;
  state.last_omega_bar = omega;
  if (!std::includes(state.predicted.begin(), state.predicted.end(), predicted_before.begin(),
                     predicted_before.end())) {
    ++state.violations.predicted_shrink;
  }
  if (omega < params.epsilon / cone.hardness() && !state.undecided.empty()) {
    ++state.violations.late_termination;
  }

  // Evaluating.
  if (!state.undecided.empty()) {
    const std::size_t sel = select_evaluation(state.rects, remaining);
    const Eigen::VectorXd y = oracle(sel);
    model.condition(designs.row(static_cast<Eigen::Index>(sel)).transpose(), y);
    state.queries.push_back({state.round, sel, y});
    rec.selected = sel;
  }
  rec.undecided = state.undecided.size();
  rec.predicted = state.predicted.size();
  rec.discarded = state.discarded.size();
  ++state.round;
  return rec;
}

RunResult run(const Eigen::MatrixXd& designs, const KernelSpec& kernel, const VogpParams& params,
              const ConeOrder& cone, const Oracle& oracle, const WidthPolicy& policy) {
  params.validate();
  if (kernel.outputs() != cone.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "kernel outputs do not match cone dimension");
  }
  const auto start = std::chrono::steady_clock::now();
  AlgState state = AlgState::initial(static_cast<std::size_t>(designs.rows()), cone.dim());
  SurrogateModel model(kernel, params.noise_std * params.noise_std);
  const BetaSchedule schedule{cone.dim(), static_cast<std::size_t>(designs.rows()), params.delta,
                              params.beta_divisor};
  RunResult out;
  while (!state.undecided.empty() && state.round <= params.max_rounds) {
    const double beta = policy ? policy(state.round, model) : schedule(state.round);
    out.rounds.push_back(step(state, model, designs, params, cone, beta, oracle));
  }
  out.max_rounds_exceeded = !state.undecided.empty();
  if (out.max_rounds_exceeded) {
    warn("max_rounds reached with " + std::to_string(state.undecided.size()) + " undecided designs");
  }
  out.pareto = state.predicted;
  out.queries = std::move(state.queries);
  out.coverage_violations = state.coverage_violations;
  out.violations = state.violations;
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::size_t theoretical_sample_bound(const BetaSchedule& beta, double epsilon, double noise_std,
                                     const ConeOrder& cone, const std::function<double(std::size_t)>& gamma,
                                     std::size_t cap) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::NotFound, "no finite bound for epsilon = 0");
  if (!(noise_std > 0.0)) throw Error(ErrorCode::InvalidConfig, "noise_std must be positive");
  const double s2 = noise_std * noise_std;
  const double eta = (1.0 / s2) / std::log1p(1.0 / s2);
  const double target = epsilon / cone.hardness();
  const double m = static_cast<double>(cone.dim());
  for (std::size_t t = 1; t <= cap; ++t) {
    const double lhs = std::sqrt(8.0 * beta(t) * s2 * eta * m * gamma(t) / static_cast<double>(t));
    if (lhs < target) return t;
  }
  throw Error(ErrorCode::NotFound, "sample bound exceeds the search cap");
}

}  // namespace vogp
