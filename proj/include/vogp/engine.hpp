#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "vogp/cone.hpp"
#include "vogp/convex.hpp"
#include "vogp/execution.hpp"
#include "vogp/gp.hpp"
#include "vogp/metrics.hpp"

namespace vogp {

/// Noisy objective evaluation of a design index. Owns its noise stream.
using Oracle = std::function<Eigen::VectorXd(std::size_t)>;

struct QueryRecord {
  std::size_t round = 0;
  std::size_t design = 0;
  Eigen::VectorXd observation;
};

struct RoundRecord {
  std::size_t round = 0;
  std::size_t undecided = 0;
  std::size_t predicted = 0;
  std::size_t discarded = 0;
  std::optional<std::size_t> selected;
  double omega_bar = 0.0;
  double beta = 0.0;
};

/// Per-run counts of broken invariants; all zero on a clean run. Rounds
/// with a coverage violation are exempt from the width and nesting checks.
struct InvariantViolations {
  std::size_t omega_increase = 0;
  std::size_t predicted_shrink = 0;
  std::size_t rect_not_nested = 0;
  std::size_t late_termination = 0;

  std::size_t total() const { return omega_increase + predicted_shrink + rect_not_nested + late_termination; }
};

struct AlgState {
  std::size_t round = 1;
  IndexSet undecided;
  IndexSet predicted;
  IndexSet discarded;
  /// Cumulative R_t per design; dropped (empty storage) once discarded.
  std::vector<Hyperrectangle> rects;
  std::vector<QueryRecord> queries;
  std::size_t coverage_violations = 0;
  double last_omega_bar = std::numeric_limits<double>::infinity();
  InvariantViolations violations;

  /// S_1 = all designs, P_1 empty, R_0 = whole space.
  static AlgState initial(std::size_t designs, Eigen::Index objectives);
  IndexSet active() const;
};

/// Handling of a component whose new confidence interval misses the
/// cumulative one: take the new interval, or collapse both bounds to
/// their midpoint clamped into the old interval.
enum class EmptyIntersection { reset, collapse };

struct VogpParams {
  double epsilon = 0.1;
  double delta = 0.05;
  double noise_std = 0.1;
  double beta_divisor = 1.0;
  std::size_t max_rounds = 100000;
  EmptyIntersection empty_intersection = EmptyIntersection::reset;
  Execution exec = Execution::serial;

  void validate() const;
};

/// Intersects the box `q` into `r`. Components whose intersection is
/// empty follow `policy`; returns true when that happened.
bool intersect_into(Hyperrectangle& r, const Hyperrectangle& q,
                    EmptyIntersection policy = EmptyIntersection::reset);

/// One round: modeling, discarding, Pareto identification, evaluation.
/// `beta` is the squared width multiplier of this round.
RoundRecord step(AlgState& state, SurrogateModel& model, const Eigen::MatrixXd& designs,
                 const VogpParams& params, const ConeOrder& cone, double beta, const Oracle& oracle);

struct RunResult {
  IndexSet pareto;
  std::vector<RoundRecord> rounds;
  std::vector<QueryRecord> queries;
  std::size_t coverage_violations = 0;
  bool max_rounds_exceeded = false;
  InvariantViolations violations;
  double wall_seconds = 0.0;

  std::size_t sample_complexity() const { return queries.size(); }
};

/// Squared width multiplier for round t given the model at round entry.
using WidthPolicy = std::function<double(std::size_t, const SurrogateModel&)>;

/// Runs VOGP over the rows of `designs` until every design is decided or
/// max_rounds is hit (flagged, partial P returned). Widths follow the
/// BetaSchedule of `params` unless a policy is given.
RunResult run(const Eigen::MatrixXd& designs, const KernelSpec& kernel, const VogpParams& params,
              const ConeOrder& cone, const Oracle& oracle, const WidthPolicy& policy = {});

/// Smallest t with sqrt(8 beta_t sigma^2 eta M gamma(t) / t) < eps / d_C,
/// eta = sigma^-2 / ln(1 + sigma^-2). Throws NotFound above `cap`.
std::size_t theoretical_sample_bound(const BetaSchedule& beta, double epsilon, double noise_std,
                                     const ConeOrder& cone, const std::function<double(std::size_t)>& gamma,
                                     std::size_t cap = 10'000'000);

}  // namespace vogp
