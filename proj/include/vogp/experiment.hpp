#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vogp/adadisc.hpp"
#include "vogp/config.hpp"
#include "vogp/cone.hpp"
#include "vogp/engine.hpp"
#include "vogp/gp.hpp"

namespace vogp {

/// A prepared benchmark instance. Objective values are min-max scaled and
/// then centered by their mean, which leaves every decision unchanged.
struct Problem {
  std::string name;
  ConeOrder cone;
  KernelSpec kernel;
  bool continuous = false;
  Eigen::Index input_dim = 0;
  /// Discrete instances: designs in [0,1]^D and their true objectives.
  Eigen::MatrixXd designs;
  Eigen::MatrixXd objectives;
  /// Continuous instances: the scaled objective and the Pareto values of
  /// the truth grid.
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> truth;
  Eigen::MatrixXd true_front;
};

Problem make_discrete_problem(std::string name, Eigen::MatrixXd designs, Eigen::MatrixXd objectives,
                              KernelSpec kernel, ConeOrder cone);

/// Resolves a cone spec (builtin name, theta:<deg>, matrix text or file)
/// for M objectives.
ConeOrder resolve_cone(const std::string& spec, Eigen::Index objectives);

/// Loads or generates the problem, builds the cone and fits or sets the
/// kernel. Throws before any query on invalid input.
Problem prepare_problem(const RunConfig& config);

struct SeedOutcome {
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::vogp;
  std::vector<RoundRecord> rounds;
  std::vector<std::size_t> active_leaves;
  std::vector<std::vector<std::size_t>> depth_histograms;
  IndexSet predicted;
  std::size_t sample_complexity = 0;
  std::size_t coverage_violations = 0;
  bool max_rounds_exceeded = false;
  InvariantViolations violations;
  std::optional<std::size_t> ne_budget;
  std::optional<double> eps_f1;
  std::optional<bool> pac_success;
  std::optional<double> hv_pred;
  std::optional<double> hv_true;
  std::optional<double> log10_hv_discrepancy;
  double wall_seconds = 0.0;
};

/// Samples each row L times with seeded Gaussian noise and returns the
/// cone-Pareto set of the sample means.
IndexSet naive_elimination(const Eigen::MatrixXd& objectives, const ConeOrder& cone, std::size_t budget,
                           double noise_std, std::uint64_t seed);

/// Runs the configured algorithm on one seed and evaluates it.
SeedOutcome run_seed(const Problem& problem, const RunConfig& config, std::uint64_t seed);

struct Aggregate {
  std::size_t runs = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single run
};

struct ExperimentSummary {
  std::string problem;
  Algorithm algorithm = Algorithm::vogp;
  std::vector<SeedOutcome> seeds;
  std::optional<KernelSpec> kernel;
  Aggregate sample_complexity;
  Aggregate eps_f1;
  Aggregate pac_success;
  Aggregate log10_hv_discrepancy;
  Aggregate coverage_violations;
  Aggregate wall_seconds;
};

ExperimentSummary summarize(std::string problem, Algorithm algorithm, std::vector<SeedOutcome> seeds);

/// Runs every seed (shifted by seed_offset) in parallel and, when outdir
/// is set, writes seed_<k>.jsonl, summary.json and curves.csv.
ExperimentSummary run_experiment(const RunConfig& config, std::uint64_t seed_offset = 0);

/// JSON-lines stream of one seed: a record per round, then a summary.
std::string seed_records_jsonl(const SeedOutcome& outcome);
std::string summary_json(const ExperimentSummary& summary);
std::string curves_csv(const ExperimentSummary& summary);
void write_outputs(const ExperimentSummary& summary, const std::string& outdir);

/// Rebuilds the aggregate from seed_<k>.jsonl files (a directory or one
/// file). Throws Io or InvalidConfig on unreadable records.
ExperimentSummary load_records(const std::string& path);

}  // namespace vogp
