#include "vogp/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "vogp/dataset.hpp"
#include "vogp/error.hpp"
#include "vogp/metrics.hpp"
#include "vogp/objectives.hpp"

namespace vogp {

namespace {

using nlohmann::json;

constexpr std::uint64_t kVogpNoiseSalt = 0x766f6770;
constexpr std::uint64_t kNeNoiseSalt = 0x6e61697665;
constexpr std::size_t kPilotPerDim = 100;
constexpr std::size_t kFitPoints = 256;

std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
  return std::mt19937_64(seq);
}

Eigen::VectorXd noisy(const Eigen::VectorXd& y, double noise_std, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, noise_std);
  Eigen::VectorXd out = y;
  for (Eigen::Index p = 0; p < out.size(); ++p) out[p] += normal(rng);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

KernelSpec explicit_kernel(const RunConfig& config, Eigen::Index input_dim, Eigen::Index outputs) {
  if (config.lengthscales.size() != input_dim) {
    throw Error(ErrorCode::InvalidConfig, "lengthscales need one entry per design dimension");
  }
  const SquaredExponential se{config.lengthscales, config.signal_variance};
  return KernelSpec::per_output(std::vector<SquaredExponential>(static_cast<std::size_t>(outputs), se));
}

VogpParams base_params(const RunConfig& config) {
  VogpParams p;
  p.epsilon = config.epsilon;
  p.delta = config.delta;
  p.noise_std = config.noise_std;
  p.beta_divisor = config.beta_divisor;
  p.max_rounds = config.max_rounds;
  p.empty_intersection = config.empty_intersection;
  p.exec = config.parallel ? Execution::parallel : Execution::serial;
  return p;
}

Problem prepare_continuous(const RunConfig& config) {
  const std::string name = config.problem;
  const Eigen::Index d = builtin_input_dim(name);
  const Eigen::Index m = builtin_output_dim(name);

  const Eigen::MatrixXd pilot = uniform_grid(d, kPilotPerDim);
  Eigen::MatrixXd raw(pilot.rows(), m);
  for (Eigen::Index i = 0; i < pilot.rows(); ++i) raw.row(i) = builtin_objective(name, pilot.row(i).transpose());
  const Eigen::VectorXd lo = raw.colwise().minCoeff().transpose();
  Eigen::VectorXd range = raw.colwise().maxCoeff().transpose() - lo;
  for (Eigen::Index p = 0; p < m; ++p) {
    if (!(range[p] > 0.0)) range[p] = 1.0;
  }
  const Eigen::VectorXd center =
      ((raw.rowwise() - lo.transpose()).array().rowwise() / range.transpose().array()).colwise().mean().transpose();
  auto truth = [name, lo, range, center](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return (builtin_objective(name, x) - lo).cwiseQuotient(range) - center;
  };

  const ConeOrder cone = resolve_cone(config.cone, m);
  KernelSpec kernel;
  if (config.fit_kernel) {
    std::mt19937_64 rng(config.dataset_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::MatrixXd xs(static_cast<Eigen::Index>(kFitPoints), d);
    Eigen::MatrixXd ys(xs.rows(), m);
    for (Eigen::Index i = 0; i < xs.rows(); ++i) {
      for (Eigen::Index j = 0; j < d; ++j) xs(i, j) = unit(rng);
      ys.row(i) = truth(xs.row(i).transpose()).transpose();
    }
    FitOptions opts;
    opts.seed = config.dataset_seed;
    kernel = fit_hyperparameters(xs, ys, config.noise_std * config.noise_std, opts).kernel;
  } else {
    kernel = explicit_kernel(config, d, m);
  }

  const Eigen::MatrixXd grid = uniform_grid(d, config.truth_grid_per_dim);
  Eigen::MatrixXd values(grid.rows(), m);
  for (Eigen::Index i = 0; i < grid.rows(); ++i) values.row(i) = truth(grid.row(i).transpose()).transpose();
  const Execution exec = config.parallel ? Execution::parallel : Execution::serial;
  Problem out{name, cone, std::move(kernel), true, d, {}, {}, truth, {}};
  out.true_front = select_rows(values, true_pareto_front(values, cone, exec));
  return out;
}

double log10_floor(double v) { return std::log10(std::max(v, 1e-300)); }

void evaluate_hv(SeedOutcome& out, const Eigen::MatrixXd& predicted_values, const Eigen::MatrixXd& true_front,
                 const ConeOrder& cone, const std::optional<Eigen::VectorXd>& reference) {
  if (predicted_values.rows() == 0 || true_front.rows() == 0) return;
  const Eigen::VectorXd ref = reference ? *reference : default_reference(predicted_values, true_front, cone);
  if (ref.size() != cone.dim()) throw Error(ErrorCode::InvalidConfig, "reference dimension");
  out.hv_pred = cone_hypervolume(predicted_values, cone, ref);
  out.hv_true = cone_hypervolume(true_front, cone, ref);
  out.log10_hv_discrepancy = log10_floor(std::abs(*out.hv_true - *out.hv_pred));
}

SeedOutcome run_discrete_vogp(const Problem& problem, const RunConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng = seeded_rng(seed, kVogpNoiseSalt);
  const Oracle oracle = [&](std::size_t i) {
    return noisy(problem.objectives.row(static_cast<Eigen::Index>(i)).transpose(), config.noise_std, rng);
  };
  const RunResult r = run(problem.designs, problem.kernel, base_params(config), problem.cone, oracle);
  SeedOutcome out;
  out.seed = seed;
  out.algorithm = Algorithm::vogp;
  out.rounds = r.rounds;
  out.predicted = r.pareto;
  out.sample_complexity = r.sample_complexity();
  out.coverage_violations = r.coverage_violations;
  out.max_rounds_exceeded = r.max_rounds_exceeded;
  out.violations = r.violations;
  return out;
}

SeedOutcome run_continuous_seed(const Problem& problem, const RunConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng = seeded_rng(seed, kVogpNoiseSalt);
  const PointOracle oracle = [&](const Eigen::VectorXd& x) { return noisy(problem.truth(x), config.noise_std, rng); };
  ContinuousParams params;
  params.base = base_params(config);
  params.rkhs_bound = config.rkhs_bound;
  params.split_factor = config.split_factor;
  params.max_depth = config.max_depth;
  params.initial_depth = config.initial_depth;
  const WidthPolicy policy = rkhs_width_policy(config.rkhs_bound, config.delta, config.beta_divisor);
  const ContinuousResult r = run_continuous(problem.input_dim, problem.kernel, params, problem.cone, oracle, policy);

  SeedOutcome out;
  out.seed = seed;
  out.algorithm = Algorithm::vogp_continuous;
  for (const ContinuousRound& round : r.rounds) {
    out.rounds.push_back(round.record);
    out.active_leaves.push_back(round.active_leaves);
    out.depth_histograms.push_back(round.depth_histogram);
  }
  out.predicted = r.pareto_cells;
  out.sample_complexity = r.queries.size();
  out.coverage_violations = r.coverage_violations;
  out.max_rounds_exceeded = r.max_rounds_exceeded;
  out.violations = r.violations;

  const DenseFront dense = extract_dense_pareto(r.model, problem.input_dim, problem.cone, config.grid_per_dim,
                                                params.base.exec);
  Eigen::MatrixXd values(dense.designs.rows(), problem.cone.dim());
  for (Eigen::Index i = 0; i < values.rows(); ++i) values.row(i) = problem.truth(dense.designs.row(i).transpose()).transpose();
  evaluate_hv(out, values, problem.true_front, problem.cone, config.reference);
  return out;
}

void evaluate_discrete(SeedOutcome& out, const Problem& problem, const RunConfig& config) {
  const FrontEvaluation ev = evaluate_front(problem.objectives, problem.cone, out.predicted, config.epsilon);
  out.eps_f1 = ev.f1.score;
  out.pac_success = ev.pac_success;
  if (!out.predicted.empty()) {
    evaluate_hv(out, select_rows(problem.objectives, out.predicted), select_rows(problem.objectives, ev.true_pareto),
                problem.cone, config.reference);
  }
}

Aggregate aggregate(const std::vector<double>& v) {
  Aggregate a;
  a.runs = v.size();
  if (v.empty()) return a;
  for (double x : v) a.mean += x;
  a.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - a.mean) * (x - a.mean);
    a.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return a;
}

json to_json(const Aggregate& a) { return {{"runs", a.runs}, {"mean", a.mean}, {"std", a.stddev}}; }

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "vogp") return Algorithm::vogp;
  if (s == "ne") return Algorithm::ne;
  if (s == "vogp-continuous") return Algorithm::vogp_continuous;
  throw Error(ErrorCode::InvalidConfig, "unknown algorithm '" + s + "' in records");
}

}  // namespace

Problem make_discrete_problem(std::string name, Eigen::MatrixXd designs, Eigen::MatrixXd objectives,
                              KernelSpec kernel, ConeOrder cone) {
  if (designs.rows() != objectives.rows() || designs.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "designs and objectives need matching nonzero row counts");
  }
  if (objectives.cols() != cone.dim() || kernel.outputs() != cone.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "objective dimension vs cone");
  }
  kernel.validate();
  const Eigen::Index d = designs.cols();
  return Problem{std::move(name), std::move(cone), std::move(kernel), false, d, std::move(designs),
                 std::move(objectives), {}, {}};
}

ConeOrder resolve_cone(const std::string& spec, Eigen::Index objectives) {
  if (spec == "acute" || spec == "right" || spec == "obtuse") return builtin_cone(spec, objectives);
  ConeOrder cone = std::filesystem::is_regular_file(spec) ? parse_cone_spec(read_file(spec)) : parse_cone_spec(spec);
  if (cone.dim() != objectives) {
    throw Error(ErrorCode::DimensionMismatch, "cone has dimension " + std::to_string(cone.dim()) + " but the problem has " +
                                                  std::to_string(objectives) + " objectives");
  }
  return cone;
}

Problem prepare_problem(const RunConfig& config) {
  config.validate();
  const bool builtin = is_builtin_problem(config.problem);
  if (config.algorithm == Algorithm::vogp_continuous) {
    if (!builtin || !builtin_is_continuous(config.problem)) {
      throw Error(ErrorCode::InvalidConfig, "continuous mode needs a continuous builtin problem (BCC or ZDT3)");
    }
    return prepare_continuous(config);
  }
  const Dataset data = builtin ? builtin_dataset(config.problem, config.dataset_size, config.dataset_seed)
                               : load_dataset_csv(config.problem);
  const Eigen::MatrixXd centered = data.objectives.rowwise() - data.objectives.colwise().mean();
  ConeOrder cone = resolve_cone(config.cone, centered.cols());
  KernelSpec kernel;
  if (config.fit_kernel) {
    FitOptions opts;
    opts.seed = config.dataset_seed;
    opts.max_points = static_cast<std::size_t>(data.designs.rows());
    kernel = fit_hyperparameters(data.designs, centered, config.noise_std * config.noise_std, opts).kernel;
  } else {
    kernel = explicit_kernel(config, data.designs.cols(), centered.cols());
  }
  return make_discrete_problem(config.problem, data.designs, centered, std::move(kernel), std::move(cone));
}

IndexSet naive_elimination(const Eigen::MatrixXd& objectives, const ConeOrder& cone, std::size_t budget,
                           double noise_std, std::uint64_t seed) {
  if (budget == 0) throw Error(ErrorCode::InvalidConfig, "per-design budget must be at least 1");
  if (objectives.cols() != cone.dim()) throw Error(ErrorCode::DimensionMismatch, "objectives vs cone");
  std::mt19937_64 rng = seeded_rng(seed, kNeNoiseSalt);
  Eigen::MatrixXd means = Eigen::MatrixXd::Zero(objectives.rows(), objectives.cols());
  for (Eigen::Index i = 0; i < objectives.rows(); ++i) {
    for (std::size_t l = 0; l < budget; ++l) means.row(i) += noisy(objectives.row(i).transpose(), noise_std, rng).transpose();
  }
  means /= static_cast<double>(budget);
  return true_pareto_front(means, cone);
}

SeedOutcome run_seed(const Problem& problem, const RunConfig& config, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  SeedOutcome out;
  switch (config.algorithm) {
    case Algorithm::vogp_continuous:
      if (!problem.continuous) throw Error(ErrorCode::InvalidConfig, "continuous mode needs a continuous problem");
      out = run_continuous_seed(problem, config, seed);
      break;
    case Algorithm::vogp:
      if (problem.continuous) throw Error(ErrorCode::InvalidConfig, "vogp needs a discrete problem");
      out = run_discrete_vogp(problem, config, seed);
      evaluate_discrete(out, problem, config);
      break;
    case Algorithm::ne: {
      if (problem.continuous) throw Error(ErrorCode::InvalidConfig, "ne needs a discrete problem");
      std::size_t budget = 0;
      if (config.ne_budget) {
        budget = *config.ne_budget;
      } else {
        const std::size_t t = run_discrete_vogp(problem, config, seed).sample_complexity;
        const auto n = static_cast<std::size_t>(problem.designs.rows());
        budget = std::max<std::size_t>(1, (t + n - 1) / n);
      }
      out.seed = seed;
      out.algorithm = Algorithm::ne;
      out.ne_budget = budget;
      out.predicted = naive_elimination(problem.objectives, problem.cone, budget, config.noise_std, seed);
      out.sample_complexity = budget * static_cast<std::size_t>(problem.designs.rows());
      evaluate_discrete(out, problem, config);
      break;
    }
  }
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

ExperimentSummary summarize(std::string problem, Algorithm algorithm, std::vector<SeedOutcome> seeds) {
  ExperimentSummary s;
  s.problem = std::move(problem);
  s.algorithm = algorithm;
  std::vector<double> sc, f1, pac, hv, cov, wall;
  for (const SeedOutcome& o : seeds) {
    sc.push_back(static_cast<double>(o.sample_complexity));
    if (o.eps_f1) f1.push_back(*o.eps_f1);
    if (o.pac_success) pac.push_back(*o.pac_success ? 1.0 : 0.0);
    if (o.log10_hv_discrepancy) hv.push_back(*o.log10_hv_discrepancy);
    cov.push_back(static_cast<double>(o.coverage_violations));
    wall.push_back(o.wall_seconds);
  }
  s.sample_complexity = aggregate(sc);
  s.eps_f1 = aggregate(f1);
  s.pac_success = aggregate(pac);
  s.log10_hv_discrepancy = aggregate(hv);
  s.coverage_violations = aggregate(cov);
  s.wall_seconds = aggregate(wall);
  s.seeds = std::move(seeds);
  return s;
}

ExperimentSummary run_experiment(const RunConfig& config, std::uint64_t seed_offset) {
  const Problem problem = prepare_problem(config);
  std::vector<SeedOutcome> outcomes(config.seeds.size());
  std::exception_ptr error;
  const auto count = static_cast<long long>(config.seeds.size());
#pragma omp parallel for schedule(dynamic, 1) if (!config.parallel)
  for (long long k = 0; k < count; ++k) {
    try {
      const auto idx = static_cast<std::size_t>(k);
      outcomes[idx] = run_seed(problem, config, config.seeds[idx] + seed_offset);
    } catch (...) {
#pragma omp critical(vogp_experiment)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  ExperimentSummary summary = summarize(config.problem, config.algorithm, std::move(outcomes));
  summary.kernel = problem.kernel;
  if (!config.outdir.empty()) write_outputs(summary, config.outdir);
  return summary;
}

std::string seed_records_jsonl(const SeedOutcome& o) {
  std::string out;
  for (std::size_t k = 0; k < o.rounds.size(); ++k) {
    const RoundRecord& r = o.rounds[k];
    json j{{"type", "round"},
           {"round", r.round},
           {"undecided", r.undecided},
           {"predicted", r.predicted},
           {"discarded", r.discarded},
           {"selected", optional_json(r.selected)},
           {"omega_bar", r.omega_bar},
           {"beta", r.beta}};
    if (k < o.active_leaves.size()) j["active_leaves"] = o.active_leaves[k];
    if (k < o.depth_histograms.size()) j["depth_histogram"] = o.depth_histograms[k];
    out += j.dump() + "\n";
  }
  json s{{"type", "summary"},
         {"seed", o.seed},
         {"algorithm", to_string(o.algorithm)},
         {"pareto", o.predicted},
         {"queries", o.sample_complexity},
         {"coverage_violations", o.coverage_violations},
         {"max_rounds_exceeded", o.max_rounds_exceeded},
         {"invariant_violations",
          {{"omega_increase", o.violations.omega_increase},
           {"predicted_shrink", o.violations.predicted_shrink},
           {"rect_not_nested", o.violations.rect_not_nested},
           {"late_termination", o.violations.late_termination}}},
         {"ne_budget", optional_json(o.ne_budget)},
         {"eps_f1", optional_json(o.eps_f1)},
         {"pac_success", optional_json(o.pac_success)},
         {"hv_c_pred", optional_json(o.hv_pred)},
         {"hv_c_true", optional_json(o.hv_true)},
         {"log10_hv_discrepancy", optional_json(o.log10_hv_discrepancy)},
         {"wall_seconds", o.wall_seconds}};
  out += s.dump() + "\n";
  return out;
}

std::string summary_json(const ExperimentSummary& s) {
  json seeds = json::array();
  for (const SeedOutcome& o : s.seeds) seeds.push_back(o.seed);
  json j{{"problem", s.problem},
               {"algorithm", to_string(s.algorithm)},
               {"seeds", seeds},
               {"sample_complexity", to_json(s.sample_complexity)},
               {"eps_f1", to_json(s.eps_f1)},
               {"pac_success_rate", to_json(s.pac_success)},
               {"log10_hv_discrepancy", to_json(s.log10_hv_discrepancy)},
               {"coverage_violations", to_json(s.coverage_violations)},
               {"wall_seconds", to_json(s.wall_seconds)}};
  if (s.kernel) {
    json outputs = json::array();
    for (Eigen::Index p = 0; p < s.kernel->outputs(); ++p) {
      const SquaredExponential& k = s.kernel->design_for(p);
      outputs.push_back({{"lengthscales", std::vector<double>(k.lengthscales.data(), k.lengthscales.data() + k.lengthscales.size())},
                         {"signal_variance", k.signal_variance * s.kernel->output(p, p)}});
    }
    j["kernel"] = outputs;
  }
  return j.dump(2) + "\n";
}

std::string curves_csv(const ExperimentSummary& s) {
  std::ostringstream out;
  out.precision(17);
  out << "seed,round,omega_bar,undecided,predicted,d_hv\n";
  for (const SeedOutcome& o : s.seeds) {
    for (std::size_t k = 0; k < o.rounds.size(); ++k) {
      const RoundRecord& r = o.rounds[k];
      out << o.seed << ',' << r.round << ',' << r.omega_bar << ',' << r.undecided << ',' << r.predicted << ',';
      if (k + 1 == o.rounds.size() && o.hv_pred && o.hv_true) out << std::abs(*o.hv_true - *o.hv_pred);
      out << '\n';
    }
  }
  return out.str();
}

void write_outputs(const ExperimentSummary& s, const std::string& outdir) {
  std::filesystem::create_directories(outdir);
  auto write = [&](const std::string& name, const std::string& text) {
    const std::string path = (std::filesystem::path(outdir) / name).string();
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::Io, "cannot write " + path);
    f << text;
  };
  for (const SeedOutcome& o : s.seeds) write("seed_" + std::to_string(o.seed) + ".jsonl", seed_records_jsonl(o));
  write("summary.json", summary_json(s));
  write("curves.csv", curves_csv(s));
}

ExperimentSummary load_records(const std::string& path) {
  std::vector<std::string> files;
  if (std::filesystem::is_directory(path)) {
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      const std::string name = entry.path().filename().string();
      if (name.starts_with("seed_") && name.ends_with(".jsonl")) files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  if (files.empty()) throw Error(ErrorCode::Io, "no seed_<k>.jsonl records under " + path);

  std::vector<SeedOutcome> outcomes;
  std::string problem;
  std::optional<Algorithm> algorithm;
  for (const std::string& file : files) {
    std::istringstream in(read_file(file));
    std::string line;
    SeedOutcome o;
    bool done = false;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j;
      try {
        j = json::parse(line);
        if (j.at("type") == "round") {
          RoundRecord r;
          r.round = j.at("round");
          r.undecided = j.at("undecided");
          r.predicted = j.at("predicted");
          r.discarded = j.at("discarded");
          if (!j.at("selected").is_null()) r.selected = j.at("selected").get<std::size_t>();
          r.omega_bar = j.at("omega_bar");
          r.beta = j.at("beta");
          o.rounds.push_back(r);
          continue;
        }
        o.seed = j.at("seed");
        o.algorithm = parse_algorithm(j.at("algorithm"));
        o.predicted = j.at("pareto").get<IndexSet>();
        o.sample_complexity = j.at("queries");
        o.coverage_violations = j.at("coverage_violations");
        o.max_rounds_exceeded = j.at("max_rounds_exceeded");
        const json& v = j.at("invariant_violations");
        o.violations = {v.at("omega_increase"), v.at("predicted_shrink"), v.at("rect_not_nested"),
                        v.at("late_termination")};
        if (!j.at("ne_budget").is_null()) o.ne_budget = j.at("ne_budget").get<std::size_t>();
        if (!j.at("eps_f1").is_null()) o.eps_f1 = j.at("eps_f1").get<double>();
        if (!j.at("pac_success").is_null()) o.pac_success = j.at("pac_success").get<bool>();
        if (!j.at("hv_c_pred").is_null()) o.hv_pred = j.at("hv_c_pred").get<double>();
        if (!j.at("hv_c_true").is_null()) o.hv_true = j.at("hv_c_true").get<double>();
        if (!j.at("log10_hv_discrepancy").is_null()) o.log10_hv_discrepancy = j.at("log10_hv_discrepancy").get<double>();
        o.wall_seconds = j.at("wall_seconds");
        done = true;
      } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, file + ": malformed record: " + e.what());
      }
    }
    if (!done) throw Error(ErrorCode::InvalidConfig, file + ": missing summary record");
    if (algorithm && *algorithm != o.algorithm) throw Error(ErrorCode::InvalidConfig, "records mix algorithms");
    algorithm = o.algorithm;
    outcomes.push_back(std::move(o));
  }
  const std::filesystem::path summary_path =
      std::filesystem::is_directory(path) ? std::filesystem::path(path) / "summary.json" : std::filesystem::path();
  if (!summary_path.empty() && std::filesystem::exists(summary_path)) {
    try {
      problem = json::parse(read_file(summary_path.string())).at("problem").get<std::string>();
    } catch (const json::exception&) {
      problem.clear();
    }
  }
  std::sort(outcomes.begin(), outcomes.end(), [](const SeedOutcome& a, const SeedOutcome& b) { return a.seed < b.seed; });
  return summarize(problem, *algorithm, std::move(outcomes));
}

}  // namespace vogp
