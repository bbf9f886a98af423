#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "vogp/convex.hpp"
#include "vogp/execution.hpp"

namespace vogp {

/// ARD squared exponential: s2 * exp(-0.5 * sum_d ((x_d - x'_d) / l_d)^2).
struct SquaredExponential {
  Eigen::VectorXd lengthscales;
  double signal_variance = 1.0;

  double operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& x2) const;
  /// Gram matrix between the rows of a and the rows of b.
  Eigen::MatrixXd gram(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const;
};

/// Multi-output kernel k((x,p),(x',q)).
///
/// With a single design kernel the kernel is separable: k~(x,x') * B(p,q).
/// With one design kernel per output, B must be diagonal and output p
/// uses design[p] scaled by B(p,p).
struct KernelSpec {
  std::vector<SquaredExponential> design;
  Eigen::MatrixXd output;

  static KernelSpec separable(SquaredExponential k, Eigen::Index outputs);
  static KernelSpec per_output(std::vector<SquaredExponential> kernels);

  Eigen::Index outputs() const { return output.rows(); }
  Eigen::Index input_dim() const;
  bool output_diagonal() const;
  const SquaredExponential& design_for(Eigen::Index p) const;
  /// Throws InvalidConfig or DimensionMismatch on a malformed spec.
  void validate() const;
  /// Prior covariance of outputs p at x and q at x2.
  double covariance(const Eigen::VectorXd& x, Eigen::Index p, const Eigen::VectorXd& x2,
                    Eigen::Index q) const;
  /// Dense Mt x Mt Gram over the rows of `designs`, index i*M + p.
  Eigen::MatrixXd dense_gram(const Eigen::MatrixXd& designs) const;
};

struct Posterior {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;
};

struct PosteriorBatch {
  Eigen::MatrixXd mean;    // n x M
  Eigen::MatrixXd stddev;  // n x M
};

/// Multi-output GP conditioned on noisy vector observations.
///
/// Replicated designs are stored once with their observation mean and
/// noise variance sigma^2 / count, which leaves the posterior unchanged.
/// Single writer: condition() must not overlap any read.
class SurrogateModel {
 public:
  SurrogateModel(KernelSpec kernel, double noise_variance);

  void condition(const Eigen::VectorXd& x, const Eigen::VectorXd& y);
  Posterior posterior(const Eigen::VectorXd& x) const;
  /// Full M x M posterior covariance at x.
  Eigen::MatrixXd posterior_covariance(const Eigen::VectorXd& x) const;
  PosteriorBatch posterior_batch(const Eigen::MatrixXd& xs, Execution exec = Execution::serial) const;
  Hyperrectangle confidence_rect(const Eigen::VectorXd& x, double beta) const;

  /// I(y; f) of all observations so far: 0.5 ln det(I + sigma^-2 K).
  double information_gain() const;

  /// Rebuilds every factor from scratch.
  void refactor();

  const KernelSpec& kernel() const { return kernel_; }
  double noise_variance() const { return noise_; }
  std::size_t observation_count() const { return observations_; }
  std::size_t site_count() const { return sites_.size(); }
  /// Lower factors: one per output when B is diagonal, else one Mu x Mu.
  const std::vector<Eigen::MatrixXd>& factors() const { return factors_; }

 private:
  bool coupled() const { return !diagonal_; }
  Eigen::Index factor_size(std::size_t f) const;
  Eigen::MatrixXd factor_gram(std::size_t f) const;
  Eigen::VectorXd factor_targets(std::size_t f) const;
  void factorize(std::size_t f);
  bool extend(std::size_t f);
  void update_weights();

  KernelSpec kernel_;
  double noise_;
  bool diagonal_;
  Eigen::Index m_;
  std::vector<Eigen::VectorXd> sites_;
  std::vector<Eigen::VectorXd> sums_;
  std::vector<std::size_t> counts_;
  std::size_t observations_ = 0;
  std::size_t since_refactor_ = 0;
  std::vector<Eigen::MatrixXd> factors_;
  std::vector<Eigen::VectorXd> weights_;
  std::vector<double> jitter_;
};

/// Confidence width schedule 2 ln(M pi^2 |X| t^2 / (3 delta)) / divisor.
struct BetaSchedule {
  Eigen::Index outputs = 2;
  std::size_t cardinality = 1;
  double delta = 0.05;
  double scale_divisor = 1.0;

  double operator()(std::size_t t) const;
};

double beta_value(const BetaSchedule& schedule, std::size_t t);

/// 0.5 ln det(I + sigma^-2 K_A) over the rows of `designs`.
double empirical_info_gain(const KernelSpec& kernel, const Eigen::MatrixXd& designs, double noise_variance);

/// Greedy information gain with replacement: entry t-1 is the value after
/// t greedy picks from the rows of `candidates`.
std::vector<double> greedy_max_info_gain(const KernelSpec& kernel, const Eigen::MatrixXd& candidates,
                                         std::size_t t, double noise_variance);

/// Upper bound on the information gain of any t picks with replacement:
/// 0.5 sum_k ln(1 + sigma^-2 t lambda_k) over the eigenvalues of the
/// candidates' dense Gram.
double spectral_info_gain_bound(const KernelSpec& kernel, const Eigen::MatrixXd& candidates, double t,
                                double noise_variance);

struct FitReport {
  KernelSpec kernel;
  std::vector<double> log_likelihood;                // per output, at the optimum
  std::vector<std::vector<double>> start_likelihood; // per output, per restart start
};

struct FitOptions {
  std::size_t restarts = 5;
  std::size_t max_iterations = 200;
  std::size_t max_points = 256;
  std::uint64_t seed = 0;
};

/// Log marginal likelihood of centered targets y under kernel k and noise.
double log_marginal_likelihood(const SquaredExponential& k, const Eigen::MatrixXd& designs,
                               const Eigen::VectorXd& y, double noise_variance,
                               Eigen::VectorXd* gradient = nullptr);

/// Per-output maximum-likelihood fit of ARD lengthscales and signal
/// variance (capped at 1) with B = I. Throws DegenerateData when every
/// design is identical.
FitReport fit_hyperparameters(const Eigen::MatrixXd& designs, const Eigen::MatrixXd& targets,
                              double noise_variance, const FitOptions& options = {});

}  // namespace vogp
