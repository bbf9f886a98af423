#include "vogp/gp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vogp/error.hpp"

namespace vogp {

namespace {

constexpr std::size_t kRefactorEvery = 64;
constexpr double kJitterStart = 1e-10;
constexpr double kJitterMax = 1e-6;
constexpr Eigen::Index kBatchChunk = 256;

void require_finite(const Eigen::VectorXd& v, const char* what) {
  if (!v.allFinite()) throw Error(ErrorCode::NonFiniteInput, std::string(what) + " has non-finite entries");
}

}  // namespace

double SquaredExponential::operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& x2) const {
  return signal_variance * std::exp(-0.5 * (x - x2).cwiseQuotient(lengthscales).squaredNorm());
}

Eigen::MatrixXd SquaredExponential::gram(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const {
  const Eigen::VectorXd inv = lengthscales.cwiseInverse();
  const Eigen::MatrixXd as = a * inv.asDiagonal();
  const Eigen::MatrixXd bs = b * inv.asDiagonal();
  const Eigen::VectorXd an = as.rowwise().squaredNorm();
  const Eigen::VectorXd bn = bs.rowwise().squaredNorm();
  Eigen::MatrixXd d2 = (-2.0 * as * bs.transpose()).colwise() + an;
  d2.rowwise() += bn.transpose();
  return signal_variance * (-0.5 * d2.cwiseMax(0.0)).array().exp().matrix();
}

KernelSpec KernelSpec::separable(SquaredExponential k, Eigen::Index outputs) {
  KernelSpec spec;
  spec.design.push_back(std::move(k));
  spec.output = Eigen::MatrixXd::Identity(outputs, outputs);
  return spec;
}

KernelSpec KernelSpec::per_output(std::vector<SquaredExponential> kernels) {
  KernelSpec spec;
  const auto m = static_cast<Eigen::Index>(kernels.size());
  spec.design = std::move(kernels);
  spec.output = Eigen::MatrixXd::Identity(m, m);
  return spec;
}

Eigen::Index KernelSpec::input_dim() const {
  return design.empty() ? 0 : design.front().lengthscales.size();
}

bool KernelSpec::output_diagonal() const {
  const Eigen::MatrixXd off = output - Eigen::MatrixXd(output.diagonal().asDiagonal());
  return off.cwiseAbs().maxCoeff() == 0.0;
}

const SquaredExponential& KernelSpec::design_for(Eigen::Index p) const {
  return design.size() == 1 ? design.front() : design[static_cast<std::size_t>(p)];
}

void KernelSpec::validate() const {
  const Eigen::Index m = output.rows();
  if (m == 0 || output.cols() != m) throw Error(ErrorCode::DimensionMismatch, "output kernel must be square");
  if (design.empty()) throw Error(ErrorCode::InvalidConfig, "no design kernel");
  if (design.size() != 1 && static_cast<Eigen::Index>(design.size()) != m) {
    throw Error(ErrorCode::DimensionMismatch, "need one design kernel or one per output");
  }
  if (design.size() > 1 && !output_diagonal()) {
    throw Error(ErrorCode::InvalidConfig, "per-output design kernels need a diagonal output kernel");
  }
  if ((output - output.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorCode::InvalidConfig, "output kernel must be symmetric");
  }
  if (Eigen::LLT<Eigen::MatrixXd>(output).info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidConfig, "output kernel must be positive definite");
  }
  const Eigen::Index d = input_dim();
  for (Eigen::Index p = 0; p < m; ++p) {
    const SquaredExponential& k = design_for(p);
    if (k.lengthscales.size() != d) throw Error(ErrorCode::DimensionMismatch, "lengthscale count");
    if (d == 0 || (k.lengthscales.array() <= 0.0).any() || !k.lengthscales.allFinite()) {
      throw Error(ErrorCode::InvalidConfig, "lengthscales must be positive");
    }
    if (!(k.signal_variance > 0.0)) throw Error(ErrorCode::InvalidConfig, "signal variance must be positive");
    if (k.signal_variance * output(p, p) > 1.0 + 1e-12) {
      throw Error(ErrorCode::InvalidConfig, "prior variance of each output must not exceed 1");
    }
  }
}

double KernelSpec::covariance(const Eigen::VectorXd& x, Eigen::Index p, const Eigen::VectorXd& x2,
                              Eigen::Index q) const {
  if (design.size() == 1) return design.front()(x, x2) * output(p, q);
  if (p != q) return 0.0;
  return design_for(p)(x, x2) * output(p, p);
}

Eigen::MatrixXd KernelSpec::dense_gram(const Eigen::MatrixXd& designs) const {
  const Eigen::Index t = designs.rows();
  const Eigen::Index m = outputs();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m * t, m * t);
  if (design.size() == 1) {
    const Eigen::MatrixXd k = design.front().gram(designs, designs);
    for (Eigen::Index i = 0; i < t; ++i) {
      for (Eigen::Index j = 0; j < t; ++j) g.block(i * m, j * m, m, m) = k(i, j) * output;
    }
    return g;
  }
  for (Eigen::Index p = 0; p < m; ++p) {
    const Eigen::MatrixXd k = design_for(p).gram(designs, designs) * output(p, p);
    for (Eigen::Index i = 0; i < t; ++i) {
      for (Eigen::Index j = 0; j < t; ++j) g(i * m + p, j * m + p) = k(i, j);
    }
  }
  return g;
}

SurrogateModel::SurrogateModel(KernelSpec kernel, double noise_variance)
    : kernel_(std::move(kernel)), noise_(noise_variance) {
  kernel_.validate();
  if (!(noise_variance > 0.0) || !std::isfinite(noise_variance)) {
    throw Error(ErrorCode::InvalidConfig, "noise variance must be positive");
  }
  diagonal_ = kernel_.output_diagonal();
  m_ = kernel_.outputs();
  const std::size_t nf = diagonal_ ? static_cast<std::size_t>(m_) : 1;
  factors_.assign(nf, Eigen::MatrixXd(0, 0));
  weights_.assign(nf, Eigen::VectorXd(0));
  jitter_.assign(nf, 0.0);
}

Eigen::Index SurrogateModel::factor_size(std::size_t) const {
  const auto u = static_cast<Eigen::Index>(sites_.size());
  return diagonal_ ? u : u * m_;
}

Eigen::MatrixXd SurrogateModel::factor_gram(std::size_t f) const {
  const auto u = static_cast<Eigen::Index>(sites_.size());
  Eigen::MatrixXd x(u, kernel_.input_dim());
  for (Eigen::Index i = 0; i < u; ++i) x.row(i) = sites_[static_cast<std::size_t>(i)].transpose();
  Eigen::MatrixXd g;
  if (diagonal_) {
    const auto p = static_cast<Eigen::Index>(f);
    g = kernel_.design_for(p).gram(x, x) * kernel_.output(p, p);
    for (Eigen::Index i = 0; i < u; ++i) {
      g(i, i) += noise_ / static_cast<double>(counts_[static_cast<std::size_t>(i)]);
    }
  } else {
    g = kernel_.dense_gram(x);
    for (Eigen::Index i = 0; i < u; ++i) {
      const double nv = noise_ / static_cast<double>(counts_[static_cast<std::size_t>(i)]);
      for (Eigen::Index p = 0; p < m_; ++p) g(i * m_ + p, i * m_ + p) += nv;
    }
  }
  return g;
}

Eigen::VectorXd SurrogateModel::factor_targets(std::size_t f) const {
  const auto u = static_cast<Eigen::Index>(sites_.size());
  Eigen::VectorXd y(factor_size(f));
  for (Eigen::Index i = 0; i < u; ++i) {
    const auto s = static_cast<std::size_t>(i);
    const Eigen::VectorXd mean = sums_[s] / static_cast<double>(counts_[s]);
    if (diagonal_) {
      y[i] = mean[static_cast<Eigen::Index>(f)];
    } else {
      y.segment(i * m_, m_) = mean;
    }
  }
  return y;
}

void SurrogateModel::factorize(std::size_t f) {
  const Eigen::MatrixXd g = factor_gram(f);
  double jitter = 0.0;
  while (true) {
    Eigen::MatrixXd a = g;
    a.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success) {
      factors_[f] = llt.matrixL();
      jitter_[f] = jitter;
      return;
    }
    jitter = jitter == 0.0 ? kJitterStart : jitter * 10.0;
    if (jitter > kJitterMax * (1.0 + 1e-9)) {
      throw Error(ErrorCode::FactorizationFailure, "Gram matrix not positive definite after jitter");
    }
  }
}

bool SurrogateModel::extend(std::size_t f) {
  const Eigen::Index n = factor_size(f);
  const Eigen::Index b = diagonal_ ? 1 : m_;
  const Eigen::Index old = n - b;
  const Eigen::MatrixXd g = factor_gram(f);
  Eigen::MatrixXd s = g.bottomRightCorner(b, b);
  s.diagonal().array() += jitter_[f];
  Eigen::MatrixXd l21;
  if (old > 0) {
    l21 = factors_[f].triangularView<Eigen::Lower>().solve(g.topRightCorner(old, b)).transpose();
    s -= l21 * l21.transpose();
  }
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (llt.info() != Eigen::Success) return false;
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  if (old > 0) {
    l.topLeftCorner(old, old) = factors_[f];
    l.bottomLeftCorner(b, old) = l21;
  }
  l.bottomRightCorner(b, b) = llt.matrixL();
  factors_[f] = std::move(l);
  return true;
}

void SurrogateModel::update_weights() {
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    const Eigen::VectorXd v = factors_[f].triangularView<Eigen::Lower>().solve(factor_targets(f));
    weights_[f] = factors_[f].transpose().triangularView<Eigen::Upper>().solve(v);
  }
}

void SurrogateModel::refactor() {
  for (std::size_t f = 0; f < factors_.size(); ++f) factorize(f);
  since_refactor_ = 0;
  update_weights();
}

void SurrogateModel::condition(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != kernel_.input_dim() || y.size() != m_) {
    throw Error(ErrorCode::DimensionMismatch, "observation size does not match kernel");
  }
  require_finite(x, "design");
  require_finite(y, "observation");
  ++observations_;
  ++since_refactor_;
  for (std::size_t s = 0; s < sites_.size(); ++s) {
    if (sites_[s] == x) {
      ++counts_[s];
      sums_[s] += y;
      refactor();
      return;
    }
  }
  sites_.push_back(x);
  sums_.push_back(y);
  counts_.push_back(1);
  if (since_refactor_ >= kRefactorEvery) {
    refactor();
    return;
  }
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    if (!extend(f)) factorize(f);
  }
  update_weights();
}

Posterior SurrogateModel::posterior(const Eigen::VectorXd& x) const {
  if (x.size() != kernel_.input_dim()) throw Error(ErrorCode::DimensionMismatch, "query size");
  require_finite(x, "query");
  Posterior out;
  out.mean = Eigen::VectorXd::Zero(m_);
  out.stddev = Eigen::VectorXd::Zero(m_);
  if (coupled()) {
    const Eigen::MatrixXd cov = posterior_covariance(x);
    const auto u = static_cast<Eigen::Index>(sites_.size());
    if (u > 0) {
      Eigen::MatrixXd kx(u * m_, m_);
      const SquaredExponential& k = kernel_.design.front();
      for (Eigen::Index i = 0; i < u; ++i) kx.block(i * m_, 0, m_, m_) = k(sites_[static_cast<std::size_t>(i)], x) * kernel_.output;
      out.mean = kx.transpose() * weights_[0];
    }
    out.stddev = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
    return out;
  }
  const auto u = static_cast<Eigen::Index>(sites_.size());
  for (Eigen::Index p = 0; p < m_; ++p) {
    const SquaredExponential& k = kernel_.design_for(p);
    const double bpp = kernel_.output(p, p);
    const double prior = k(x, x) * bpp;
    if (u == 0) {
      out.stddev[p] = std::sqrt(prior);
      continue;
    }
    Eigen::VectorXd kv(u);
    for (Eigen::Index i = 0; i < u; ++i) kv[i] = k(sites_[static_cast<std::size_t>(i)], x) * bpp;
    const auto f = static_cast<std::size_t>(p);
    out.mean[p] = kv.dot(weights_[f]);
    const Eigen::VectorXd v = factors_[f].triangularView<Eigen::Lower>().solve(kv);
    out.stddev[p] = std::sqrt(std::max(0.0, prior - v.squaredNorm()));
  }
  return out;
}

Eigen::MatrixXd SurrogateModel::posterior_covariance(const Eigen::VectorXd& x) const {
  if (x.size() != kernel_.input_dim()) throw Error(ErrorCode::DimensionMismatch, "query size");
  require_finite(x, "query");
  if (!coupled()) {
    const Posterior p = posterior(x);
    return p.stddev.array().square().matrix().asDiagonal();
  }
  const SquaredExponential& k = kernel_.design.front();
  Eigen::MatrixXd cov = k(x, x) * kernel_.output;
  const auto u = static_cast<Eigen::Index>(sites_.size());
  if (u == 0) return cov;
  Eigen::MatrixXd kx(u * m_, m_);
  for (Eigen::Index i = 0; i < u; ++i) kx.block(i * m_, 0, m_, m_) = k(sites_[static_cast<std::size_t>(i)], x) * kernel_.output;
  const Eigen::MatrixXd v = factors_[0].triangularView<Eigen::Lower>().solve(kx);
  cov -= v.transpose() * v;
  return cov;
}

PosteriorBatch SurrogateModel::posterior_batch(const Eigen::MatrixXd& xs, Execution exec) const {
  if (xs.cols() != kernel_.input_dim()) throw Error(ErrorCode::DimensionMismatch, "query size");
  if (!xs.allFinite()) throw Error(ErrorCode::NonFiniteInput, "query has non-finite entries");
  const Eigen::Index n = xs.rows();
  PosteriorBatch out{Eigen::MatrixXd::Zero(n, m_), Eigen::MatrixXd::Zero(n, m_)};
  const auto u = static_cast<Eigen::Index>(sites_.size());
  Eigen::MatrixXd sites(u, kernel_.input_dim());
  for (Eigen::Index i = 0; i < u; ++i) sites.row(i) = sites_[static_cast<std::size_t>(i)].transpose();

  auto chunk = [&](Eigen::Index begin) {
    const Eigen::Index len = std::min(kBatchChunk, n - begin);
    const Eigen::MatrixXd q = xs.middleRows(begin, len);
    if (coupled()) {
      for (Eigen::Index r = 0; r < len; ++r) {
        const Posterior p = posterior(q.row(r).transpose());
        out.mean.row(begin + r) = p.mean.transpose();
        out.stddev.row(begin + r) = p.stddev.transpose();
      }
      return;
    }
    for (Eigen::Index p = 0; p < m_; ++p) {
      const SquaredExponential& k = kernel_.design_for(p);
      const double bpp = kernel_.output(p, p);
      const double prior = k.signal_variance * bpp;
      if (u == 0) {
        out.stddev.block(begin, p, len, 1).setConstant(std::sqrt(prior));
        continue;
      }
      const Eigen::MatrixXd kx = k.gram(sites, q) * bpp;
      const auto f = static_cast<std::size_t>(p);
      out.mean.block(begin, p, len, 1) = kx.transpose() * weights_[f];
      const Eigen::MatrixXd v = factors_[f].triangularView<Eigen::Lower>().solve(kx);
      const Eigen::VectorXd var = (prior - v.colwise().squaredNorm().array()).cwiseMax(0.0).matrix().transpose();
      out.stddev.block(begin, p, len, 1) = var.cwiseSqrt();
    }
  };
  const Eigen::Index chunks = (n + kBatchChunk - 1) / kBatchChunk;
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (Eigen::Index c = 0; c < chunks; ++c) chunk(c * kBatchChunk);
  } else {
    for (Eigen::Index c = 0; c < chunks; ++c) chunk(c * kBatchChunk);
  }
  return out;
}

Hyperrectangle SurrogateModel::confidence_rect(const Eigen::VectorXd& x, double beta) const {
  if (!(beta > 0.0)) throw Error(ErrorCode::InvalidConfig, "beta must be positive");
  const Posterior p = posterior(x);
  const Eigen::VectorXd half = std::sqrt(beta) * p.stddev;
  return Hyperrectangle(p.mean - half, p.mean + half);
}

double SurrogateModel::information_gain() const {
  if (sites_.empty()) return 0.0;
  double log_noise = 0.0;
  for (std::size_t c : counts_) log_noise += std::log(noise_ / static_cast<double>(c));
  double total = 0.0;
  for (const Eigen::MatrixXd& l : factors_) {
    total += 2.0 * l.diagonal().array().log().sum();
    total -= diagonal_ ? log_noise : static_cast<double>(m_) * log_noise;
  }
  return 0.5 * total;
}

double BetaSchedule::operator()(std::size_t t) const {
  if (t < 1) throw Error(ErrorCode::IndexOutOfRange, "round index starts at 1");
  const double td = static_cast<double>(t);
  const double arg = static_cast<double>(outputs) * std::numbers::pi * std::numbers::pi *
                     static_cast<double>(cardinality) * td * td / (3.0 * delta);
  return 2.0 * std::log(arg) / scale_divisor;
}

double beta_value(const BetaSchedule& schedule, std::size_t t) { return schedule(t); }

double empirical_info_gain(const KernelSpec& kernel, const Eigen::MatrixXd& designs, double noise_variance) {
  if (designs.rows() == 0) throw Error(ErrorCode::EmptyInput, "empty design subset");
  Eigen::MatrixXd a = kernel.dense_gram(designs) / noise_variance;
  a.diagonal().array() += 1.0;
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::FactorizationFailure, "I + K / sigma^2");
  return Eigen::MatrixXd(llt.matrixL()).diagonal().array().log().sum();
}

std::vector<double> greedy_max_info_gain(const KernelSpec& kernel, const Eigen::MatrixXd& candidates,
                                         std::size_t t, double noise_variance) {
  if (candidates.rows() == 0) throw Error(ErrorCode::EmptyInput, "no candidates");
  SurrogateModel model(kernel, noise_variance);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(kernel.outputs());
  std::vector<double> out;
  out.reserve(t);
  double total = 0.0;
  for (std::size_t step = 0; step < t; ++step) {
    Eigen::Index best = 0;
    double best_gain = -1.0;
    if (kernel.output_diagonal()) {
      const PosteriorBatch pb = model.posterior_batch(candidates);
      const Eigen::VectorXd gains =
          0.5 * (1.0 + pb.stddev.array().square() / noise_variance).log().matrix().rowwise().sum();
      for (Eigen::Index i = 0; i < gains.size(); ++i) {
        if (gains[i] > best_gain) {
          best_gain = gains[i];
          best = i;
        }
      }
    } else {
      for (Eigen::Index i = 0; i < candidates.rows(); ++i) {
        Eigen::MatrixXd a = model.posterior_covariance(candidates.row(i).transpose()) / noise_variance;
        a.diagonal().array() += 1.0;
        const double g = 0.5 * std::log(a.determinant());
        if (g > best_gain) {
          best_gain = g;
          best = i;
        }
      }
    }
    total += best_gain;
    out.push_back(total);
    model.condition(candidates.row(best).transpose(), zero);
  }
  return out;
}

double spectral_info_gain_bound(const KernelSpec& kernel, const Eigen::MatrixXd& candidates, double t,
                                double noise_variance) {
  if (candidates.rows() == 0) throw Error(ErrorCode::EmptyInput, "no candidates");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kernel.dense_gram(candidates),
                                                          Eigen::EigenvaluesOnly);
  const Eigen::ArrayXd lambda = es.eigenvalues().array().cwiseMax(0.0);
  return 0.5 * (1.0 + t * lambda / noise_variance).log().sum();
}

}  // namespace vogp
