#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "vogp/gp.hpp"

using testing::vec;
using vogp::ErrorCode;
using vogp::KernelSpec;
using vogp::SquaredExponential;
using vogp::SurrogateModel;

namespace {

SquaredExponential se(double l, double s2 = 1.0, Eigen::Index d = 2) {
  return {Eigen::VectorXd::Constant(d, l), s2};
}

/// Dense posterior for a separable kernel k(x,x') B(p,q), written out
/// directly from the conditioning formulas.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> dense_separable(const SquaredExponential& k, const Eigen::MatrixXd& B,
                                                            const std::vector<Eigen::VectorXd>& xs,
                                                            const std::vector<Eigen::VectorXd>& ys, double noise,
                                                            const Eigen::VectorXd& x) {
  const Eigen::Index m = B.rows();
  const auto t = static_cast<Eigen::Index>(xs.size());
  auto kern = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return k.signal_variance * std::exp(-0.5 * (a - b).cwiseQuotient(k.lengthscales).squaredNorm());
  };
  Eigen::MatrixXd K(m * t, m * t);
  Eigen::VectorXd y(m * t);
  Eigen::MatrixXd kx(m, m * t);
  for (Eigen::Index i = 0; i < t; ++i) {
    y.segment(i * m, m) = ys[static_cast<std::size_t>(i)];
    kx.middleCols(i * m, m) = kern(x, xs[static_cast<std::size_t>(i)]) * B;
    for (Eigen::Index j = 0; j < t; ++j) {
      K.block(i * m, j * m, m, m) = kern(xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)]) * B;
    }
  }
  K += noise * Eigen::MatrixXd::Identity(m * t, m * t);
  const Eigen::MatrixXd Kinv = K.inverse();
  return {kx * Kinv * y, kern(x, x) * B - kx * Kinv * kx.transpose()};
}

}  // namespace

TEST_CASE("squared exponential kernel") {
  const SquaredExponential k{vec({0.5, 2.0}), 0.7};
  CHECK(k(vec({0, 0}), vec({0, 0})) == doctest::Approx(0.7));
  CHECK(k(vec({0, 0}), vec({0.5, 2.0})) == doctest::Approx(0.7 * std::exp(-1.0)));
  std::mt19937_64 rng(1);
  const Eigen::MatrixXd a = testing::uniform_matrix(5, 2, rng);
  const Eigen::MatrixXd g = k.gram(a, a);
  CHECK(g.isApprox(g.transpose()));
  CHECK(g(1, 3) == doctest::Approx(k(a.row(1).transpose(), a.row(3).transpose())));
}

TEST_CASE("kernel spec validation") {
  CHECK_NOTHROW(KernelSpec::separable(se(0.3), 2).validate());
  KernelSpec bad = KernelSpec::separable(se(0.3), 2);
  bad.output(0, 1) = 5.0;
  CHECK_THROWS_AS(bad.validate(), vogp::Error);
  KernelSpec neg = KernelSpec::separable(se(-0.3), 2);
  CHECK_THROWS_AS(neg.validate(), vogp::Error);
}

TEST_CASE("prior and first observation") {
  SurrogateModel m(KernelSpec::separable(se(0.3), 1), 1.0);
  const vogp::Posterior p0 = m.posterior(vec({0.2, 0.2}));
  CHECK(p0.mean[0] == 0.0);
  CHECK(p0.stddev[0] == doctest::Approx(1.0));
  m.condition(vec({0.2, 0.2}), vec({3.0}));
  CHECK(m.posterior(vec({0.2, 0.2})).mean[0] == doctest::Approx(1.5));
  const double v1 = m.posterior(vec({0.2, 0.2})).stddev[0];
  m.condition(vec({0.2, 0.2}), vec({3.0}));
  CHECK(m.posterior(vec({0.2, 0.2})).stddev[0] < v1);
  CHECK(m.site_count() == 1);
  CHECK(m.observation_count() == 2);
  CHECK(m.posterior(vec({20.0, 20.0})).stddev[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_ERROR_CODE(m.condition(vec({std::numeric_limits<double>::quiet_NaN(), 0.0}), vec({1.0})),
                   ErrorCode::NonFiniteInput);
}

TEST_CASE("confidence rectangles") {
  SurrogateModel m(KernelSpec::separable(se(0.3), 2), 0.01);
  const vogp::Hyperrectangle r = m.confidence_rect(vec({0.1, 0.1}), 4.0);
  CHECK(r.lower.isApprox(vec({-2, -2})));
  CHECK(r.upper.isApprox(vec({2, 2})));
  m.condition(vec({0.1, 0.1}), vec({0.5, -0.5}));
  const vogp::Hyperrectangle a = m.confidence_rect(vec({0.3, 0.2}), 1.0);
  const vogp::Hyperrectangle b = m.confidence_rect(vec({0.3, 0.2}), 4.0);
  CHECK((b.upper - b.lower).isApprox(2.0 * (a.upper - a.lower)));
}

TEST_CASE("posterior matches the dense formula") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 10; ++trial) {
    oracle::DenseGp dense{{vec({0.3, 0.5}), vec({0.6, 0.2})}, {1.0, 0.6}, 0.04};
    SurrogateModel m(KernelSpec::per_output({{vec({0.3, 0.5}), 1.0}, {vec({0.6, 0.2}), 0.6}}), 0.04);
    std::vector<Eigen::VectorXd> xs, ys;
    for (int i = 0; i < 6; ++i) {
      Eigen::VectorXd x = testing::uniform_matrix(2, 1, rng);
      if (i == 4) x = xs[1];  // replicate
      const Eigen::VectorXd y = vec({normal(rng), normal(rng)});
      xs.push_back(x);
      ys.push_back(y);
      m.condition(x, y);
    }
    for (int probe = 0; probe < 5; ++probe) {
      const Eigen::VectorXd x = testing::uniform_matrix(2, 1, rng);
      const auto [mu, sd] = dense.posterior(xs, ys, x);
      const vogp::Posterior p = m.posterior(x);
      CHECK((p.mean - mu).norm() < 1e-9);
      CHECK((p.stddev - sd).norm() < 1e-9);
    }
  }
}

TEST_CASE("separable posterior with a coupled output kernel") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd B(2, 2);
  B << 1.0, 0.6, 0.6, 0.8;
  KernelSpec spec = KernelSpec::separable(se(0.4), 2);
  spec.output = B;
  SurrogateModel m(spec, 0.02);
  std::vector<Eigen::VectorXd> xs, ys;
  for (int i = 0; i < 5; ++i) {
    xs.push_back(testing::uniform_matrix(2, 1, rng));
    ys.push_back(vec({normal(rng), normal(rng)}));
    m.condition(xs.back(), ys.back());
  }
  for (int probe = 0; probe < 5; ++probe) {
    const Eigen::VectorXd x = testing::uniform_matrix(2, 1, rng);
    const auto [mu, cov] = dense_separable(se(0.4), B, xs, ys, 0.02, x);
    CHECK((m.posterior(x).mean - mu).norm() < 1e-9);
    CHECK((m.posterior_covariance(x) - cov).norm() < 1e-9);
  }
}

TEST_CASE("diagonal output kernel equals independent single-output models") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> normal;
  SurrogateModel joint(KernelSpec::separable(se(0.3), 2), 0.01);
  SurrogateModel a(KernelSpec::separable(se(0.3), 1), 0.01);
  SurrogateModel b(KernelSpec::separable(se(0.3), 1), 0.01);
  for (int i = 0; i < 8; ++i) {
    const Eigen::VectorXd x = testing::uniform_matrix(2, 1, rng);
    const Eigen::VectorXd y = vec({normal(rng), normal(rng)});
    joint.condition(x, y);
    a.condition(x, y.head(1));
    b.condition(x, y.tail(1));
  }
  const Eigen::VectorXd x = vec({0.4, 0.6});
  CHECK(std::abs(joint.posterior(x).mean[0] - a.posterior(x).mean[0]) < 1e-10);
  CHECK(std::abs(joint.posterior(x).mean[1] - b.posterior(x).mean[0]) < 1e-10);
  CHECK(std::abs(joint.posterior(x).stddev[1] - b.posterior(x).stddev[0]) < 1e-10);
}

TEST_CASE("incremental updates match refactorization") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  SurrogateModel m(KernelSpec::separable(se(0.2), 2), 0.01);
  for (int i = 0; i < 40; ++i) {
    m.condition(testing::uniform_matrix(2, 1, rng), vec({normal(rng), normal(rng)}));
  }
  const Eigen::MatrixXd probes = testing::uniform_matrix(20, 2, rng);
  const vogp::PosteriorBatch before = m.posterior_batch(probes);
  m.refactor();
  const vogp::PosteriorBatch after = m.posterior_batch(probes);
  CHECK((before.mean - after.mean).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((before.stddev - after.stddev).cwiseAbs().maxCoeff() < 1e-10);
  const vogp::PosteriorBatch par = m.posterior_batch(probes, vogp::Execution::parallel);
  CHECK((par.mean - after.mean).norm() == 0.0);
  CHECK((par.stddev - after.stddev).norm() == 0.0);
}

TEST_CASE("posterior variance never increases") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  for (int seq = 0; seq < 100; ++seq) {
    SurrogateModel m(KernelSpec::separable(se(0.3), 2), 0.01);
    const Eigen::VectorXd probe = testing::uniform_matrix(2, 1, rng);
    Eigen::VectorXd prev = m.posterior(probe).stddev;
    for (int i = 0; i < 6; ++i) {
      m.condition(testing::uniform_matrix(2, 1, rng), vec({normal(rng), normal(rng)}));
      const Eigen::VectorXd now = m.posterior(probe).stddev;
      CHECK((now.array() <= prev.array() + 1e-12).all());
      prev = now;
    }
  }
}

TEST_CASE("beta schedule") {
  const vogp::BetaSchedule s{2, 500, 0.05, 1.0};
  CHECK(vogp::beta_value(s, 1) == doctest::Approx(22.189).epsilon(1e-4));
  CHECK(vogp::beta_value({2, 500, 0.05, 32.0}, 1) == doctest::Approx(0.6934).epsilon(1e-3));
  const double direct = 2.0 * std::log(2.0 * std::numbers::pi * std::numbers::pi * 500.0 * 9.0 / (3.0 * 0.05));
  CHECK(s(3) == doctest::Approx(direct));
  for (std::size_t t = 1; t < 50; ++t) CHECK(s(t + 1) > s(t));
}

TEST_CASE("information gain") {
  const KernelSpec k = KernelSpec::separable(se(0.3), 1);
  CHECK(vogp::empirical_info_gain(k, vec({0.5, 0.5}).transpose(), 0.01) ==
        doctest::Approx(0.5 * std::log(101.0)).epsilon(1e-9));
  CHECK(vogp::empirical_info_gain(k, vec({0.5, 0.5}).transpose(), 1e12) < 1e-9);
  Eigen::MatrixXd twice(2, 2);
  twice << 0.5, 0.5, 0.5, 0.5;
  CHECK(vogp::empirical_info_gain(k, twice, 0.01) <= 2.0 * 0.5 * std::log(101.0));

  SurrogateModel m(k, 0.01);
  std::mt19937_64 rng(9);
  const Eigen::MatrixXd pts = testing::uniform_matrix(6, 2, rng);
  for (Eigen::Index i = 0; i < pts.rows(); ++i) m.condition(pts.row(i).transpose(), vec({0.1}));
  CHECK(m.information_gain() == doctest::Approx(vogp::empirical_info_gain(k, pts, 0.01)).epsilon(1e-9));
}

TEST_CASE("greedy information gain") {
  std::mt19937_64 rng(10);
  const KernelSpec k = KernelSpec::separable(se(0.4), 1);
  const Eigen::MatrixXd cand = testing::uniform_matrix(6, 2, rng);
  const std::vector<double> g = vogp::greedy_max_info_gain(k, cand, 3, 0.01);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == doctest::Approx(0.5 * std::log(101.0)));
  CHECK(g[1] >= g[0]);
  CHECK(g[2] >= g[1]);
  const Eigen::MatrixXd gram = se(0.4).gram(cand, cand);
  const double best = oracle::best_subset_info_gain(gram, 3, 0.01);
  CHECK(g[2] <= best + 1e-9);
  CHECK(g[2] >= (1.0 - 1.0 / std::numbers::e) * best);
  CHECK(vogp::spectral_info_gain_bound(k, cand, 3.0, 0.01) >= best - 1e-9);
}

TEST_CASE("log marginal likelihood gradient") {
  std::mt19937_64 rng(11);
  const Eigen::MatrixXd x = testing::uniform_matrix(15, 2, rng);
  Eigen::VectorXd y(15);
  for (Eigen::Index i = 0; i < 15; ++i) y[i] = std::sin(4.0 * x(i, 0)) + x(i, 1);
  const SquaredExponential k{vec({0.4, 0.7}), 0.8};
  Eigen::VectorXd grad;
  const double f = vogp::log_marginal_likelihood(k, x, y, 0.01, &grad);
  REQUIRE(grad.size() == 3);
  const double h = 1e-6;
  for (int j = 0; j < 2; ++j) {
    SquaredExponential kp = k;
    kp.lengthscales[j] *= std::exp(h);
    const double fd = (vogp::log_marginal_likelihood(kp, x, y, 0.01) - f) / h;
    CHECK(grad[j] == doctest::Approx(fd).epsilon(1e-4));
  }
  SquaredExponential ks = k;
  ks.signal_variance *= std::exp(h);
  CHECK(grad[2] == doctest::Approx((vogp::log_marginal_likelihood(ks, x, y, 0.01) - f) / h).epsilon(1e-4));
}

TEST_CASE("hyperparameter fit") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> normal;
  const Eigen::MatrixXd x = testing::uniform_matrix(200, 2, rng);
  Eigen::MatrixXd gram = se(0.2).gram(x, x);
  gram.diagonal().array() += 1e-8;
  const Eigen::MatrixXd l = gram.llt().matrixL();
  Eigen::VectorXd z(200);
  for (Eigen::Index i = 0; i < 200; ++i) z[i] = normal(rng);
  Eigen::MatrixXd y(200, 1);
  y.col(0) = l * z;
  for (Eigen::Index i = 0; i < 200; ++i) y(i, 0) += 0.05 * normal(rng);
  const vogp::FitReport r = vogp::fit_hyperparameters(x, y, 0.0025);
  const Eigen::VectorXd ls = r.kernel.design_for(0).lengthscales;
  CHECK(ls[0] >= 0.1);
  CHECK(ls[0] <= 0.4);
  CHECK(ls[1] >= 0.1);
  CHECK(ls[1] <= 0.4);
  CHECK(r.kernel.design_for(0).signal_variance <= 1.0);
  for (double s : r.start_likelihood[0]) CHECK(r.log_likelihood[0] >= s - 1e-9);

  const vogp::FitReport again = vogp::fit_hyperparameters(x, y, 0.0025);
  CHECK((again.kernel.design_for(0).lengthscales - ls).norm() == 0.0);

  Eigen::MatrixXd same(5, 2);
  same.setConstant(0.3);
  CHECK_ERROR_CODE(vogp::fit_hyperparameters(same, Eigen::MatrixXd::Ones(5, 1), 0.01), ErrorCode::DegenerateData);
}
