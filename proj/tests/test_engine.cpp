#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "support.hpp"
#include "vogp/cone.hpp"
#include "vogp/engine.hpp"
#include "vogp/metrics.hpp"

using testing::vec;
using vogp::ErrorCode;
using vogp::IndexSet;

namespace {

vogp::KernelSpec toy_kernel(Eigen::Index d = 1) {
  return vogp::KernelSpec::separable({Eigen::VectorXd::Constant(d, 0.2), 1.0}, 2);
}

vogp::Oracle noisy(const Eigen::MatrixXd& f, double sigma, std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [f, sigma, rng](std::size_t i) {
    std::normal_distribution<double> n(0.0, sigma);
    Eigen::VectorXd y = f.row(static_cast<Eigen::Index>(i)).transpose();
    for (Eigen::Index j = 0; j < y.size(); ++j) y[j] += n(*rng);
    return y;
  };
}

struct GpInstance {
  Eigen::MatrixXd x;
  Eigen::MatrixXd f;
};

GpInstance gp_instance(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  GpInstance g{testing::uniform_matrix(static_cast<Eigen::Index>(n), 1, rng), {}};
  const vogp::SquaredExponential k{vec({0.2}), 1.0};
  Eigen::MatrixXd gram = k.gram(g.x, g.x);
  gram.diagonal().array() += 1e-9;
  Eigen::MatrixXd z(static_cast<Eigen::Index>(n), 2);
  for (Eigen::Index i = 0; i < z.size(); ++i) z.data()[i] = normal(rng);
  g.f = gram.llt().matrixL() * z;
  return g;
}

}  // namespace

TEST_CASE("parameter validation") {
  vogp::VogpParams p;
  CHECK_NOTHROW(p.validate());
  p.epsilon = -1.0;
  CHECK_ERROR_CODE(p.validate(), ErrorCode::InvalidConfig);
  p = {};
  p.delta = 1.0;
  CHECK_ERROR_CODE(p.validate(), ErrorCode::InvalidConfig);
  p = {};
  p.noise_std = 0.0;
  CHECK_ERROR_CODE(p.validate(), ErrorCode::InvalidConfig);
}

TEST_CASE("single design is identified immediately") {
  const Eigen::MatrixXd x = vec({0.5}).transpose();
  const Eigen::MatrixXd f = vec({0.1, 0.2}).transpose();
  const vogp::RunResult r =
      vogp::run(x, toy_kernel(), {}, vogp::builtin_cone("right", 2), noisy(f, 0.1, 1));
  CHECK(r.pareto == IndexSet{0});
  CHECK(r.rounds.size() == 1);
  CHECK(r.queries.empty());
}

TEST_CASE("three-design toy instance") {
  Eigen::MatrixXd x(3, 1);
  x << 0.1, 0.5, 0.9;
  Eigen::MatrixXd f(3, 2);
  f << 0, 0, 1, 1, 0.5, 0.5;
  vogp::VogpParams p;
  p.noise_std = 1e-3;
  const vogp::RunResult r = vogp::run(x, toy_kernel(), p, vogp::builtin_cone("right", 2), noisy(f, 1e-3, 2));
  CHECK(r.pareto == IndexSet{1});
  CHECK_FALSE(r.max_rounds_exceeded);
  CHECK(r.violations.total() == 0);
}

TEST_CASE("two ordered designs need few queries") {
  Eigen::MatrixXd x(2, 1);
  x << 0.2, 0.8;
  Eigen::MatrixXd f(2, 2);
  f << 0, 0, 1, 1;
  vogp::VogpParams p;
  p.noise_std = 1e-3;
  const vogp::RunResult r = vogp::run(x, toy_kernel(), p, vogp::builtin_cone("right", 2), noisy(f, 0.0, 3));
  CHECK(r.pareto == IndexSet{1});
  CHECK(r.queries.size() <= 10);
}

TEST_CASE("set flow and width invariants on a GP sample") {
  const GpInstance g = gp_instance(40, 4);
  const vogp::ConeOrder cone = vogp::builtin_cone("right", 2);
  vogp::VogpParams p;
  const vogp::KernelSpec k = vogp::KernelSpec::separable({vec({0.2}), 1.0}, 2);
  vogp::SurrogateModel model(k, p.noise_std * p.noise_std);
  vogp::AlgState s = vogp::AlgState::initial(40, 2);
  const vogp::BetaSchedule beta{2, 40, p.delta, 1.0};
  const vogp::Oracle oracle = noisy(g.f, p.noise_std, 5);
  double last_omega = std::numeric_limits<double>::infinity();
  while (!s.undecided.empty() && s.round < 5000) {
    const IndexSet before_s = s.undecided;
    const IndexSet before_p = s.predicted;
    const std::vector<vogp::Hyperrectangle> before_r = s.rects;
    const vogp::RoundRecord rec = vogp::step(s, model, g.x, p, cone, beta(s.round), oracle);
    CHECK(std::includes(before_s.begin(), before_s.end(), s.undecided.begin(), s.undecided.end()));
    CHECK(std::includes(s.predicted.begin(), s.predicted.end(), before_p.begin(), before_p.end()));
    for (std::size_t i : s.undecided) {
      if (!before_r[i].empty_storage()) CHECK(before_r[i].contains(s.rects[i]));
    }
    CHECK(rec.omega_bar <= last_omega + 1e-12);
    last_omega = rec.omega_bar;
  }
  CHECK(s.undecided.empty());
  CHECK(s.violations.total() == 0);
  CHECK(s.coverage_violations == 0);
  CHECK(vogp::pac_success(g.f, cone, s.predicted, p.epsilon));
}

TEST_CASE("runs are deterministic and serial equals parallel") {
  const GpInstance g = gp_instance(60, 6);
  const vogp::ConeOrder cone = vogp::cone_2d(120.0);
  vogp::VogpParams p;
  p.beta_divisor = 8.0;
  const vogp::KernelSpec k = vogp::KernelSpec::separable({vec({0.2}), 1.0}, 2);
  const vogp::RunResult a = vogp::run(g.x, k, p, cone, noisy(g.f, p.noise_std, 7));
  const vogp::RunResult b = vogp::run(g.x, k, p, cone, noisy(g.f, p.noise_std, 7));
  p.exec = vogp::Execution::parallel;
  const vogp::RunResult c = vogp::run(g.x, k, p, cone, noisy(g.f, p.noise_std, 7));
  CHECK(a.pareto == b.pareto);
  CHECK(a.pareto == c.pareto);
  REQUIRE(a.queries.size() == c.queries.size());
  for (std::size_t i = 0; i < a.queries.size(); ++i) {
    CHECK(a.queries[i].design == c.queries[i].design);
    CHECK((a.queries[i].observation - b.queries[i].observation).norm() == 0.0);
  }
}

TEST_CASE("max rounds cap") {
  const GpInstance g = gp_instance(30, 8);
  vogp::VogpParams p;
  p.epsilon = 0.0;
  p.max_rounds = 5;
  const vogp::RunResult r = vogp::run(g.x, toy_kernel(), p, vogp::builtin_cone("right", 2), noisy(g.f, 0.1, 9));
  CHECK(r.max_rounds_exceeded);
  CHECK(r.rounds.size() == 5);
}

TEST_CASE("custom width policy") {
  const GpInstance g = gp_instance(20, 10);
  vogp::VogpParams p;
  std::vector<std::size_t> seen;
  const vogp::WidthPolicy policy = [&](std::size_t t, const vogp::SurrogateModel&) {
    seen.push_back(t);
    return 4.0;
  };
  const vogp::RunResult r = vogp::run(g.x, toy_kernel(), p, vogp::builtin_cone("right", 2), noisy(g.f, 0.1, 11), policy);
  REQUIRE_FALSE(seen.empty());
  CHECK(seen.front() == 1);
  for (const vogp::RoundRecord& rec : r.rounds) CHECK(rec.beta == 4.0);
}

TEST_CASE("theoretical sample bound") {
  const auto gamma = [](std::size_t) { return 5.0; };
  const vogp::BetaSchedule beta{2, 10, 0.05, 1.0};
  const vogp::ConeOrder right = vogp::builtin_cone("right", 2);
  const std::size_t t = vogp::theoretical_sample_bound(beta, 0.1, 0.1, right, gamma);
  CHECK(t > 0);
  // The returned t is the first that satisfies the condition.
  const double eta = 100.0 / std::log(101.0);
  auto lhs = [&](std::size_t s) { return std::sqrt(8.0 * beta(s) * 0.01 * eta * 2.0 * 5.0 / static_cast<double>(s)); };
  CHECK(lhs(t) < 0.1 / right.hardness());
  CHECK(lhs(t - 1) >= 0.1 / right.hardness());
  CHECK(vogp::theoretical_sample_bound(beta, 0.05, 0.1, right, gamma) >= t);
  CHECK(vogp::theoretical_sample_bound(beta, 0.1, 0.1, vogp::builtin_cone("acute", 2), gamma) >= t);
  CHECK_ERROR_CODE(vogp::theoretical_sample_bound(beta, 0.1, 0.1, right, gamma, 10), ErrorCode::NotFound);
}
