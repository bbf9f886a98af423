#include <benchmark/benchmark.h>

#include <random>

#include "vogp/adadisc.hpp"
#include "vogp/cone.hpp"
#include "vogp/gp.hpp"
#include "vogp/metrics.hpp"
#include "vogp/phases.hpp"

namespace {

using vogp::Execution;

struct Fixture {
  vogp::ConeOrder cone = vogp::builtin_cone("acute", 2);
  std::vector<vogp::Hyperrectangle> rects;
  vogp::IndexSet all;

  explicit Fixture(std::size_t n) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      const Eigen::Vector2d c(unit(rng), unit(rng));
      const double w = 0.02 + 0.1 * unit(rng);
      rects.emplace_back(c.array() - w, c.array() + w);
      all.push_back(i);
    }
  }
};

Execution exec_of(const benchmark::State& state) { return state.range(1) ? Execution::parallel : Execution::serial; }

void BM_DiscardPhase(benchmark::State& state) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(vogp::discard_phase(f.rects, f.all, f.all, f.cone, 0.1, exec_of(state)));
  }
}

void BM_PessimisticPareto(benchmark::State& state) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vogp::pessimistic_pareto(f.rects, f.all, f.cone, exec_of(state)));
}

void BM_IdentificationPhase(benchmark::State& state) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(vogp::identification_phase(f.rects, f.all, f.all, f.cone, 0.1, exec_of(state)));
  }
}

void BM_PosteriorBatch(benchmark::State& state) {
  const vogp::KernelSpec k = vogp::KernelSpec::separable({Eigen::Vector2d(0.2, 0.2), 1.0}, 2);
  vogp::SurrogateModel model(k, 0.01);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) model.condition(Eigen::Vector2d(unit(rng), unit(rng)), Eigen::Vector2d(unit(rng), unit(rng)));
  const Eigen::MatrixXd grid = vogp::uniform_grid(2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(model.posterior_batch(grid, exec_of(state)));
}

void BM_TrueParetoFront(benchmark::State& state) {
  const vogp::ConeOrder cone = vogp::builtin_cone("obtuse", 3);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd y(state.range(0), 3);
  for (Eigen::Index i = 0; i < y.size(); ++i) y.data()[i] = normal(rng);
  for (auto _ : state) benchmark::DoNotOptimize(vogp::true_pareto_front(y, cone, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_DiscardPhase)->ArgsProduct({{200, 800}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PessimisticPareto)->ArgsProduct({{200, 800}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IdentificationPhase)->ArgsProduct({{200, 800}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PosteriorBatch)->ArgsProduct({{50, 150}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrueParetoFront)->ArgsProduct({{2000, 8000}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
