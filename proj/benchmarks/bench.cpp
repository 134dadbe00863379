#include <benchmark/benchmark.h>

#include "hmvp/diagnostics.hpp"
#include "hmvp/dirichlet.hpp"
#include "hmvp/meanvalue.hpp"
#include "hmvp/perron.hpp"
#include "hmvp/weight.hpp"

namespace {

using namespace hmvp;

MetricMeasureSpace line(const WeightSpec& w) { return MetricMeasureSpace(WeightedLine(w)); }

DiscreteSpace grid(double h) {
  return DiscreteSpace::grid(WeightedLine(weights::lebesgue()), 0.0, 1.0, h);
}

void BM_BallIntegral(benchmark::State& state) {
  const auto s = line(weights::exp_neg_x());
  const auto f = functions::one_plus_exp2x();
  double r = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.ball_integral(f, 0.3, r));
    r = r < 3.0 ? r + 0.01 : 0.1;
  }
}
BENCHMARK(BM_BallIntegral);

void BM_SingularAverage(benchmark::State& state) {
  const auto s = line(weights::abs_x());
  const auto f = functions::reciprocal();
  for (auto _ : state) benchmark::DoNotOptimize(ball_average(s, f, 1.0, 2.0));
}
BENCHMARK(BM_SingularAverage);

void BM_DpSolve(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  const auto g = grid(h);
  std::vector<std::size_t> omega;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) omega.push_back(i);
  auto p = make_measurable_problem(g, omega, 4 * h, {{0, 0.0}, {g.size() - 1, 1.0}});
  p.tol = 1e-8;
  p.max_iters = 10000000;
  for (auto _ : state) benchmark::DoNotOptimize(dp_solve_measurable(p));
}
BENCHMARK(BM_DpSolve)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  const auto g = grid(h);
  std::vector<std::size_t> omega;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) omega.push_back(i);
  const auto p = make_measurable_problem(g, omega, 4 * h, {{0, 0.0}, {g.size() - 1, 1.0}});
  for (auto _ : state) benchmark::DoNotOptimize(direct_solve_oracle(p));
}
BENCHMARK(BM_Oracle)->Arg(40)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_Diagnostics(benchmark::State& state) {
  const auto s = line(weights::two_cosh());
  SamplePlan plan;
  plan.centers = {-1.0, 0.0, 1.0};
  plan.radii = {0.25, 0.5, 1.0, 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(measure_diagnostics(s, plan));
}
BENCHMARK(BM_Diagnostics)->Unit(benchmark::kMillisecond);

void BM_Perron(benchmark::State& state) {
  const auto g = grid(0.025);
  std::vector<std::size_t> omega;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) omega.push_back(i);
  SubharmonicFamilyPlan plan;
  plan.generators = {functions::constant(0.0), functions::square()};
  const Domain d = Domain::nodes(omega, {0, g.size() - 1});
  for (auto _ : state) benchmark::DoNotOptimize(lower_perron(g, d, {{0, 0.0}, {g.size() - 1, 1.0}}, plan));
}
BENCHMARK(BM_Perron)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
