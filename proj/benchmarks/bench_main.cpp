#include <benchmark/benchmark.h>

#include "selfstab/alpha_model.hpp"
#include "selfstab/point_process.hpp"
#include "selfstab/simulate.hpp"
#include "selfstab/solver.hpp"
#include "selfstab/stable.hpp"

using namespace selfstab;

namespace {

void BM_GeneratePoissonStrip(benchmark::State& state) {
  const double N = static_cast<double>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    PointSet ps = generate_poisson_strip({0.0, 1.0, 1.0, N, seed++});
    benchmark::DoNotOptimize(ps.points.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * (N - 1)));
}
BENCHMARK(BM_GeneratePoissonStrip)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_SolveSequential(benchmark::State& state) {
  AlphaModel m = AlphaModel::cosine(0.57, 0.4);
  PointSet ps = generate_poisson_strip({0.0, 1.0, 1.0,
                                        static_cast<double>(state.range(0)), 7});
  for (auto _ : state) {
    JumpFunction f = solve_sequential(ps, m, 0.0);
    benchmark::DoNotOptimize(f.final_value());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ps.size()));
}
BENCHMARK(BM_SolveSequential)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_CmsStableSample(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto v = cms_stable_sample(0.7, 1.0, static_cast<std::size_t>(state.range(0)), seed++);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CmsStableSample)->Arg(10000)->Arg(100000);

void BM_SimulatePath(benchmark::State& state) {
  AlphaModel m = AlphaModel::cosine(0.57, 0.4);
  TruncationPlan plan;
  plan.K = 1.0;
  plan.N = static_cast<double>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    SampledPath p = simulate_path(m, 0.0, 0.0, 1.0, plan, seed++, 1000);
    benchmark::DoNotOptimize(p.final_value());
  }
}
BENCHMARK(BM_SimulatePath)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
