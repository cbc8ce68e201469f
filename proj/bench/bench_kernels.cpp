// Serial reference kernels against their OpenMP counterparts.
// Worker count follows CONFIGBOUNDS_THREADS.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cfgbounds/configspace.hpp"
#include "cfgbounds/counterexample.hpp"
#include "cfgbounds/dpfit.hpp"
#include "cfgbounds/rademacher.hpp"

using namespace cfgbounds;

namespace {

PiecewiseConstant distinct_steps(int t, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v;
  while (static_cast<int>(v.size()) < t) {
    const double x = u(gen);
    if (v.empty() || x != v.back()) v.push_back(x);
  }
  return PiecewiseConstant::equal_width(0.0, 1.0, v);
}

rademacher::DualSample sample(int n, int t) {
  std::vector<PiecewiseConstant> duals;
  for (int i = 0; i < n; ++i) duals.push_back(distinct_steps(t, 100 + static_cast<std::uint64_t>(i)));
  return rademacher::DualSample(duals);
}

template <bool Parallel>
void BM_Fit(benchmark::State& state) {
  const auto f = distinct_steps(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? dpfit::fit(f, 8) : dpfit::fit_serial(f, 8));
  }
}

template <bool Parallel>
void BM_RadExact(benchmark::State& state) {
  const auto s = sample(static_cast<int>(state.range(0)), 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? rademacher::empirical_rad_exact(s)
                                      : rademacher::empirical_rad_exact_serial(s));
  }
}

template <bool Parallel>
void BM_RadMc(benchmark::State& state) {
  const auto s = sample(50, 20);
  const auto draws = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? rademacher::empirical_rad_mc(s, draws, 7)
                                      : rademacher::empirical_rad_mc_serial(s, draws, 7));
  }
}

template <bool Parallel>
void BM_RadLowerDemo(benchmark::State& state) {
  const counterexample::CosineFamily fam(0.1, 2.0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? counterexample::rad_lower_demo(fam, n, 0.4)
                                      : counterexample::rad_lower_demo_serial(fam, n, 0.4));
  }
}

template <bool Parallel>
void BM_ExtractDuals(benchmark::State& state) {
  std::vector<solver::IntegerProgram> instances;
  std::vector<std::string> ids;
  for (int i = 0; i < static_cast<int>(state.range(0)); ++i) {
    configspace::WdpGenConfig gen;
    gen.seed = configspace::derive_seed(9, static_cast<std::uint64_t>(i));
    instances.push_back(configspace::generate_instance(gen));
    ids.push_back("i" + std::to_string(i));
  }
  const configspace::RulePair rules;
  configspace::ExtractOptions opt;
  opt.grid_eps = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? configspace::extract_duals(instances, ids, rules, 20, opt)
                                      : configspace::extract_duals_serial(instances, ids, rules, 20, opt));
  }
}

}  // namespace

BENCHMARK(BM_Fit<false>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fit<true>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RadExact<false>)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RadExact<true>)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RadMc<false>)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RadMc<true>)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RadLowerDemo<false>)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RadLowerDemo<true>)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractDuals<false>)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractDuals<true>)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
