#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "recsel/estimators.hpp"
#include "recsel/families.hpp"
#include "recsel/montecarlo.hpp"
#include "recsel/rng.hpp"
#include "recsel/stationarity.hpp"

using namespace recsel;

namespace {

void BM_ReplicateGammaAr(benchmark::State& state) {
  SimulationConfig c;
  c.family = FamilySpec::gamma_type(Member::Gamma, 0.5);
  c.theta_model = ParameterSequenceModel::ar_positive_error();
  c.n_target = static_cast<int>(state.range(0));
  std::uint64_t r = 0;
  for (auto _ : state) {
    Rng rng = Rng::for_stream(1, r++);
    benchmark::DoNotOptimize(run_replicate(c, rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ReplicateGammaAr)->Arg(2)->Arg(4);

// Constant theta uses the skip-ahead sampler, so cost grows with n only.
void BM_ReplicateConstantSkipAhead(benchmark::State& state) {
  SimulationConfig c;
  c.family = FamilySpec::hazard(Member::Exponential);
  c.n_target = static_cast<int>(state.range(0));
  c.max_observations = 1e300;
  std::uint64_t r = 0;
  for (auto _ : state) {
    Rng rng = Rng::for_stream(2, r++);
    benchmark::DoNotOptimize(run_replicate(c, rng));
  }
}
BENCHMARK(BM_ReplicateConstantSkipAhead)->Arg(10)->Arg(50);

void BM_NullStatistic(benchmark::State& state) {
  Rng rng = Rng::for_stream(3, 0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_null_T(n, rng));
}
BENCHMARK(BM_NullStatistic)->Arg(2)->Arg(10);

void BM_RiskGeneralGamma(benchmark::State& state) {
  const double p = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(risk_general_gamma(
        [p](double t, double prev) { return umvue_gamma(prev, t, p); }, 1.3, 4.2, p));
  }
}
BENCHMARK(BM_RiskGeneralGamma);

void BM_RiskGeneralPhr(benchmark::State& state) {
  const FamilySpec f = FamilySpec::custom_hazard(PowerCurve{4.0, 1.9, 1.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(risk_general_phr(
        [&f](double t, double prev) { return cumulative_hazard(f, t) - cumulative_hazard(f, prev); },
        12.0, 20.0, f));
  }
}
BENCHMARK(BM_RiskGeneralPhr);

}  // namespace

BENCHMARK_MAIN();
