#include <benchmark/benchmark.h>

#include "stardev/axioms.hpp"
#include "stardev/duality.hpp"
#include "stardev/envelopes.hpp"
#include "stardev/measures.hpp"

using namespace stardev;

namespace {

RandomVariable lattice_variable(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  auto sp = ProbSpace::uniform(n);
  std::vector<double> v(n);
  for (double& x : v) x = static_cast<double>(rng.uniform_int(-16, 16)) * 0.625;
  return RandomVariable(sp, std::move(v));
}

void BM_es_alpha(benchmark::State& state) {
  RandomVariable x = lattice_variable(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(es_alpha(x, 0.1));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_es_alpha)->Range(64, 1 << 14)->Complexity();

void BM_ied(benchmark::State& state) {
  RandomVariable x = lattice_variable(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(ied(x, 0.25));
}
BENCHMARK(BM_ied)->Range(64, 1 << 12);

void BM_counterexample(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(build_counterexample(static_cast<int>(state.range(0)), 0.4));
}
BENCHMARK(BM_counterexample)->Arg(200)->Arg(2000);

void BM_acceptance_roundtrip(benchmark::State& state) {
  DeviationFunctional d = add(iqd_functional(0.4), sd_functional());
  AcceptanceSet a = acceptance_of(d);
  RandomVariable x = lattice_variable(32, 3);
  for (auto _ : state) benchmark::DoNotOptimize(deviation_of(a, x));
}
BENCHMARK(BM_acceptance_roundtrip);

void BM_audit_star_forms(benchmark::State& state) {
  AuditConfig cfg;
  cfg.n_variables = static_cast<int>(state.range(0));
  DeviationFunctional d = composite_iqd_sq_plus_sd(0.4);
  for (auto _ : state) benchmark::DoNotOptimize(star_shapedness_forms(d, cfg));
}
BENCHMARK(BM_audit_star_forms)->Arg(50)->Arg(200);

void BM_dual_es(benchmark::State& state) {
  auto grid = default_alpha_grid(64);
  GFamily zero(grid, {std::vector<double>(grid.size(), 0.0)}, true);
  RandomVariable x = lattice_variable(64, 4);
  for (auto _ : state) benchmark::DoNotOptimize(dual_es_eval(zero, x));
}
BENCHMARK(BM_dual_es);

void BM_lrd_envelope(benchmark::State& state) {
  RandomVariable y = lattice_variable(static_cast<std::size_t>(state.range(0)), 5);
  RayEnvelope env = ray_envelope_lrd(y, lower_range(y));
  RandomVariable x = lattice_variable(static_cast<std::size_t>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(env.eval(x));
}
BENCHMARK(BM_lrd_envelope)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
