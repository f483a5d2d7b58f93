#include <vector>

#include <benchmark/benchmark.h>

#include "hsf/evolve.hpp"
#include "hsf/fragments.hpp"
#include "hsf/hamiltonian.hpp"

using namespace hsf;

static void BM_BuildTotal(benchmark::State& state) {
  const Lattice l(static_cast<std::size_t>(state.range(0)), 4);
  const auto p = canonical_partition(l);
  const auto c = sample_gaussian(l, 1.0, 0.3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_h_total(l, p, c, 0.01));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(l.hilbert_dimension()));
}
BENCHMARK(BM_BuildTotal)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_Apply(benchmark::State& state) {
  const Lattice l(static_cast<std::size_t>(state.range(0)), 4);
  const auto h = build_h_tfim(l, sample_gaussian(l, 1.0, 0.3, 1), 0.4);
  const auto psi = ghz_x(l.size());
  std::vector<cplx> out(psi.dimension());
  for (auto _ : state) {
    h.apply(psi.amplitudes(), out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_Apply)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

static void BM_EvolveKrylov(benchmark::State& state) {
  const Lattice l(3, 4);
  const EvolutionEngine e(build_h_tfim(l, sample_gaussian(l, 1.0, 0.3, 1), 0.4), EvolutionMethod::Krylov);
  const auto psi = ghz_x(l.size());
  for (auto _ : state) benchmark::DoNotOptimize(e.evolve(psi, 1.0));
}
BENCHMARK(BM_EvolveKrylov)->Unit(benchmark::kMillisecond);

static void BM_EvolveSpectral(benchmark::State& state) {
  const Lattice l(3, 3);
  const EvolutionEngine e(build_h_tfim(l, sample_gaussian(l, 1.0, 0.3, 1), 0.4), EvolutionMethod::EigenDecomposition);
  const auto psi = ghz_x(l.size());
  for (auto _ : state) benchmark::DoNotOptimize(e.evolve(psi, 1.0));
}
BENCHMARK(BM_EvolveSpectral)->Unit(benchmark::kMillisecond);

static void BM_EngineSetup(benchmark::State& state) {
  const Lattice l(3, 3);
  const auto h = build_h_tfim(l, sample_gaussian(l, 1.0, 0.3, 1), 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(EvolutionEngine(h, EvolutionMethod::EigenDecomposition));
}
BENCHMARK(BM_EngineSetup)->Unit(benchmark::kMillisecond);

static void BM_FragmentCensus(benchmark::State& state) {
  const Lattice l(static_cast<std::size_t>(state.range(0)), 4);
  const HomogeneousFlipRule rule(l);
  for (auto _ : state) {
    benchmark::DoNotOptimize(components_from_rule(l, [&](BasisState s, Site i) { return rule.allows(s, i); }));
  }
}
BENCHMARK(BM_FragmentCensus)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
