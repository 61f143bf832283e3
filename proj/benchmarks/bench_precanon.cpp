#include <benchmark/benchmark.h>

#include "precanon/kostka.hpp"
#include "precanon/rootsys.hpp"
#include "precanon/spherical.hpp"
#include "precanon/weyl.hpp"

#include <vector>

using namespace precanon;

namespace {

Weight wt(std::vector<int> c) { return Weight(std::move(c)); }

void BM_WeylEnumerate(benchmark::State& state) {
  const RootSystem rs = RootSystem::build(Family::D, 4);
  for (auto _ : state) {
    const WeylTable w = WeylTable::enumerate(rs);
    benchmark::DoNotOptimize(w.size());
  }
}

void BM_KostkaFoulkes(benchmark::State& state) {
  const RootSystem rs = RootSystem::build(Family::A, 3);
  for (auto _ : state) {
    // Fresh table each round: measures the memoized fill, not lookups.
    const WeylTable w = WeylTable::enumerate(rs);
    const KostkaTable kt(rs, w);
    QPoly acc;
    for (const Weight& lam : rs.dominant_box(2))
      for (const Weight& mu : rs.dominant_below(lam)) acc += kt.kostka_foulkes(lam, mu);
    benchmark::DoNotOptimize(acc.degree());
  }
}

void BM_TildeH(benchmark::State& state) {
  SphAlgebra alg(RootSystem::build(Family::A, 4));
  std::vector<Weight> probes;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) probes.push_back(wt({a, 1, b, -2}));
  for (auto _ : state) {
    int regular = 0;
    for (const Weight& mu : probes)
      if (!alg.tilde_H(mu).zero) ++regular;
    benchmark::DoNotOptimize(regular);
  }
}

void BM_PrecanonicalLevel2(benchmark::State& state) {
  const RootSystem rs = RootSystem::build(Family::A, 4);
  for (auto _ : state) {
    SphAlgebra alg(rs);  // fresh cache: includes the subset-table build
    const SphElement& e = alg.precanonical(wt({2, 1, 1, 2}), 2);
    benchmark::DoNotOptimize(e.size());
  }
}

void BM_PrecanonicalLevel1(benchmark::State& state) {
  const RootSystem rs = RootSystem::build(Family::A, 4);
  for (auto _ : state) {
    SphAlgebra alg(rs);
    const SphElement& e = alg.precanonical(wt({1, 1, 1, 1}), 1);
    benchmark::DoNotOptimize(e.size());
  }
}

void BM_TransitionColumn(benchmark::State& state) {
  const RootSystem rs = RootSystem::build(Family::A, 3);
  for (auto _ : state) {
    SphAlgebra alg(rs);
    const SphElement col = alg.transition(wt({2, 2, 2}), 2);
    benchmark::DoNotOptimize(col.size());
  }
}

void BM_AtomicDecompositionD4(benchmark::State& state) {
  const RootSystem rs = RootSystem::build(Family::D, 4);
  for (auto _ : state) {
    SphAlgebra alg(rs);
    const SphElement e = alg.atomic_decomposition(wt({1, 1, 1, 1}));
    benchmark::DoNotOptimize(e.size());
  }
}

}  // namespace

BENCHMARK(BM_WeylEnumerate);
BENCHMARK(BM_KostkaFoulkes);
BENCHMARK(BM_TildeH);
BENCHMARK(BM_PrecanonicalLevel2);
BENCHMARK(BM_PrecanonicalLevel1);
BENCHMARK(BM_TransitionColumn);
BENCHMARK(BM_AtomicDecompositionD4);

BENCHMARK_MAIN();
