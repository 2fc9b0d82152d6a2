#include <benchmark/benchmark.h>

#include <random>

#include "bstlab/algorithms.hpp"
#include "bstlab/bounds.hpp"
#include "bstlab/constructions.hpp"
#include "bstlab/greedy.hpp"
#include "bstlab/interleave.hpp"
#include "bstlab/keyindependent.hpp"
#include "bstlab/kserver.hpp"
#include "bstlab/simulation.hpp"

using namespace bstlab;

namespace {

AccessSequence random_sequence(int n, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> d(1, n);
  std::vector<int> keys(m);
  for (auto& k : keys) k = d(rng);
  return {n, keys};
}

void BM_Splay(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const AccessSequence s = random_sequence(n, 10000, 1);
  for (auto _ : state) {
    SearchTree t = build_balanced(n);
    benchmark::DoNotOptimize(run_online(OnlineAlgorithm::Splay, t, s).total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_Splay)->Arg(256)->Arg(4096)->Arg(65536);

void BM_MoveToRoot(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const AccessSequence s = random_sequence(n, 10000, 2);
  for (auto _ : state) {
    SearchTree t = build_balanced(n);
    benchmark::DoNotOptimize(run_online(OnlineAlgorithm::MoveToRoot, t, s).total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_MoveToRoot)->Arg(256)->Arg(4096);

void BM_Greedy(benchmark::State& state) {
  const AccessSequence s = random_sequence(static_cast<int>(state.range(0)), 2000, 3);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_run(s).ledger.total);
}
BENCHMARK(BM_Greedy)->Arg(64)->Arg(1024);

void BM_WorkingSet(benchmark::State& state) {
  const AccessSequence s = random_sequence(512, static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(working_set(s));
}
BENCHMARK(BM_WorkingSet)->Arg(4096)->Arg(1 << 16);

void BM_StaticOptimality(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const AccessSequence s = random_sequence(n, static_cast<std::size_t>(8 * n), 5);
  for (auto _ : state) benchmark::DoNotOptimize(static_optimality(s).value);
}
BENCHMARK(BM_StaticOptimality)->Arg(128)->Arg(1024);

void BM_KLazyFinger(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const AccessSequence s = random_sequence(256, 400, 6);
  const SearchTree t = build_balanced(256);
  for (auto _ : state) benchmark::DoNotOptimize(k_lazy_finger_at(s, t, k));
}
BENCHMARK(BM_KLazyFinger)->Arg(2)->Arg(8);

void BM_Simulation(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  Rng rng(7);
  const SearchTree t = build_random_tree(256, rng);
  const Trace tr = random_trace(t, k, 5000, 8);
  const TopMode mode = state.range(1) ? TopMode::Incremental : TopMode::Rebuild;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(t, k, tr, {mode, false}).simulated_cost);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(tr.size()));
}
BENCHMARK(BM_Simulation)->Args({2, 0})->Args({8, 0})->Args({8, 1});

void BM_ComposedTiltedGrid(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const AccessSequence g = gen_tilted_grid(k, k);
  const Partition p = uniform_partition(k * k, k);
  for (auto _ : state)
    benchmark::DoNotOptimize(composed_execute(g, p, OnlineAlgorithm::Splay, OnlineAlgorithm::Splay, false).total);
}
BENCHMARK(BM_ComposedTiltedGrid)->Arg(16)->Arg(64);

void BM_KeyIndependentMtr(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const AccessSequence s = random_sequence(n, static_cast<std::size_t>(8 * n), 9);
  const SearchTree t = build_balanced(n);
  for (auto _ : state) benchmark::DoNotOptimize(ki_mtr(t, s, 20, 10).mean);
}
BENCHMARK(BM_KeyIndependentMtr)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
