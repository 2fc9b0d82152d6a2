#include <algorithm>
#include <cmath>
#include <string>

#include "bstlab/bounds.hpp"
#include "bstlab/constructions.hpp"
#include "bstlab/kfinger.hpp"
#include "bstlab/kserver.hpp"
#include "bstlab/lab/oracles.hpp"
#include "bstlab/simulation.hpp"
#include "registry.hpp"

namespace bstlab::lab {

namespace {

// Random interleaving of k increasing runs covering [n], reversed when
// `decreasing` is set; its longest decreasing (increasing) subsequence is <= k.
AccessSequence merged_runs(int n, int k, bool decreasing, Rng& rng) {
  std::vector<std::vector<int>> runs(static_cast<std::size_t>(k));
  for (int v = 1; v <= n; ++v) runs[static_cast<std::size_t>(uniform_int(rng, 0, k - 1))].push_back(v);
  std::vector<std::size_t> pos(runs.size(), 0);
  std::vector<int> keys;
  while (static_cast<int>(keys.size()) < n) {
    const auto r = static_cast<std::size_t>(uniform_int(rng, 0, k - 1));
    if (pos[r] < runs[r].size()) keys.push_back(runs[r][pos[r]++]);
  }
  if (decreasing) {
    for (int& v : keys) v = n + 1 - v;
  }
  return AccessSequence(n, std::move(keys));
}

void decomposable_lf(const Params& p, std::uint64_t seed, ExperimentResult& r) {
  const auto ks = int_list(p, "k", {2, 4, 8});
  const auto max_n = param(p, "n", 4096);
  const auto per_depth = param(p, "instances", 3);
  std::uint64_t stream = 0;
  for (int k : ks) {
    for (int depth = 1; depth <= 12; ++depth) {
      bool any_fit = false;
      for (std::int64_t i = 0; i < per_depth; ++i) {
        const auto seq = gen_decomposable(k, depth, split_seed(seed, stream++));
        const int n = seq.universe();
        if (n > max_n) continue;
        any_fit = true;
        const SearchTree tree = build_decomposable_reference_tree(seq, k);
        const auto lf = lazy_finger_at(seq, tree);
        const auto bound = 4 * static_cast<std::int64_t>(n - 1) * ceil_log2(k);
        const bool ok = lf <= bound;
        r.expect(ok, "k=" + std::to_string(k) + " n=" + std::to_string(n) + ": LF " + std::to_string(lf) +
                         " exceeds " + std::to_string(bound));
        r.rows.push_back({{"n", n}, {"k", k}, {"d", decomposability_parameter(seq)}, {"lf", lf},
                          {"bound", bound}, {"pass", ok}});
      }
      if (!any_fit && depth > 1) break;
    }
  }
}

void monotone_kfinger(const Params& p, std::uint64_t seed, ExperimentResult& r) {
  const auto ks = int_list(p, "k", {2, 4, 8});
  const auto ns = int_list(p, "n", {64, 256, 1024, 4096});
  std::uint64_t stream = 0;
  for (int k : ks) {
    for (int n : ns) {
      for (bool decreasing : {false, true}) {
        Rng rng(split_seed(seed, stream++));
        const auto seq = merged_runs(n, k, decreasing, rng);
        const auto strategy = kfinger_monotone_strategy(seq, build_balanced(n), k);
        const auto bound = 4 * static_cast<std::int64_t>(n) * k;
        const bool ok = strategy.cost <= bound;
        r.expect(ok, "k=" + std::to_string(k) + " n=" + std::to_string(n) + ": strategy cost " +
                         std::to_string(strategy.cost) + " exceeds 4nk");
        r.rows.push_back({{"case", "large"}, {"n", n}, {"k", k}, {"runs", decreasing ? "decreasing" : "increasing"},
                          {"cost", strategy.cost}, {"bound", bound}, {"pass", ok}});
      }
    }
  }
  const auto tiny = param(p, "tiny", 60);
  for (std::int64_t i = 0; i < tiny; ++i) {
    Rng rng(split_seed(seed, stream++));
    const int n = uniform_int(rng, 2, 7);
    const int k = uniform_int(rng, 1, std::min(3, n));
    const auto seq = merged_runs(n, k, uniform_int(rng, 0, 1) == 1, rng);
    const SearchTree tree = build_balanced(n);
    const auto strategy = kfinger_monotone_strategy(seq, tree, k);
    const auto exact = oracle::k_lazy_finger(seq, tree, k);
    const bool ok = strategy.cost >= exact && k_lazy_finger_at(seq, tree, k) == exact;
    r.expect(ok, "tiny instance " + std::to_string(i) + ": strategy " + std::to_string(strategy.cost) +
                     " below the exact optimum " + std::to_string(exact));
    r.rows.push_back({{"case", "tiny"}, {"n", n}, {"k", k}, {"cost", strategy.cost}, {"exact", exact}, {"pass", ok}});
  }
}

Row simulation_row(const std::string& source, TopMode mode, int k, int n, const SimulationReport& rep,
                   std::int64_t lfk, ExperimentResult& r) {
  const double factor = 16.0 * std::log2(k + 1.0);
  const double limit = factor * static_cast<double>(rep.machine_cost) + 16.0 * n;
  bool ok = static_cast<double>(rep.simulated_cost) <= limit && rep.max_pseudofinger_depth <= rep.depth_limit &&
            rep.mean_update_cost <= rep.update_limit;
  Row row{{"source", source}, {"top", mode == TopMode::Rebuild ? "rebuild" : "incremental"}, {"k", k}, {"n", n},
          {"machine_cost", rep.machine_cost}, {"simulated_cost", rep.simulated_cost}, {"limit", limit},
          {"ratio", rep.ratio}, {"max_pseudofinger_depth", rep.max_pseudofinger_depth},
          {"depth_limit", rep.depth_limit}, {"mean_update_cost", rep.mean_update_cost},
          {"update_limit", rep.update_limit}};
  if (lfk >= 0) {
    const double lf_limit = factor * static_cast<double>(lfk) + 16.0 * n;
    ok = ok && static_cast<double>(rep.simulated_cost) <= lf_limit;
    row["lfk"] = lfk;
    row["ratio_to_lfk"] = static_cast<double>(rep.simulated_cost) / static_cast<double>(lfk);
  }
  row["pass"] = ok;
  r.expect(ok, source + " k=" + std::to_string(k) + ": simulation overhead above the limit");
  return row;
}

void kfinger_overhead(const Params& p, std::uint64_t seed, ExperimentResult& r) {
  const auto ks = int_list(p, "k", {2, 4, 8});
  const auto n = static_cast<int>(param(p, "n", 256));
  const auto length = static_cast<std::size_t>(param(p, "length", 20000));
  const auto l = static_cast<int>(param(p, "l", 64));
  std::uint64_t stream = 0;
  for (int k : ks) {
    for (TopMode mode : {TopMode::Rebuild, TopMode::Incremental}) {
      SimulationOptions opts;
      opts.top = mode;
      Rng rng(split_seed(seed, stream));
      const SearchTree tree = build_random_tree(n, rng);
      const Trace trace = random_trace(tree, k, length, split_seed(seed, stream + 1));
      r.rows.push_back(simulation_row("random", mode, k, n, simulate(tree, k, trace, opts), -1, r));

      const auto seq = gen_tilted_grid(k, l);
      const SearchTree grid = build_tilted_grid_reference_tree(k, l);
      const auto opt = k_server_on_tree(seq, grid, k);
      const Trace walk = finger_assignment_trace(grid, seq, k, opt.server_of);
      r.rows.push_back(
          simulation_row("tilted-grid", mode, k, seq.universe(), simulate(grid, k, walk, opts, &seq), opt.cost, r));
    }
    stream += 2;
  }
}

void hierarchy_separation(const Params& p, std::uint64_t, ExperimentResult& r) {
  {
    const auto seq = gen_tilted_grid(2, 6);
    const auto m = static_cast<std::int64_t>(seq.size());
    const auto lf1 = static_cast<std::int64_t>(lazy_finger_opt(seq).value) + m;
    const auto lf2 = oracle::k_lazy_finger_opt(seq, 2);
    const double ratio = static_cast<double>(lf1) / static_cast<double>(lf2);
    r.expect(ratio >= 1.5, "exhaustive LF^1 / LF^2 = " + std::to_string(ratio) + " is below 1.5");
    r.rows.push_back({{"case", "exhaustive"}, {"k", 2}, {"n", 12}, {"lf_k_minus_1", lf1}, {"lf_k", lf2},
                      {"ratio", ratio}, {"pass", ratio >= 1.5}});
  }
  const auto max_l = param(p, "l", 512);
  for (int k : {2, 4}) {
    for (std::int64_t l = 8; l <= max_l && k * l <= static_cast<std::int64_t>(kMaxKServerRequests); l *= 4) {
      const auto seq = gen_tilted_grid(k, static_cast<int>(l));
      const SearchTree tree = build_tilted_grid_reference_tree(k, static_cast<int>(l));
      const auto fewer = k_lazy_finger_at(seq, tree, k - 1);
      const auto full = k_lazy_finger_at(seq, tree, k);
      r.rows.push_back({{"case", "reference-tree"}, {"k", k}, {"n", k * l}, {"lf_k_minus_1", fewer}, {"lf_k", full},
                        {"ratio", static_cast<double>(fewer) / static_cast<double>(full)}, {"reported", true}});
    }
  }
}

void phase_separation(const Params& p, std::uint64_t seed, ExperimentResult& r) {
  const auto n = static_cast<int>(param(p, "n", 512));
  const auto k = static_cast<int>(param(p, "k", 2));
  const auto x = static_cast<int>(param(p, "X", 128));
  const auto y = static_cast<int>(param(p, "Y", 4));
  const auto trees = param(p, "trees", 50);
  const auto seq = gen_phase_sequence(n, k, x, y, seed);
  const double ws = working_set(seq);
  const double ws_bound = 1.5 * y * (2.0 * k * std::log2(n) + x * std::log2(2.0 * k));
  r.expect(ws <= ws_bound, "WS " + std::to_string(ws) + " exceeds " + std::to_string(ws_bound));
  std::int64_t best = -1;
  double mean = 0;
  for (std::int64_t t = 0; t < trees; ++t) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(t) + 1));
    const auto v = k_lazy_finger_at(seq, build_random_tree(n, rng), k);
    best = best < 0 ? v : std::min(best, v);
    mean += static_cast<double>(v) / static_cast<double>(trees);
  }
  const double target = 3.0 * ws / std::log2(n);
  r.rows.push_back({{"n", n}, {"k", k}, {"X", x}, {"Y", y}, {"m", seq.size()}, {"ws", ws}, {"ws_bound", ws_bound},
                    {"ws_pass", ws <= ws_bound}, {"lfk_min", best}, {"lfk_mean", mean}, {"lfk_target", target},
                    {"lfk_above_target", static_cast<double>(best) >= target}});
}

}  // namespace

void register_fingers(std::vector<Experiment>& out) {
  out.push_back({"decomposable-lf", "lazy finger on k-decomposable permutations vs 4(n-1)ceil(log k)", decomposable_lf});
  out.push_back({"monotone-kfinger", "monotone k-finger strategy cost vs 4nk and the exact optimum", monotone_kfinger});
  out.push_back({"kfinger-overhead", "cost of simulating k fingers in one BST", kfinger_overhead});
  out.push_back({"hierarchy-separation", "LF^(k-1) vs LF^k on tilted grids", hierarchy_separation});
  out.push_back({"phase-separation", "working set vs LF^k on phase sequences", phase_separation});
}

}  // namespace bstlab::lab
