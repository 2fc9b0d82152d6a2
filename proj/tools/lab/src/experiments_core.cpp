#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bstlab/bounds.hpp"
#include "bstlab/common.hpp"
#include "bstlab/constructions.hpp"
#include "bstlab/lab/experiments.hpp"
#include "bstlab/lab/oracles.hpp"
#include "bstlab/sequences.hpp"
#include "registry.hpp"

namespace bstlab::lab {

void ExperimentResult::expect(bool ok, const std::string& what) {
  if (ok) return;
  pass = false;
  if (failures.size() < 20) failures.push_back(what);
}

std::int64_t param(const Params& params, const std::string& key, std::int64_t fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::vector<int> int_list(const Params& params, const std::string& key, std::vector<int> fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  return {static_cast<int>(it->second)};
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

AccessSequence random_sequence(int n, int m, Rng& rng) {
  // Mixes uniform draws with draws from a small sliding window so that
  // working sets of every size show up.
  std::vector<int> keys;
  keys.reserve(static_cast<std::size_t>(m));
  const int window = uniform_int(rng, 1, n);
  int centre = uniform_int(rng, 1, n);
  const bool local = uniform_int(rng, 0, 1) == 1;
  for (int j = 0; j < m; ++j) {
    if (local) {
      centre = std::clamp(centre + uniform_int(rng, -1, 1), 1, n);
      keys.push_back(std::clamp(centre + uniform_int(rng, -window / 2, window / 2), 1, n));
    } else {
      keys.push_back(uniform_int(rng, 1, n));
    }
  }
  return AccessSequence(n, std::move(keys));
}

namespace {

void ws_oracle(const Params& p, std::uint64_t seed, ExperimentResult& r) {
  const auto sequences = param(p, "sequences", 1000);
  const auto max_n = static_cast<int>(param(p, "n", 512));
  const auto max_m = static_cast<int>(param(p, "m", 4096));
  std::int64_t mismatches = 0;
  std::int64_t accesses = 0;
  for (std::int64_t i = 0; i < sequences; ++i) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(i)));
    const auto seq = random_sequence(uniform_int(rng, 1, max_n), uniform_int(rng, 1, max_m), rng);
    const auto fast = working_set_sizes(seq);
    const auto slow = oracle::working_set_sizes(seq);
    double slow_total = 0;
    for (auto s : slow) slow_total += lg(static_cast<double>(s));
    const bool ok = fast == slow && working_set(seq) == slow_total;
    accesses += static_cast<std::int64_t>(seq.size());
    if (!ok) {
      ++mismatches;
      r.expect(false, "sequence " + std::to_string(i) + " differs from the naive working set");
    }
  }
  r.rows.push_back({{"sequences", sequences}, {"accesses", accesses}, {"mismatches", mismatches},
                    {"pass", mismatches == 0}});
}

void so_oracle(const Params& p, std::uint64_t seed, ExperimentResult& r) {
  const auto instances = param(p, "instances", 100);
  const auto max_n = static_cast<int>(param(p, "n", 10));
  for (std::int64_t i = 0; i < instances; ++i) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(i)));
    const int n = uniform_int(rng, 1, max_n);
    std::vector<int> keys;
    for (int key = 1; key <= n; ++key) {
      const int f = uniform_int(rng, 0, 20);
      keys.insert(keys.end(), static_cast<std::size_t>(f), key);
    }
    if (keys.empty()) keys.push_back(uniform_int(rng, 1, n));
    std::shuffle(keys.begin(), keys.end(), rng);
    const AccessSequence seq(n, keys);
    const auto dp = static_optimality(seq);
    const auto exact = oracle::static_optimality(seq);
    const bool ok = dp.value == static_cast<double>(exact) && dp.tree &&
                    static_optimality_at(seq, *dp.tree) == exact;
    r.expect(ok, "instance " + std::to_string(i) + ": DP " + std::to_string(dp.value) + " vs exhaustive " +
                     std::to_string(exact));
    r.rows.push_back({{"instance", i}, {"n", n}, {"m", seq.size()}, {"dp", dp.value}, {"exhaustive", exact},
                      {"pass", ok}});
  }
}

void lfk_oracle(const Params& p, std::uint64_t seed, ExperimentResult& r) {
  const auto instances = param(p, "instances", 200);
  const auto max_n = static_cast<int>(param(p, "n", 8));
  const auto max_m = static_cast<int>(param(p, "m", 8));
  const auto max_k = static_cast<int>(param(p, "k", 3));
  for (std::int64_t i = 0; i < instances; ++i) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(i)));
    const int n = uniform_int(rng, 1, max_n);
    const int m = uniform_int(rng, 1, max_m);
    const int k = uniform_int(rng, 1, std::min(max_k, n));
    std::vector<int> keys;
    for (int j = 0; j < m; ++j) keys.push_back(uniform_int(rng, 1, n));
    const AccessSequence seq(n, keys);
    const SearchTree tree = build_random_tree(n, rng);
    const auto flow = k_lazy_finger_at(seq, tree, k);
    const auto dp = oracle::k_lazy_finger(seq, tree, k);
    r.expect(flow == dp, "instance " + std::to_string(i) + ": flow " + std::to_string(flow) + " vs DP " +
                             std::to_string(dp));
    r.rows.push_back({{"instance", i}, {"n", n}, {"m", m}, {"k", k}, {"flow", flow}, {"dp", dp}, {"pass", flow == dp}});
  }
}

void wb_entropy(const Params& p, std::uint64_t seed, ExperimentResult& r) {
  const auto instances = param(p, "instances", 40);
  const auto weights = param(p, "weights", 200);
  const auto max_n = static_cast<int>(param(p, "n", 10));
  for (std::int64_t i = 0; i < instances; ++i) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(i)));
    const int n = uniform_int(rng, 1, max_n);
    const auto seq = random_sequence(n, uniform_int(rng, 1, 60), rng);
    const double m = static_cast<double>(seq.size());
    const auto opt = weighted_balance_opt(seq);
    const double h = entropy_bound(seq);
    const bool closed = std::abs(opt.value - h) <= 1e-9;
    r.expect(closed, "instance " + std::to_string(i) + ": WB optimum differs from the entropy bound");
    std::int64_t below = 0;
    std::uniform_real_distribution<double> expo(-5.0, 5.0);
    for (std::int64_t t = 0; t < weights; ++t) {
      std::vector<double> w(static_cast<std::size_t>(n));
      for (auto& x : w) x = std::exp(expo(rng));
      if (opt.value <= weighted_balance(seq, WeightFunction(w)) + 1e-9) ++below;
    }
    r.expect(below == weights, "instance " + std::to_string(i) + ": a weight vector beats the WB optimum");
    const double so = static_cast<double>(oracle::static_optimality(seq));
    const bool sandwich = opt.value <= 8 * so + 8 * m && so <= 8 * opt.value + 8 * m;
    r.expect(sandwich, "instance " + std::to_string(i) + ": WB and SO are not within factor 8 + 8m");
    r.rows.push_back({{"instance", i}, {"n", n}, {"m", seq.size()}, {"wb_opt", opt.value}, {"entropy", h},
                      {"so_exact", so}, {"weights_checked", weights}, {"pass", closed && below == weights && sandwich}});
  }
}

}  // namespace

void register_core(std::vector<Experiment>& out) {
  out.push_back({"ws-oracle", "fast working set sizes equal the naive O(m^2) computation", ws_oracle});
  out.push_back({"so-oracle", "optimal static tree DP equals the exhaustive minimum", so_oracle});
  out.push_back({"lfk-oracle", "k-lazy-finger flow equals the configuration DP", lfk_oracle});
  out.push_back({"wb-entropy", "optimal weighted balance equals entropy; WB and SO sandwich", wb_entropy});
}

const std::vector<Experiment>& experiments() {
  static const std::vector<Experiment> all = [] {
    std::vector<Experiment> v;
    register_core(v);
    register_fingers(v);
    register_structures(v);
    return v;
  }();
  return all;
}

ExperimentResult run_experiment(const std::string& name, const Params& params, std::uint64_t seed) {
  const auto& all = experiments();
  auto it = std::find_if(all.begin(), all.end(), [&](const Experiment& e) { return e.name == name; });
  if (it == all.end()) {
    std::string names;
    for (const auto& e : all) names += (names.empty() ? "" : ", ") + e.name;
    throw std::invalid_argument("unknown experiment '" + name + "'; registered: " + names);
  }
  ExperimentResult r;
  r.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    it->run(params, seed, r);
  } catch (const std::exception& e) {
    r.expect(false, std::string("aborted: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace bstlab::lab
