#include <cmath>
#include <string>

#include "bstlab/algorithms.hpp"
#include "bstlab/constructions.hpp"
#include "bstlab/greedy.hpp"
#include "bstlab/interleave.hpp"
#include "bstlab/keyindependent.hpp"
#include "registry.hpp"

namespace bstlab::lab {

namespace {

void interleave_grid(const Params& p, std::uint64_t, ExperimentResult& r) {
  const auto max_e = static_cast<int>(param(p, "max_log_n", 12));
  const auto check_upto = param(p, "check_n", 4096);
  auto run = [&](int k, int l) {
    const int n = k * l;
    const auto seq = gen_tilted_grid(k, l);
    const auto res = composed_execute(seq, uniform_partition(n, l), OnlineAlgorithm::Splay, OnlineAlgorithm::Splay,
                                      n <= check_upto);
    std::int64_t parts = 0;
    for (auto c : res.part_costs) parts += c;
    const double per_key = static_cast<double>(res.total) / n;
    const bool ok = res.bound_holds && per_key <= 40.0;
    r.expect(ok, "tilted grid n=" + std::to_string(n) + ": total/n = " + std::to_string(per_key));
    r.rows.push_back({{"n", n}, {"k", k}, {"l", l}, {"total", res.total}, {"parts", parts},
                      {"template", res.template_cost}, {"template_portion", res.template_portion},
                      {"bound", parts + 3 * res.template_cost}, {"per_key", per_key}, {"pass", ok}});
  };
  run(2, 2);
  for (int e = 6; e <= max_e; ++e) {
    const int k = 1 << (e / 2);
    run(k, (1 << e) / k);
  }
}

AccessSequence family(const std::string& name, int n, int m, Rng& rng) {
  std::vector<int> keys;
  for (int j = 0; j < m; ++j) {
    if (name == "uniform") {
      keys.push_back(uniform_int(rng, 1, n));
    } else if (name == "round-robin-8") {
      keys.push_back(1 + j % 8);
    } else {
      keys.push_back(1 + j % n);
    }
  }
  return AccessSequence(n, std::move(keys));
}

void ki_ratio(const Params& p, std::uint64_t seed, ExperimentResult& r) {
  const auto ns = int_list(p, "n", {64, 128, 256});
  const auto trials = static_cast<int>(param(p, "trials", 200));
  std::uint64_t stream = 0;
  for (int n : ns) {
    const int m = n * static_cast<int>(std::lround(std::log2(n)));
    for (const std::string name : {"uniform", "round-robin-8", "sequential"}) {
      Rng rng(split_seed(seed, stream));
      const auto seq = family(name, n, m, rng);
      const auto rep = ki_ratio_report(seq, trials, split_seed(seed, stream + 1000));
      stream++;
      const bool ok = rep.in_band && rep.ws_costs_ok;
      r.expect(ok, name + " n=" + std::to_string(n) + ": ratio " + std::to_string(rep.ratio));
      r.rows.push_back({{"case", "ratio"}, {"family", name}, {"n", n}, {"m", m}, {"trials", trials},
                        {"mean", rep.estimate.mean}, {"stderr", rep.estimate.std_error}, {"ws", rep.ws},
                        {"f_n", rep.f_n}, {"ratio", rep.ratio}, {"worst_ws_cost_ratio", rep.worst_ws_ratio},
                        {"pass", ok}});
    }
  }
  const auto exact_trials = static_cast<int>(param(p, "exact_trials", 2000));
  for (int n = 1; n <= 6; ++n) {
    Rng rng(split_seed(seed, stream++));
    const auto seq = family("uniform", n, 12, rng);
    const SearchTree tree = build_balanced(n);
    const double exact = ki_mtr_exact(tree, seq);
    const auto est = ki_mtr(tree, seq, exact_trials, split_seed(seed, stream++));
    const bool ok = std::abs(est.mean - exact) <= 3 * est.std_error + 1e-9;
    r.expect(ok, "n=" + std::to_string(n) + ": estimate " + std::to_string(est.mean) + " vs exact " +
                     std::to_string(exact));
    r.rows.push_back({{"case", "exact"}, {"n", n}, {"m", 12}, {"trials", exact_trials}, {"mean", est.mean},
                      {"stderr", est.std_error}, {"exact", exact}, {"pass", ok}});
  }
}

void greedy_validity(const Params& p, std::uint64_t seed, ExperimentResult& r) {
  const auto instances = param(p, "instances", 20);
  std::uint64_t stream = 0;
  for (std::int64_t i = 0; i < instances; ++i) {
    Rng rng(split_seed(seed, stream++));
    const int n = uniform_int(rng, 1, 64);
    const int m = uniform_int(rng, 1, 200);
    const auto seq = random_sequence(n, m, rng);
    const bool with_tree = i % 2 == 1;
    const SearchTree tree = build_random_tree(n, rng);
    const auto res = greedy_run(seq, with_tree ? &tree : nullptr);
    std::string why;
    const bool ok = arborally_satisfied(res.points, &why);
    bool minimal = true;
    if (m <= 30) minimal = rows_minimal(res.points, &why);
    r.expect(ok && minimal, "instance " + std::to_string(i) + ": " + why);
    r.rows.push_back({{"case", "exhaustive"}, {"n", n}, {"m", m}, {"initial_tree", with_tree},
                      {"points", res.points.size()}, {"satisfied", ok}, {"rows_minimal_checked", m <= 30},
                      {"rows_minimal", minimal}, {"pass", ok && minimal}});
  }
  for (int small = 1; small <= 30; small += 29) {
    Rng rng(split_seed(seed, stream++));
    const auto seq = random_sequence(12, small, rng);
    const auto res = greedy_run(seq);
    std::string why;
    const bool ok = rows_minimal(res.points, &why);
    r.expect(ok, "row minimality: " + why);
    r.rows.push_back({{"case", "rows-minimal"}, {"n", 12}, {"m", small}, {"pass", ok}});
  }
  const auto big_m = static_cast<int>(param(p, "m", 10000));
  const auto samples = static_cast<std::size_t>(param(p, "samples", 10000));
  Rng rng(split_seed(seed, stream++));
  const auto seq = random_sequence(1000, big_m, rng);
  const auto res = greedy_run(seq);
  std::string why;
  const bool ok = sampled_arboral_check(res.points, samples, split_seed(seed, stream++), &why);
  r.expect(ok, "sampled check: " + why);
  r.rows.push_back({{"case", "sampled"}, {"n", 1000}, {"m", big_m}, {"samples", samples},
                    {"points", res.points.size()}, {"pass", ok}});
}

void splay_amortized(const Params& p, std::uint64_t seed, ExperimentResult& r) {
  const auto total = param(p, "accesses", 10000);
  const auto max_n = static_cast<int>(param(p, "n", 256));
  std::int64_t done = 0;
  std::uint64_t stream = 0;
  while (done < total) {
    Rng rng(split_seed(seed, stream++));
    const int n = uniform_int(rng, 1, max_n);
    const int m = static_cast<int>(std::min<std::int64_t>(total - done, uniform_int(rng, 100, 1000)));
    const auto seq = random_sequence(n, m, rng);
    const SearchTree start = build_random_tree(n, rng);
    const SearchTree reference = uniform_int(rng, 0, 1) ? build_random_tree(n, rng) : build_balanced(n);
    const auto rep = splay_amortized_check(seq, start, reference, 12.0);
    r.expect(rep.pass, "instance " + std::to_string(stream) + ": access " + std::to_string(rep.first_violation) +
                           " breaks cost + dPhi <= 12 (d_R + 1)");
    r.rows.push_back({{"n", n}, {"m", m}, {"max_ratio", rep.max_ratio}, {"violations", rep.violations},
                      {"pass", rep.pass}});
    done += m;
  }
}

}  // namespace

void register_structures(std::vector<Experiment>& out) {
  out.push_back({"interleave-grid", "time-interleaved execution of tilted grids", interleave_grid});
  out.push_back({"ki-ratio", "key-independent move-to-root vs working set", ki_ratio});
  out.push_back({"greedy-validity", "Greedy point sets are arborally satisfied and row-minimal", greedy_validity});
  out.push_back({"splay-amortized", "splay amortized cost against a reference-tree potential", splay_amortized});
}

}  // namespace bstlab::lab
