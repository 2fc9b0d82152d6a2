#include "bstlab/keyindependent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bstlab/algorithms.hpp"
#include "bstlab/bounds.hpp"
#include "bstlab/common.hpp"
#include "bstlab/constructions.hpp"

namespace bstlab {

std::int64_t mtr_cost(const SearchTree& tree0, const AccessSequence& seq) {
  SearchTree t = tree0;
  std::int64_t total = 0;
  for (int key : seq) total += mtr_access(t, key);
  return total;
}

double KIAccessStats::worst_bound_ratio() const {
  double worst = 0;
  for (std::size_t s = 1; s < count.size(); ++s) {
    if (count[s]) worst = std::max(worst, mean_cost(s) / (4.0 * (std::log2(static_cast<double>(s)) + 1.0)));
  }
  return worst;
}

namespace {

// One MTR run over the relabeled sequence with the structural checks.
std::int64_t checked_trial(const SearchTree& tree0, const AccessSequence& seq, const std::vector<int>& pi,
                           const std::vector<std::int64_t>& ws, KIAccessStats* stats) {
  SearchTree t = tree0;
  const auto cap = static_cast<std::size_t>(t.capacity());
  std::vector<char> accessed(cap, 0);
  std::vector<std::int64_t> last(cap, -1);  // time of the latest access, by node
  // Accessed nodes whose parent is not accessed; the root counts too.
  std::int64_t boundary = 0;
  auto bad = [&](int id) {
    if (id == SearchTree::kNil || !accessed[static_cast<std::size_t>(id)]) return 0;
    const int p = t.node(id).parent;
    return p == SearchTree::kNil || !accessed[static_cast<std::size_t>(p)] ? 1 : 0;
  };
  std::int64_t total = 0;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    const int x = t.at(pi[static_cast<std::size_t>(seq[j])]);
    std::int64_t cost = 1;
    const bool repeat = accessed[static_cast<std::size_t>(x)];
    for (int a = t.node(x).parent; a != SearchTree::kNil; a = t.node(a).parent) {
      ++cost;
      if (repeat && last[static_cast<std::size_t>(a)] <= last[static_cast<std::size_t>(x)]) {
        throw std::logic_error("an ancestor of a repeated access was not accessed since its previous access");
      }
    }
    if (repeat && stats) {
      const auto s = static_cast<std::size_t>(ws[j]);
      if (stats->count.size() <= s) {
        stats->count.resize(s + 1, 0);
        stats->cost_sum.resize(s + 1, 0.0);
      }
      ++stats->count[s];
      stats->cost_sum[s] += static_cast<double>(cost);
    }
    // Mark, then rotate to the root, keeping the boundary count current.
    auto touch = [&](std::initializer_list<int> ids, int sign) {
      for (int id : ids) boundary += sign * bad(id);
    };
    touch({x, t.node(x).left, t.node(x).right}, -1);
    accessed[static_cast<std::size_t>(x)] = 1;
    touch({x, t.node(x).left, t.node(x).right}, +1);
    while (t.node(x).parent != SearchTree::kNil) {
      const int p = t.node(x).parent;
      const int mid = t.node(p).left == x ? t.node(x).right : t.node(x).left;
      touch({x, p, mid}, -1);
      t.rotate(x);
      touch({x, p, mid}, +1);
    }
    last[static_cast<std::size_t>(x)] = static_cast<std::int64_t>(j);
    if (boundary != 1) throw std::logic_error("accessed keys do not form a component containing the root");
    total += cost;
  }
  return total;
}

}  // namespace

KIEstimate ki_mtr(const SearchTree& tree0, const AccessSequence& seq, int trials, std::uint64_t seed,
                  KIAccessStats* stats) {
  if (trials < 1) throw std::invalid_argument("ki_mtr needs at least one trial");
  const int n = seq.universe();
  if (static_cast<int>(tree0.size()) != n) throw std::invalid_argument("ki_mtr: tree must hold exactly [n]");
  const auto ws = working_set_sizes(seq);
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(trials));
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(trial)));
    std::vector<int> pi(static_cast<std::size_t>(n) + 1);
    std::iota(pi.begin(), pi.end(), 0);
    std::shuffle(pi.begin() + 1, pi.end(), rng);
    samples.push_back(static_cast<double>(checked_trial(tree0, seq, pi, ws, stats)));
  }
  KIEstimate est{0, 0, trials, seed};
  for (double v : samples) est.mean += v;
  est.mean /= trials;
  if (trials > 1) {
    double var = 0;
    for (double v : samples) var += (v - est.mean) * (v - est.mean);
    est.std_error = std::sqrt(var / (trials - 1) / trials);
  }
  return est;
}

double ki_mtr_exact(const SearchTree& tree0, const AccessSequence& seq) {
  const int n = seq.universe();
  if (n > kMaxExactKeys) throw GuardExceeded("ki_mtr_exact enumerates n! relabelings; n <= 8");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  double total = 0;
  std::int64_t count = 0;
  do {
    std::vector<int> keys;
    keys.reserve(seq.size());
    for (int k : seq) keys.push_back(perm[static_cast<std::size_t>(k - 1)]);
    total += static_cast<double>(mtr_cost(tree0, AccessSequence(n, std::move(keys))));
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / static_cast<double>(count);
}

KIReport ki_ratio_report(const AccessSequence& seq, int trials, std::uint64_t seed) {
  require_nonempty(seq);
  const SearchTree tree = build_balanced(seq.universe());
  KIAccessStats stats;
  KIReport r;
  r.estimate = ki_mtr(tree, seq, trials, seed, &stats);
  r.ws = working_set(seq);
  for (int d : tree.depths()) r.f_n += std::max(d, 0);
  r.m = static_cast<std::int64_t>(seq.size());
  r.ratio = r.estimate.mean / (r.ws + static_cast<double>(r.f_n) + static_cast<double>(r.m));
  r.in_band = r.ratio >= 1.0 / 16 && r.ratio <= 16.0;
  r.worst_ws_ratio = stats.worst_bound_ratio();
  r.ws_costs_ok = r.worst_ws_ratio <= 1.0;
  return r;
}

}  // namespace bstlab
