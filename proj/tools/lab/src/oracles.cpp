#include "bstlab/lab/oracles.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "bstlab/constructions.hpp"
#include "bstlab/kserver.hpp"

namespace bstlab::oracle {

std::vector<std::int64_t> working_set_sizes(const AccessSequence& seq) {
  // Rescans the window back to the previous occurrence, marking keys with
  // the current access index.
  std::vector<std::size_t> mark(static_cast<std::size_t>(seq.universe()) + 1, 0);
  std::vector<std::int64_t> out;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    const std::size_t stamp = j + 1;
    std::int64_t distinct = 1;
    mark[static_cast<std::size_t>(seq[j])] = stamp;
    for (std::size_t i = j; i-- > 0 && seq[i] != seq[j];) {
      auto& slot = mark[static_cast<std::size_t>(seq[i])];
      if (slot != stamp) {
        slot = stamp;
        ++distinct;
      }
    }
    out.push_back(distinct);
  }
  return out;
}

namespace {

std::vector<int> shape_depths(const std::vector<std::int8_t>& parent) {
  const std::size_t n = parent.size() - 1;
  std::vector<int> depth(n + 1, -1);
  for (std::size_t i = 1; i <= n; ++i) {
    int d = 0;
    for (int cur = parent[i]; cur != 0; cur = parent[static_cast<std::size_t>(cur)]) ++d;
    depth[i] = d;
  }
  return depth;
}

}  // namespace

std::int64_t static_optimality(const AccessSequence& seq) {
  const auto freq = seq.frequencies();
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& shape : all_bst_shapes(seq.universe())) {
    const auto depth = shape_depths(shape);
    std::int64_t total = 0;
    for (std::size_t i = 1; i < freq.size(); ++i) total += freq[i] * depth[i];
    best = std::min(best, total);
  }
  return best;
}

std::int64_t k_lazy_finger(const AccessSequence& seq, const SearchTree& tree, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  std::vector<int> nodes = tree.inorder();
  const std::size_t v = nodes.size();
  std::vector<std::vector<int>> dist(v, std::vector<int>(v));
  for (std::size_t a = 0; a < v; ++a) {
    for (std::size_t b = 0; b < v; ++b) dist[a][b] = tree.distance_of(nodes[a], nodes[b]);
  }
  auto index_of = [&](int key) {
    const int id = tree.at(key);
    return static_cast<int>(std::find(nodes.begin(), nodes.end(), id) - nodes.begin());
  };
  // Every multiset of k node indices, as sorted vectors.
  std::vector<std::vector<int>> configs;
  std::vector<int> cur(static_cast<std::size_t>(k), 0);
  for (;;) {
    configs.push_back(cur);
    int pos = k - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == static_cast<int>(v) - 1) --pos;
    if (pos < 0) break;
    const int next = cur[static_cast<std::size_t>(pos)] + 1;
    for (int i = pos; i < k; ++i) cur[static_cast<std::size_t>(i)] = next;
  }
  std::map<std::vector<int>, std::size_t> id;
  for (std::size_t i = 0; i < configs.size(); ++i) id[configs[i]] = i;
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> dp(configs.size(), 0);
  for (int key : seq) {
    const int q = index_of(key);
    std::vector<std::int64_t> next(configs.size(), kInf);
    for (std::size_t c = 0; c < configs.size(); ++c) {
      if (dp[c] >= kInf) continue;
      for (int i = 0; i < k; ++i) {
        auto moved = configs[c];
        const int from = moved[static_cast<std::size_t>(i)];
        moved[static_cast<std::size_t>(i)] = q;
        std::sort(moved.begin(), moved.end());
        auto& slot = next[id.at(moved)];
        slot = std::min(slot, dp[c] + dist[static_cast<std::size_t>(from)][static_cast<std::size_t>(q)] + 1);
      }
    }
    dp = std::move(next);
  }
  return *std::min_element(dp.begin(), dp.end());
}

std::int64_t k_lazy_finger_opt(const AccessSequence& seq, int k) {
  const auto m = seq.size();
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& shape : all_bst_shapes(seq.universe())) {
    const auto depth = shape_depths(shape);
    auto dist = [&](std::size_t i, std::size_t j) {
      int a = seq[i];
      int b = seq[j];
      int d = 0;
      while (a != b) {
        if (depth[static_cast<std::size_t>(a)] >= depth[static_cast<std::size_t>(b)]) {
          a = shape[static_cast<std::size_t>(a)];
        } else {
          b = shape[static_cast<std::size_t>(b)];
        }
        ++d;
      }
      return d;
    };
    best = std::min(best, solve_k_server(m, k, dist).cost);
  }
  return best;
}

std::size_t longest_increasing(std::span<const int> seq) {
  std::vector<std::size_t> best(seq.size(), 1);
  std::size_t out = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (seq[j] < seq[i]) best[i] = std::max(best[i], best[j] + 1);
    }
    out = std::max(out, best[i]);
  }
  return out;
}

bool contains_pattern(std::span<const int> seq, std::span<const int> pattern) {
  const std::size_t n = seq.size();
  const std::size_t p = pattern.size();
  if (p == 0) return true;
  if (p > n) return false;
  std::vector<std::size_t> pick(p);
  for (std::size_t i = 0; i < p; ++i) pick[i] = i;
  for (;;) {
    bool match = true;
    for (std::size_t a = 0; a < p && match; ++a) {
      for (std::size_t b = 0; b < p && match; ++b) {
        match = (seq[pick[a]] < seq[pick[b]]) == (pattern[a] < pattern[b]);
      }
    }
    if (match) return true;
    std::size_t i = p;
    while (i-- > 0 && pick[i] == n - p + i) {
    }
    if (i == static_cast<std::size_t>(-1)) return false;
    ++pick[i];
    for (std::size_t j = i + 1; j < p; ++j) pick[j] = pick[j - 1] + 1;
  }
}

bool is_simple_permutation(std::span<const int> perm) {
  const std::size_t n = perm.size();
  for (std::size_t lo = 0; lo < n; ++lo) {
    for (std::size_t hi = lo + 1; hi < n; ++hi) {
      if (lo == 0 && hi == n - 1) continue;
      const auto [mn, mx] = std::minmax_element(perm.begin() + static_cast<std::ptrdiff_t>(lo),
                                                perm.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
      if (static_cast<std::size_t>(*mx - *mn) == hi - lo) return false;
    }
  }
  return true;
}

}  // namespace bstlab::oracle
