#include "bstlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdlib>
#include <map>
#include <optional>
#include <tuple>
#include <stdexcept>

#include "bstlab/sequences.hpp"

namespace bstlab {

double balance_bound(const AccessSequence& seq) {
  require_nonempty(seq);
  return static_cast<double>(seq.size()) * lg(seq.universe());
}

double entropy_bound(const AccessSequence& seq) {
  require_nonempty(seq);
  const double m = static_cast<double>(seq.size());
  double h = 0.0;
  for (auto mi : seq.frequencies()) {
    if (mi > 0) h += static_cast<double>(mi) * lg(m / static_cast<double>(mi));
  }
  return h;
}

namespace {

void require_weights_cover(const AccessSequence& seq, const WeightFunction& w) {
  if (w.universe() != seq.universe()) throw std::invalid_argument("weight function universe differs from the sequence");
}

}  // namespace

double weighted_balance(const AccessSequence& seq, const WeightFunction& w) {
  require_nonempty(seq);
  require_weights_cover(seq, w);
  double total = 0.0;
  for (int s : seq) total += lg(w.total() / w(s));
  return total;
}

BoundValue weighted_balance_opt(const AccessSequence& seq) {
  require_nonempty(seq);
  const auto freq = seq.frequencies();
  const double m = static_cast<double>(seq.size());
  const double tiny = 1e-15 * m / seq.universe();
  std::vector<double> w;
  for (int i = 1; i <= seq.universe(); ++i) {
    const auto mi = freq[static_cast<std::size_t>(i)];
    w.push_back(mi > 0 ? static_cast<double>(mi) : tiny);
  }
  return {"wb", entropy_bound(seq), std::nullopt, WeightFunction(std::move(w)), std::nullopt};
}

double static_finger_at(const AccessSequence& seq, int f) {
  require_nonempty(seq);
  if (f < 1 || f > seq.universe()) throw std::invalid_argument("finger outside [1, n]");
  double total = 0.0;
  for (int s : seq) total += lg(std::abs(f - s) + 1.0);
  return total;
}

BoundValue static_finger(const AccessSequence& seq) {
  require_nonempty(seq);
  // SF_f is a sum of concave functions of f on each side of every access, so
  // a direct scan over f is the simplest exact method.
  BoundValue best{"sf", std::numeric_limits<double>::infinity(), std::nullopt, std::nullopt, std::nullopt};
  const auto freq = seq.frequencies();
  for (int f = 1; f <= seq.universe(); ++f) {
    double total = 0.0;
    for (int i = 1; i <= seq.universe(); ++i) {
      const auto mi = freq[static_cast<std::size_t>(i)];
      if (mi) total += static_cast<double>(mi) * lg(std::abs(f - i) + 1.0);
    }
    if (total < best.value) {
      best.value = total;
      best.finger = f;
    }
  }
  return best;
}

double weighted_static_finger_at(const AccessSequence& seq, const WeightFunction& w, int f) {
  require_nonempty(seq);
  require_weights_cover(seq, w);
  if (f < 1 || f > seq.universe()) throw std::invalid_argument("finger outside [1, n]");
  double total = 0.0;
  for (int s : seq) total += lg(w.range(f, s) / std::min(w(f), w(s)));
  return total;
}

double dynamic_finger(const AccessSequence& seq) {
  require_nonempty(seq);
  double total = 0.0;
  for (std::size_t j = 1; j < seq.size(); ++j) total += lg(std::abs(seq[j] - seq[j - 1]) + 1.0);
  return total;
}

double weighted_dynamic_finger(const AccessSequence& seq, const WeightFunction& w) {
  require_nonempty(seq);
  require_weights_cover(seq, w);
  double total = 0.0;
  for (std::size_t j = 1; j < seq.size(); ++j) {
    total += lg(w.range(seq[j - 1], seq[j]) / std::min(w(seq[j - 1]), w(seq[j])));
  }
  return total;
}

std::vector<std::int64_t> working_set_sizes(const AccessSequence& seq) {
  const std::size_t m = seq.size();
  std::vector<int> fenwick(m + 1, 0);
  auto add = [&](std::size_t pos, int delta) {
    for (; pos <= m; pos += pos & (~pos + 1)) fenwick[pos] += delta;
  };
  auto prefix = [&](std::size_t pos) {
    std::int64_t s = 0;
    for (; pos > 0; pos -= pos & (~pos + 1)) s += fenwick[pos];
    return s;
  };
  std::vector<std::size_t> last(static_cast<std::size_t>(seq.universe()) + 1, 0);
  std::vector<std::int64_t> sizes;
  sizes.reserve(m);
  for (std::size_t j = 1; j <= m; ++j) {
    const auto key = static_cast<std::size_t>(seq[j - 1]);
    const std::size_t rho = last[key];
    // Positions in (rho, j) holding the latest occurrence of their key.
    sizes.push_back(prefix(j - 1) - prefix(rho) + 1);
    if (rho) add(rho, -1);
    add(j, 1);
    last[key] = j;
  }
  return sizes;
}

double working_set(const AccessSequence& seq) {
  require_nonempty(seq);
  double total = 0.0;
  for (auto s : working_set_sizes(seq)) total += lg(static_cast<double>(s));
  return total;
}

std::int64_t static_optimality_at(const AccessSequence& seq, const SearchTree& tree) {
  require_nonempty(seq);
  std::int64_t total = 0;
  const auto freq = seq.frequencies();
  for (int i = 1; i <= seq.universe(); ++i) {
    const auto mi = freq[static_cast<std::size_t>(i)];
    if (mi) total += mi * tree.depth(i);
  }
  return total;
}

BoundValue static_optimality(const AccessSequence& seq) {
  require_nonempty(seq);
  const auto freq = seq.frequencies();
  std::vector<int> keys;
  std::vector<std::int64_t> f;
  for (int i = 1; i <= seq.universe(); ++i) {
    if (freq[static_cast<std::size_t>(i)]) {
      keys.push_back(i);
      f.push_back(freq[static_cast<std::size_t>(i)]);
    }
  }
  const std::size_t n = keys.size();
  if (n > kMaxOptimalTreeKeys) {
    throw GuardExceeded("optimal static tree is limited to " + std::to_string(kMaxOptimalTreeKeys) +
                        " distinct keys; use the entropy bound instead");
  }
  std::vector<std::int64_t> pre(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) pre[i + 1] = pre[i] + f[i];
  // Packed upper triangle: cell (i, j), i <= j.
  auto idx = [n](std::size_t i, std::size_t j) { return i * (2 * n - i + 1) / 2 + (j - i); };
  std::vector<std::int64_t> cost(n * (n + 1) / 2);
  std::vector<std::uint16_t> root(n * (n + 1) / 2);
  auto c = [&](std::size_t i, std::size_t j, bool empty) -> std::int64_t { return empty ? 0 : cost[idx(i, j)]; };
  for (std::size_t i = 0; i < n; ++i) {
    cost[idx(i, i)] = f[i];
    root[idx(i, i)] = static_cast<std::uint16_t>(i);
  }
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::size_t j = i + len - 1;
      const std::size_t lo = root[idx(i, j - 1)];
      const std::size_t hi = root[idx(i + 1, j)];
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      std::size_t arg = lo;
      for (std::size_t r = lo; r <= hi; ++r) {
        const std::int64_t v = c(i, r - 1, r == i) + c(r + 1, j, r == j);
        if (v < best) {
          best = v;
          arg = r;
        }
      }
      cost[idx(i, j)] = best + pre[j + 1] - pre[i];
      root[idx(i, j)] = static_cast<std::uint16_t>(arg);
    }
  }

  SearchTree t;
  std::vector<int> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = t.add_node(keys[i]);
  struct Frame {
    std::size_t lo, hi;
    int parent;
    bool left;
  };
  std::vector<Frame> stack{{0, n - 1, SearchTree::kNil, false}};
  while (!stack.empty()) {
    const Frame fr = stack.back();
    stack.pop_back();
    const std::size_t r = root[idx(fr.lo, fr.hi)];
    if (fr.parent == SearchTree::kNil) {
      t.set_root(id[r]);
    } else if (fr.left) {
      t.attach_left(fr.parent, id[r]);
    } else {
      t.attach_right(fr.parent, id[r]);
    }
    if (r > fr.lo) stack.push_back({fr.lo, r - 1, id[r], true});
    if (r < fr.hi) stack.push_back({r + 1, fr.hi, id[r], false});
  }
  // Unaccessed keys fill the empty slot of each gap as balanced subtrees.
  auto hang = [&](int lo, int hi, int left_nb, int right_nb) {
    if (lo > hi) return;
    int top = SearchTree::kNil;
    std::vector<std::tuple<int, int, int, bool>> st{{lo, hi, SearchTree::kNil, false}};
    while (!st.empty()) {
      auto [a, b, parent, is_left] = st.back();
      st.pop_back();
      if (a > b) continue;
      const int mid = a + (b - a) / 2;
      const int node = t.add_node(mid);
      if (parent == SearchTree::kNil) {
        top = node;
      } else if (is_left) {
        t.attach_left(parent, node);
      } else {
        t.attach_right(parent, node);
      }
      st.emplace_back(a, mid - 1, node, true);
      st.emplace_back(mid + 1, b, node, false);
    }
    if (left_nb != SearchTree::kNil && t.node(left_nb).right == SearchTree::kNil) {
      t.attach_right(left_nb, top);
    } else {
      t.attach_left(right_nb, top);
    }
  };
  hang(1, keys.front() - 1, SearchTree::kNil, id.front());
  for (std::size_t i = 0; i + 1 < n; ++i) hang(keys[i] + 1, keys[i + 1] - 1, id[i], id[i + 1]);
  hang(keys.back() + 1, seq.universe(), id.back(), SearchTree::kNil);

  const auto value = cost[idx(0, n - 1)] - static_cast<std::int64_t>(seq.size());
  return {"so", static_cast<double>(value), std::move(t), std::nullopt, std::nullopt};
}

std::int64_t fixed_finger_at(const AccessSequence& seq, const SearchTree& tree, const Key& f) {
  require_nonempty(seq);
  const int fid = tree.at(f);
  std::int64_t total = 0;
  for (int s : seq) total += tree.distance_of(fid, tree.at(s));
  return total;
}

std::int64_t lazy_finger_at(const AccessSequence& seq, const SearchTree& tree) {
  require_nonempty(seq);
  std::int64_t total = 0;
  for (std::size_t j = 1; j < seq.size(); ++j) total += tree.distance(seq[j - 1], seq[j]);
  return total;
}

double unified_at(const AccessSequence& seq, const SearchTree& tree, int f) {
  require_nonempty(seq);
  const auto ws = working_set_sizes(seq);
  double total = 0.0;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    const double sf = std::abs(f - seq[j]) + 1.0;
    const double so = tree.depth(seq[j]) + 1.0;
    total += lg(std::min({sf, so, static_cast<double>(ws[j])}));
  }
  return total;
}

namespace {

struct ShapeMetric {
  int n;
  std::vector<int> depth;
  const std::vector<std::int8_t>* parent = nullptr;

  explicit ShapeMetric(int size) : n(size), depth(static_cast<std::size_t>(size) + 1) {}

  void load(const std::vector<std::int8_t>& p) {
    parent = &p;
    std::fill(depth.begin(), depth.end(), -1);
    for (int i = 1; i <= n; ++i) depth_of(i);
  }
  int depth_of(int i) {
    auto& d = depth[static_cast<std::size_t>(i)];
    if (d >= 0) return d;
    const int p = (*parent)[static_cast<std::size_t>(i)];
    d = p == 0 ? 0 : depth_of(p) + 1;
    return d;
  }
  int dist(int a, int b) const {
    int da = depth[static_cast<std::size_t>(a)];
    int db = depth[static_cast<std::size_t>(b)];
    int d = 0;
    while (da > db) {
      a = (*parent)[static_cast<std::size_t>(a)];
      --da;
      ++d;
    }
    while (db > da) {
      b = (*parent)[static_cast<std::size_t>(b)];
      --db;
      ++d;
    }
    while (a != b) {
      a = (*parent)[static_cast<std::size_t>(a)];
      b = (*parent)[static_cast<std::size_t>(b)];
      d += 2;
    }
    return d;
  }
};

}  // namespace

BoundValue lazy_finger_opt(const AccessSequence& seq) {
  require_nonempty(seq);
  const int n = seq.universe();
  const auto& shapes = all_bst_shapes(n);
  std::map<std::pair<int, int>, std::int64_t> pairs;
  for (std::size_t j = 1; j < seq.size(); ++j) {
    if (seq[j] != seq[j - 1]) ++pairs[{seq[j - 1], seq[j]}];
  }
  ShapeMetric metric(n);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::size_t arg = 0;
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    metric.load(shapes[s]);
    std::int64_t total = 0;
    for (const auto& [ab, count] : pairs) {
      total += count * metric.dist(ab.first, ab.second);
      if (total >= best) break;
    }
    if (total < best) {
      best = total;
      arg = s;
    }
  }
  return {"lf", static_cast<double>(best), tree_from_parents(shapes[arg]), std::nullopt, std::nullopt};
}

BoundValue fixed_finger_opt(const AccessSequence& seq) {
  require_nonempty(seq);
  const int n = seq.universe();
  if (n > kMaxFixedFingerKeys) {
    throw GuardExceeded("exhaustive fixed-finger minimum is limited to n <= " + std::to_string(kMaxFixedFingerKeys));
  }
  const auto& shapes = all_bst_shapes(n);
  const auto freq = seq.frequencies();
  ShapeMetric metric(n);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::size_t arg = 0;
  int arg_f = 1;
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    metric.load(shapes[s]);
    for (int f = 1; f <= n; ++f) {
      std::int64_t total = 0;
      for (int i = 1; i <= n; ++i) {
        const auto mi = freq[static_cast<std::size_t>(i)];
        if (mi) total += mi * metric.dist(f, i);
      }
      if (total < best) {
        best = total;
        arg = s;
        arg_f = f;
      }
    }
  }
  return {"ff", static_cast<double>(best), tree_from_parents(shapes[arg]), std::nullopt, arg_f};
}

std::int64_t k_lazy_finger_at(const AccessSequence& seq, const SearchTree& tree, int k) {
  return k_server_on_tree(seq, tree, k).cost;
}

BoundValue fixed_finger_upper(const AccessSequence& seq) {
  BoundValue out = static_optimality(seq);
  out.kind = "ff-upper";
  out.finger = static_cast<int>(out.tree->key(out.tree->root()).as_integer());
  return out;
}

namespace {

// One pass of a run-assignment policy. Best fit (the run whose last key is
// closest in value) never needs more runs than the longest opposite
// monotone subsequence; nearest (the fitting run with the closest finger,
// opening a fresh run while fewer than k exist) may fail, signalled by an
// empty result.
std::optional<MonotoneStrategy> assign_runs(const AccessSequence& seq, const SearchTree& tree, int k,
                                            bool increasing, bool nearest) {
  MonotoneStrategy out;
  out.increasing = increasing;
  std::vector<int> last;  // last key of each run
  out.finger_of.reserve(seq.size());
  for (int x : seq) {
    int pick = -1;
    int best = 0;
    for (std::size_t r = 0; r < last.size(); ++r) {
      const bool fits = increasing ? last[r] <= x : last[r] >= x;
      if (!fits) continue;
      const int score = nearest ? tree.distance(last[r], x) : std::abs(x - last[r]);
      if (pick < 0 || score < best) {
        pick = static_cast<int>(r);
        best = score;
      }
    }
    const bool room = static_cast<int>(last.size()) < k;
    if (pick < 0 || (nearest && room && best > 0)) {
      if (!room && !nearest) throw std::logic_error("patience partition used more than k runs");
      if (!room) return std::nullopt;
      pick = static_cast<int>(last.size());
      last.push_back(x);
      out.cost += 1;
    } else {
      out.cost += 1 + tree.distance(last[static_cast<std::size_t>(pick)], x);
      last[static_cast<std::size_t>(pick)] = x;
    }
    out.finger_of.push_back(pick);
  }
  out.fingers_used = static_cast<int>(last.size());
  return out;
}

}  // namespace

MonotoneStrategy kfinger_monotone_strategy(const AccessSequence& seq, const SearchTree& tree, int k) {
  require_nonempty(seq);
  if (k < 1) throw std::invalid_argument("monotone strategy needs k >= 1");
  bool increasing = true;
  if (longest_decreasing(seq.keys()) <= static_cast<std::size_t>(k)) {
    increasing = true;
  } else if (longest_increasing(seq.keys()) <= static_cast<std::size_t>(k)) {
    increasing = false;
  } else {
    throw std::invalid_argument("sequence is not " + std::to_string(k) + "-monotone");
  }
  MonotoneStrategy out = *assign_runs(seq, tree, k, increasing, false);
  if (auto near = assign_runs(seq, tree, k, increasing, true); near && near->cost < out.cost) out = *near;
  return out;
}

WeightFunction so_witness_to_weights(const SearchTree& tree) { return weights_from_tree(tree); }

SearchTree weights_to_so_witness(const WeightFunction& w, std::uint64_t seed) {
  return build_treap_from_weights(w, seed);
}

WeightFunction ff_witness_to_weights(const SearchTree& tree, int f) { return weights_from_tree_distance(tree, f); }

}  // namespace bstlab
