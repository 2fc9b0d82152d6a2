#include "bstlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "bstlab/sequences.hpp"

namespace bstlab {

WeightFunction::WeightFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("weight function over an empty universe");
  prefix_.assign(values_.size() + 1, 0.0);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw std::invalid_argument("weight of key " + std::to_string(i + 1) + " must be positive and finite");
    }
    prefix_[i + 1] = prefix_[i] + values_[i];
  }
}

WeightFunction WeightFunction::uniform(int n) {
  if (n < 1) throw std::invalid_argument("uniform weights need n >= 1");
  return WeightFunction(std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

double WeightFunction::range(int a, int b) const {
  if (a > b) std::swap(a, b);
  if (a < 1 || b > universe()) throw std::out_of_range("weight range outside [1, n]");
  return prefix_[static_cast<std::size_t>(b)] - prefix_[static_cast<std::size_t>(a - 1)];
}

std::vector<Key> integer_range(int n) {
  std::vector<Key> keys;
  keys.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 1; i <= n; ++i) keys.emplace_back(i);
  return keys;
}

namespace {

// Builds a tree over sorted keys; choose(lo, hi) returns the root index in
// [lo, hi]. Explicit stack so degenerate shapes do not overflow.
template <class Choose>
SearchTree build_by_root_choice(const std::vector<Key>& keys, Choose&& choose) {
  SearchTree t;
  std::vector<int> ids;
  ids.reserve(keys.size());
  for (const Key& k : keys) ids.push_back(t.add_node(k));
  struct Frame {
    int lo, hi, parent;
    bool left;
  };
  std::vector<Frame> stack{{0, static_cast<int>(keys.size()) - 1, SearchTree::kNil, false}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.lo > f.hi) continue;
    const int r = choose(f.lo, f.hi);
    const int id = ids[static_cast<std::size_t>(r)];
    if (f.parent == SearchTree::kNil) {
      t.set_root(id);
    } else if (f.left) {
      t.attach_left(f.parent, id);
    } else {
      t.attach_right(f.parent, id);
    }
    stack.push_back({f.lo, r - 1, id, true});
    stack.push_back({r + 1, f.hi, id, false});
  }
  return t;
}

void sort_unique_keys(std::vector<Key>& keys) {
  if (keys.empty()) throw std::invalid_argument("cannot build a tree over no keys");
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
    throw std::invalid_argument("duplicate keys");
  }
}

}  // namespace

SearchTree build_balanced(std::vector<Key> keys) {
  sort_unique_keys(keys);
  return build_by_root_choice(keys, [](int lo, int hi) { return lo + (hi - lo) / 2; });
}

SearchTree build_balanced(int n) { return build_balanced(integer_range(n)); }

SearchTree build_right_spine(int n) {
  if (n < 1) throw std::invalid_argument("build_right_spine: n must be positive");
  return build_by_root_choice(integer_range(n), [](int lo, int) { return lo; });
}

SearchTree build_left_chain(int n) {
  if (n < 1) throw std::invalid_argument("build_left_chain: n must be positive");
  return build_by_root_choice(integer_range(n), [](int, int hi) { return hi; });
}

SearchTree build_random_tree(std::vector<Key> keys, Rng& rng) {
  sort_unique_keys(keys);
  return build_by_root_choice(keys, [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  });
}

SearchTree build_random_tree(int n, Rng& rng) { return build_random_tree(integer_range(n), rng); }

SearchTree tree_from_parents(std::span<const std::int8_t> parent) {
  const int n = static_cast<int>(parent.size()) - 1;
  if (n < 1) throw std::invalid_argument("tree_from_parents: empty tree");
  SearchTree t;
  for (int i = 1; i <= n; ++i) t.add_node(i);
  for (int i = 1; i <= n; ++i) {
    const int p = parent[static_cast<std::size_t>(i)];
    if (p == 0) {
      t.set_root(i - 1);
    } else if (i < p) {
      t.attach_left(p - 1, i - 1);
    } else {
      t.attach_right(p - 1, i - 1);
    }
  }
  std::string why;
  if (!t.is_valid(&why)) throw std::invalid_argument("tree_from_parents: " + why);
  return t;
}

const std::vector<std::vector<std::int8_t>>& all_bst_shapes(int n) {
  if (n < 1) throw std::invalid_argument("all_bst_shapes: n must be positive");
  if (n > kMaxEnumerationKeys) {
    throw GuardExceeded("exhaustive tree enumeration is limited to n <= " + std::to_string(kMaxEnumerationKeys) +
                        "; use a construction-based upper bound instead");
  }
  // shapes[s] lists parent arrays over keys 1..s.
  static std::mutex mu;
  static std::vector<std::vector<std::vector<std::int8_t>>> shapes;
  std::lock_guard<std::mutex> lock(mu);
  if (shapes.empty()) shapes.push_back({std::vector<std::int8_t>(1, 0)});
  while (static_cast<int>(shapes.size()) <= n) {
    const int s = static_cast<int>(shapes.size());
    std::vector<std::vector<std::int8_t>> out;
    for (int r = 1; r <= s; ++r) {
      for (const auto& left : shapes[static_cast<std::size_t>(r - 1)]) {
        for (const auto& right : shapes[static_cast<std::size_t>(s - r)]) {
          std::vector<std::int8_t> p(static_cast<std::size_t>(s) + 1, 0);
          for (int i = 1; i < r; ++i) {
            const int q = left[static_cast<std::size_t>(i)];
            p[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(q == 0 ? r : q);
          }
          for (int i = 1; i <= s - r; ++i) {
            const int q = right[static_cast<std::size_t>(i)];
            p[static_cast<std::size_t>(r + i)] = static_cast<std::int8_t>(q == 0 ? r : q + r);
          }
          out.push_back(std::move(p));
        }
      }
    }
    shapes.push_back(std::move(out));
  }
  return shapes[static_cast<std::size_t>(n)];
}

SearchTree build_treap_from_weights(const WeightFunction& w, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> prefix(static_cast<std::size_t>(w.universe()) + 1, 0.0);
  for (int i = 1; i <= w.universe(); ++i) prefix[static_cast<std::size_t>(i)] = prefix[static_cast<std::size_t>(i - 1)] + w(i);
  return build_by_root_choice(integer_range(w.universe()), [&](int lo, int hi) {
    const double base = prefix[static_cast<std::size_t>(lo)];
    const double span = prefix[static_cast<std::size_t>(hi + 1)] - base;
    const double u = base + std::uniform_real_distribution<double>(0.0, span)(rng);
    auto it = std::upper_bound(prefix.begin() + lo + 1, prefix.begin() + hi + 2, u);
    const int r = static_cast<int>(it - prefix.begin()) - 1;
    return std::clamp(r, lo, hi);
  });
}

SearchTree build_deterministic_from_weights(const WeightFunction& w) {
  std::vector<double> prefix(static_cast<std::size_t>(w.universe()) + 1, 0.0);
  for (int i = 1; i <= w.universe(); ++i) prefix[static_cast<std::size_t>(i)] = prefix[static_cast<std::size_t>(i - 1)] + w(i);
  return build_by_root_choice(integer_range(w.universe()), [&](int lo, int hi) {
    const double base = prefix[static_cast<std::size_t>(lo)];
    const double half = (prefix[static_cast<std::size_t>(hi + 1)] - base) / 2.0;
    auto it = std::lower_bound(prefix.begin() + lo + 1, prefix.begin() + hi + 2, base + half);
    const int r = static_cast<int>(it - prefix.begin()) - 1;
    return std::clamp(r, lo, hi);
  });
}

namespace {

WeightFunction weights_from_depths(const SearchTree& tree, const std::vector<int>& dist) {
  const auto real = tree.integer_keys();
  const auto n = static_cast<std::int64_t>(real.size());
  if (n == 0 || real.front() != 1 || real.back() != n) {
    throw std::invalid_argument("weights need a tree whose integer keys are exactly [1, n]");
  }
  std::vector<double> w;
  w.reserve(real.size());
  for (std::int64_t i = 1; i <= n; ++i) {
    const int d = dist[static_cast<std::size_t>(tree.at(i))];
    if (d >= 500) throw std::domain_error("depth " + std::to_string(d) + " underflows 4^-depth");
    w.push_back(std::ldexp(1.0, -2 * d));
  }
  return WeightFunction(std::move(w));
}

}  // namespace

WeightFunction weights_from_tree(const SearchTree& tree) { return weights_from_depths(tree, tree.depths()); }

WeightFunction weights_from_tree_distance(const SearchTree& tree, const Key& finger) {
  const int f = tree.at(finger);
  std::vector<int> dist(static_cast<std::size_t>(tree.capacity()), -1);
  for (int id : tree.inorder()) dist[static_cast<std::size_t>(id)] = tree.distance_of(f, id);
  return weights_from_depths(tree, dist);
}

// ---------------------------------------------------------------------------

namespace {

struct ReferenceBuilder {
  const std::vector<int>& perm;
  const BlockDecomposition& dec;
  SearchTree tree;

  int build(std::size_t node_id) {
    const BlockNode& node = dec.nodes[node_id];
    if (node.children.empty()) return tree.add_node(perm[node.begin]);
    std::vector<std::size_t> by_value = node.children;
    std::sort(by_value.begin(), by_value.end(),
              [&](std::size_t a, std::size_t b) { return dec.nodes[a].low < dec.nodes[b].low; });
    return gadget(by_value, 0, by_value.size() - 1);
  }

  int gadget(const std::vector<std::size_t>& kids, std::size_t a, std::size_t b) {
    if (a == b) return build(kids[a]);
    const std::size_t mid = a + (b - a) / 2;
    const int boundary = dec.nodes[kids[mid]].high;
    const int id = tree.add_node(Key(2 * static_cast<std::int64_t>(boundary) + 1, 2));
    const int l = gadget(kids, a, mid);
    const int r = gadget(kids, mid + 1, b);
    tree.attach_left(id, l);
    tree.attach_right(id, r);
    return id;
  }
};

}  // namespace

SearchTree build_decomposable_reference_tree(const AccessSequence& perm, int k) {
  require_permutation(perm);
  if (k < 2) throw std::invalid_argument("decomposable reference tree needs k >= 2");
  const auto dec = decompose_blocks(perm);
  int d = 2;
  for (const auto& node : dec.nodes) {
    if (node.kind == BlockNode::Kind::Prime) d = std::max(d, static_cast<int>(node.children.size()));
  }
  if (d > k) {
    throw std::invalid_argument("permutation is " + std::to_string(d) + "-decomposable, not " + std::to_string(k) +
                                "-decomposable");
  }
  ReferenceBuilder b{perm.keys(), dec, {}};
  const int root = b.build(dec.root);
  b.tree.set_root(root);
  return std::move(b.tree);
}

SearchTree build_tilted_grid_reference_tree(int k, int l) {
  if (k < 1 || l < 1) throw std::invalid_argument("tilted grid tree needs k, l >= 1");
  SearchTree t;
  auto path = [&](int block) {
    const std::int64_t first = static_cast<std::int64_t>(l) * (block - 1) + 1;
    int top = SearchTree::kNil;
    int prev = SearchTree::kNil;
    for (std::int64_t key = first; key < first + l; ++key) {
      const int id = t.add_node(key);
      if (prev == SearchTree::kNil) {
        top = id;
      } else {
        t.attach_right(prev, id);
      }
      prev = id;
    }
    return top;
  };
  if (k == 1) {
    t.set_root(path(1));
    return t;
  }
  // leaves a..b (1-based block indices)
  auto top = [&](auto&& self, int a, int b) -> int {
    if (a == b) {
      const int leaf = t.add_node(Key(2 * static_cast<std::int64_t>(l) * (a - 1) + 1, 2));
      t.attach_right(leaf, path(a));
      return leaf;
    }
    const int mid = a + (b - a) / 2;
    const int id = t.add_node(Key(4 * static_cast<std::int64_t>(l) * mid + 1, 4));
    const int left = self(self, a, mid);
    const int right = self(self, mid + 1, b);
    t.attach_left(id, left);
    t.attach_right(id, right);
    return id;
  };
  t.set_root(top(top, 1, k));
  return t;
}

// ---------------------------------------------------------------------------

std::vector<int> restructure_region(const SearchTree& tree, const Links& target) {
  const int cap = tree.capacity();
  if (static_cast<int>(target.parent.size()) != cap || static_cast<int>(target.left.size()) != cap ||
      static_cast<int>(target.right.size()) != cap) {
    throw std::invalid_argument("restructure: target link arrays do not match the tree");
  }
  std::vector<char> in(static_cast<std::size_t>(cap), 0);
  std::vector<int> region;
  auto mark_up = [&](int id) {
    for (int cur = id; cur != SearchTree::kNil && !in[static_cast<std::size_t>(cur)]; cur = tree.node(cur).parent) {
      in[static_cast<std::size_t>(cur)] = 1;
      region.push_back(cur);
    }
  };
  for (int id = 0; id < cap; ++id) {
    const auto& nd = tree.node(id);
    if (!nd.alive) continue;
    const auto u = static_cast<std::size_t>(id);
    if (nd.parent != target.parent[u] || nd.left != target.left[u] || nd.right != target.right[u]) mark_up(id);
  }
  if (tree.root() != target.root) {
    mark_up(tree.root());
    mark_up(target.root);
  }
  return region;
}

namespace {

// Single rotation of x above its parent on bare link arrays.
void rotate_links(Links& l, int x) {
  const auto ux = static_cast<std::size_t>(x);
  const int p = l.parent[ux];
  const auto up = static_cast<std::size_t>(p);
  const int g = l.parent[up];
  if (l.left[up] == x) {
    l.left[up] = l.right[ux];
    if (l.right[ux] != SearchTree::kNil) l.parent[static_cast<std::size_t>(l.right[ux])] = p;
    l.right[ux] = p;
  } else {
    l.right[up] = l.left[ux];
    if (l.left[ux] != SearchTree::kNil) l.parent[static_cast<std::size_t>(l.left[ux])] = p;
    l.left[ux] = p;
  }
  l.parent[up] = x;
  l.parent[ux] = g;
  if (g == SearchTree::kNil) {
    l.root = x;
  } else if (l.left[static_cast<std::size_t>(g)] == p) {
    l.left[static_cast<std::size_t>(g)] = x;
  } else {
    l.right[static_cast<std::size_t>(g)] = x;
  }
}

// Rotations that bring the region of `l` into a right spine. `rotated`
// receives the rotated nodes, `parents` their parents at rotation time.
void vine_moves(Links l, const std::vector<char>& in, std::vector<int>& rotated, std::vector<int>& parents) {
  auto inside = [&](int id) { return id != SearchTree::kNil && in[static_cast<std::size_t>(id)]; };
  int x = l.root;
  while (inside(x)) {
    const int lc = l.left[static_cast<std::size_t>(x)];
    if (inside(lc)) {
      rotated.push_back(lc);
      parents.push_back(x);
      rotate_links(l, lc);
      x = lc;
    } else {
      x = l.right[static_cast<std::size_t>(x)];
    }
  }
}

void apply_rotation(SearchTree& tree, int id, bool check) {
  tree.rotate(id);
  if (check) {
    std::string why;
    if (!tree.is_valid(&why)) throw std::logic_error("restructure broke the tree: " + why);
  }
}

}  // namespace

RestructureResult restructure(SearchTree& tree, const Links& target, bool check) {
  return restructure_within(tree, target, restructure_region(tree, target), check);
}

RestructureResult restructure_within(SearchTree& tree, const Links& target, std::vector<int> region, bool check) {
  RestructureResult res;
  res.touched = std::move(region);
  if (res.touched.empty()) return res;
  std::vector<char> in(static_cast<std::size_t>(tree.capacity()), 0);
  for (int id : res.touched) in[static_cast<std::size_t>(id)] = 1;

  std::vector<int> down;
  std::vector<int> unused;
  vine_moves(tree.links(), in, down, unused);
  std::vector<int> goal_rotated;
  std::vector<int> goal_parents;
  vine_moves(target, in, goal_rotated, goal_parents);

  for (int id : down) {
    apply_rotation(tree, id, check);
    res.rotations.push_back(id);
  }
  // Undo the goal's vine moves in reverse: x was rotated above p, so
  // rotating p (now x's child) restores the earlier shape.
  for (std::size_t i = goal_parents.size(); i-- > 0;) {
    apply_rotation(tree, goal_parents[i], check);
    res.rotations.push_back(goal_parents[i]);
  }
  if (tree.root() != target.root) throw std::logic_error("restructure did not reach the target root");
  for (int id : res.touched) {
    const auto u = static_cast<std::size_t>(id);
    const auto& nd = tree.node(id);
    if (nd.parent != target.parent[u] || nd.left != target.left[u] || nd.right != target.right[u]) {
      throw std::logic_error("restructure did not reach the target shape");
    }
  }
  return res;
}

}  // namespace bstlab
