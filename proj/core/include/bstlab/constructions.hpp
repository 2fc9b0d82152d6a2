#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bstlab/common.hpp"
#include "bstlab/search_tree.hpp"

namespace bstlab {

class AccessSequence;

/// Positive weights on keys [1, n] with prefix sums.
class WeightFunction {
 public:
  /// values[i] is the weight of key i+1. Throws std::invalid_argument on an
  /// empty vector or a non-positive / non-finite entry.
  explicit WeightFunction(std::vector<double> values);
  static WeightFunction uniform(int n);

  int universe() const { return static_cast<int>(values_.size()); }
  double operator()(int key) const { return values_[static_cast<std::size_t>(key - 1)]; }
  double total() const { return prefix_.back(); }
  /// w[a:b] = sum of w(i) for min(a,b) <= i <= max(a,b).
  double range(int a, int b) const;
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
  std::vector<double> prefix_;
};

/// Keys 1..n.
std::vector<Key> integer_range(int n);

/// Median-rooted tree; throws std::invalid_argument on an empty or duplicated
/// key set.
SearchTree build_balanced(std::vector<Key> keys);
SearchTree build_balanced(int n);

/// Right spine rooted at 1 (each key's right child is the next key), or the
/// mirror-image left chain rooted at n.
SearchTree build_right_spine(int n);
SearchTree build_left_chain(int n);

/// Uniformly random root at every subrange (the random-BST distribution).
SearchTree build_random_tree(int n, Rng& rng);

/// Random tree over an arbitrary key set with random root choices.
SearchTree build_random_tree(std::vector<Key> keys, Rng& rng);

/// Builds a tree over keys 1..n from parent[i] (parent key of key i, 0 for the
/// root); parent has size n+1 and index 0 is ignored.
SearchTree tree_from_parents(std::span<const std::int8_t> parent);

/// Every BST shape on keys 1..n as parent arrays (see tree_from_parents).
/// Cached; throws GuardExceeded above kMaxEnumerationKeys.
inline constexpr int kMaxEnumerationKeys = 12;
const std::vector<std::vector<std::int8_t>>& all_bst_shapes(int n);

/// Randomized treap: each subrange is rooted at key i with probability
/// w(i) / w(subrange).
SearchTree build_treap_from_weights(const WeightFunction& w, std::uint64_t seed);

/// Weighted-median recursion: the root of a subrange is its first key at
/// which the running weight reaches half the subrange total, so both sides
/// hold at most half and depth(i) <= log2(W / w(i)).
SearchTree build_deterministic_from_weights(const WeightFunction& w);

/// w(i) = 4^(-depth(i)) over the integer keys, which must be exactly [1, n].
/// Throws std::domain_error when some depth would underflow a double.
WeightFunction weights_from_tree(const SearchTree& tree);

/// Like weights_from_tree but with depth measured from `finger`.
WeightFunction weights_from_tree_distance(const SearchTree& tree, const Key& finger);

/// Reference tree for a k-decomposable permutation: every block of the
/// substitution decomposition is a balanced gadget whose internal nodes carry
/// half-integer auxiliary keys at the value boundaries between its children.
/// Throws std::invalid_argument when perm is not k-decomposable.
SearchTree build_decomposable_reference_tree(const AccessSequence& perm, int k);

/// Balanced top tree over the k auxiliary leaves l(i-1)+1/2 (internal keys
/// l*i+1/4); leaf i carries the right-spine path of block [l(i-1)+1, l*i] as
/// its right subtree. k = 1 gives the bare path.
SearchTree build_tilted_grid_reference_tree(int k, int l);

/// Rotations that turn `tree` into the shape described by `target` (same live
/// nodes, a valid BST). Only nodes in the touched region are rotated: nodes
/// whose links differ, together with their ancestors. Both trees contain the
/// region as a root-connected subtree.
struct RestructureResult {
  std::vector<int> touched;    ///< node ids of the region
  std::vector<int> rotations;  ///< node ids rotated above their parent, in order
};

/// Applies the restructuring. When `check` is set the tree is validated after
/// every single rotation (std::logic_error on failure).
RestructureResult restructure(SearchTree& tree, const Links& target, bool check = false);

/// Same, with the region given: it must contain the root and be connected in
/// both trees, and every node outside it must keep its children.
RestructureResult restructure_within(SearchTree& tree, const Links& target, std::vector<int> region,
                                     bool check = false);

/// The touched region without performing any rotation.
std::vector<int> restructure_region(const SearchTree& tree, const Links& target);

}  // namespace bstlab
