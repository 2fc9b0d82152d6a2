#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "bstlab/search_tree.hpp"

namespace bstlab {

/// Lays out `nodes` (ids in increasing key order) as a deque: the pivot at
/// the top, the smaller keys as a chain min -> 2nd min -> ... hanging left of
/// the pivot, the larger keys as a chain max -> 2nd max -> ... hanging right.
/// Writes the links of these nodes into `target` and returns the top id.
int deque_layout(Links& target, const std::vector<int>& nodes, std::size_t pivot);

/// Double-ended queue realized as a BST (two chains below a pivot). Each
/// operation restructures by rotations; when the side an element is popped
/// from is exhausted, the pivot moves to the middle of what remains.
class DequeBST {
 public:
  void push_min(const Key& key);
  void push_max(const Key& key);
  Key pop_min();
  Key pop_max();

  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }
  const SearchTree& tree() const { return tree_; }
  std::vector<Key> keys() const;

  std::int64_t rotations() const { return rotations_; }
  std::int64_t touched() const { return touched_; }
  std::int64_t rebuilds() const { return rebuilds_; }

 private:
  void relayout(int extra_leaf, bool leaf_is_min);

  SearchTree tree_;
  std::deque<int> order_;  // node ids in key order
  int pivot_ = SearchTree::kNil;
  std::int64_t rotations_ = 0;
  std::int64_t touched_ = 0;
  std::int64_t rebuilds_ = 0;
};

}  // namespace bstlab
