#include "bstlab/deque.hpp"

#include <algorithm>
#include <stdexcept>

#include "bstlab/constructions.hpp"

namespace bstlab {

int deque_layout(Links& target, const std::vector<int>& nodes, std::size_t pivot) {
  if (nodes.empty()) return SearchTree::kNil;
  auto set = [&](int id, int l, int r) {
    target.left[static_cast<std::size_t>(id)] = l;
    target.right[static_cast<std::size_t>(id)] = r;
    if (l != SearchTree::kNil) target.parent[static_cast<std::size_t>(l)] = id;
    if (r != SearchTree::kNil) target.parent[static_cast<std::size_t>(r)] = id;
  };
  const int top = nodes[pivot];
  for (std::size_t i = 0; i < pivot; ++i) set(nodes[i], SearchTree::kNil, i + 1 < pivot ? nodes[i + 1] : SearchTree::kNil);
  for (std::size_t i = nodes.size() - 1; i > pivot; --i) {
    set(nodes[i], i - 1 > pivot ? nodes[i - 1] : SearchTree::kNil, SearchTree::kNil);
  }
  set(top, pivot > 0 ? nodes[0] : SearchTree::kNil, pivot + 1 < nodes.size() ? nodes.back() : SearchTree::kNil);
  return top;
}

std::vector<Key> DequeBST::keys() const {
  std::vector<Key> out;
  for (int id : order_) out.push_back(tree_.key(id));
  return out;
}

void DequeBST::relayout(int extra_leaf, bool leaf_is_min) {
  std::vector<int> nodes(order_.begin(), order_.end());
  std::size_t p = nodes.size() / 2;
  auto it = std::find(nodes.begin(), nodes.end(), pivot_);
  if (it != nodes.end()) {
    p = static_cast<std::size_t>(it - nodes.begin());
  } else {
    if (pivot_ != SearchTree::kNil) ++rebuilds_;
    pivot_ = nodes.empty() ? SearchTree::kNil : nodes[p];
  }
  Links target = tree_.links();
  const int top = deque_layout(target, nodes, p);
  if (top != SearchTree::kNil) target.parent[static_cast<std::size_t>(top)] = SearchTree::kNil;
  target.root = top;
  if (extra_leaf != SearchTree::kNil) {
    const auto u = static_cast<std::size_t>(extra_leaf);
    target.left[u] = target.right[u] = SearchTree::kNil;
    if (top == SearchTree::kNil) {
      target.root = extra_leaf;
      target.parent[u] = SearchTree::kNil;
    } else {
      // The extreme node of the layout has an empty outer slot.
      const int host = leaf_is_min ? nodes.front() : nodes.back();
      (leaf_is_min ? target.left : target.right)[static_cast<std::size_t>(host)] = extra_leaf;
      target.parent[u] = host;
    }
  }
  const auto res = restructure(tree_, target);
  rotations_ += static_cast<std::int64_t>(res.rotations.size());
  touched_ += static_cast<std::int64_t>(res.touched.size());
}

void DequeBST::push_min(const Key& key) {
  if (!order_.empty() && !(key < tree_.key(order_.front()))) {
    throw std::invalid_argument("push_min: key is not below the current minimum");
  }
  const int id = tree_.add_node(key);
  if (!order_.empty()) {
    int leftmost = tree_.root();
    while (tree_.node(leftmost).left != SearchTree::kNil) leftmost = tree_.node(leftmost).left;
    tree_.attach_left(leftmost, id);
  }
  order_.push_front(id);
  relayout(SearchTree::kNil, true);
}

void DequeBST::push_max(const Key& key) {
  if (!order_.empty() && !(tree_.key(order_.back()) < key)) {
    throw std::invalid_argument("push_max: key is not above the current maximum");
  }
  const int id = tree_.add_node(key);
  if (!order_.empty()) {
    int rightmost = tree_.root();
    while (tree_.node(rightmost).right != SearchTree::kNil) rightmost = tree_.node(rightmost).right;
    tree_.attach_right(rightmost, id);
  }
  order_.push_back(id);
  relayout(SearchTree::kNil, false);
}

Key DequeBST::pop_min() {
  if (order_.empty()) throw std::out_of_range("pop_min on an empty deque");
  const int id = order_.front();
  order_.pop_front();
  relayout(id, true);
  const Key key = tree_.key(id);
  tree_.remove_node(id);
  return key;
}

Key DequeBST::pop_max() {
  if (order_.empty()) throw std::out_of_range("pop_max on an empty deque");
  const int id = order_.back();
  order_.pop_back();
  relayout(id, false);
  const Key key = tree_.key(id);
  tree_.remove_node(id);
  return key;
}

}  // namespace bstlab
