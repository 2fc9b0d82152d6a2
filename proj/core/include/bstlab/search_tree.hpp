#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bstlab/rational.hpp"

namespace bstlab {

/// Full link state of a tree, indexed by node id. Used to describe a target
/// shape for restructuring and to snapshot executions.
struct Links {
  std::vector<int> parent;
  std::vector<int> left;
  std::vector<int> right;
  int root = -1;
};

/// Binary search tree over exact rational keys, addressed by stable node ids.
///
/// Node ids never change under rotations, so callers may keep ids (fingers,
/// potentials, weights) across restructuring. A node id is only invalidated by
/// remove_node().
class SearchTree {
 public:
  static constexpr int kNil = -1;

  struct Node {
    Key key;
    int parent = kNil;
    int left = kNil;
    int right = kNil;
    bool alive = true;
  };

  SearchTree() = default;

  // Assembly. A tree is assembled by adding detached nodes and linking them;
  // call is_valid() afterwards when the shape comes from untrusted input.
  int add_node(Key key);
  void attach_left(int parent, int child);
  void attach_right(int parent, int child);
  void set_root(int id);
  /// Removes a node with at most one child, splicing the child into its slot.
  void remove_node(int id);

  std::size_t size() const { return live_; }
  bool empty() const { return live_ == 0; }
  int root() const { return root_; }
  /// Number of id slots (including removed ones).
  int capacity() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  const Key& key(int id) const { return node(id).key; }

  std::optional<int> find(const Key& key) const;
  /// Node id for key; throws std::out_of_range when absent.
  int at(const Key& key) const;
  bool contains(const Key& key) const { return index_.count(key) != 0; }

  /// Rotates node above its parent; throws std::logic_error at the root.
  void rotate(int id);

  int depth_of(int id) const;
  int depth(const Key& key) const { return depth_of(at(key)); }
  int lca_of(int a, int b) const;
  int distance_of(int a, int b) const;
  int distance(const Key& a, const Key& b) const { return distance_of(at(a), at(b)); }
  int height() const;
  /// Depth of every live node (by id; removed ids get -1).
  std::vector<int> depths() const;

  std::vector<int> inorder() const;
  std::vector<int> preorder() const;
  std::vector<Key> inorder_keys() const;
  /// Integer keys in increasing order.
  std::vector<std::int64_t> integer_keys() const;
  bool has_auxiliary_keys() const;

  /// Symmetric order and link consistency. On failure `why` receives a
  /// description.
  bool is_valid(std::string* why = nullptr) const;

  Links links() const;
  /// Replaces all links. The caller guarantees `l` describes a BST over the
  /// same live nodes.
  void assign_links(const Links& l);

 private:
  void replace_child(int parent, int old_child, int new_child);

  std::vector<Node> nodes_;
  std::unordered_map<Key, int> index_;
  int root_ = kNil;
  std::size_t live_ = 0;
};

/// Same keys with the same shape (node ids may differ).
bool same_shape(const SearchTree& a, const SearchTree& b);

}  // namespace bstlab
