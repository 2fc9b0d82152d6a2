#include "bstlab/search_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace bstlab {

int SearchTree::add_node(Key key) {
  if (index_.count(key)) throw std::invalid_argument("duplicate key " + key.to_string());
  const int id = capacity();
  nodes_.push_back(Node{key});
  index_.emplace(key, id);
  ++live_;
  if (root_ == kNil) root_ = id;
  return id;
}

void SearchTree::attach_left(int parent, int child) {
  nodes_[static_cast<std::size_t>(parent)].left = child;
  if (child != kNil) nodes_[static_cast<std::size_t>(child)].parent = parent;
}

void SearchTree::attach_right(int parent, int child) {
  nodes_[static_cast<std::size_t>(parent)].right = child;
  if (child != kNil) nodes_[static_cast<std::size_t>(child)].parent = parent;
}

void SearchTree::set_root(int id) {
  root_ = id;
  if (id != kNil) nodes_[static_cast<std::size_t>(id)].parent = kNil;
}

void SearchTree::replace_child(int parent, int old_child, int new_child) {
  if (parent == kNil) {
    root_ = new_child;
  } else {
    Node& p = nodes_[static_cast<std::size_t>(parent)];
    if (p.left == old_child) {
      p.left = new_child;
    } else {
      p.right = new_child;
    }
  }
  if (new_child != kNil) nodes_[static_cast<std::size_t>(new_child)].parent = parent;
}

void SearchTree::remove_node(int id) {
  Node& n = nodes_[static_cast<std::size_t>(id)];
  if (!n.alive) throw std::invalid_argument("remove_node: node already removed");
  if (n.left != kNil && n.right != kNil) {
    throw std::logic_error("remove_node: node " + n.key.to_string() + " has two children");
  }
  const int child = n.left != kNil ? n.left : n.right;
  replace_child(n.parent, id, child);
  index_.erase(n.key);
  n.alive = false;
  n.parent = n.left = n.right = kNil;
  --live_;
}

std::optional<int> SearchTree::find(const Key& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int SearchTree::at(const Key& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) throw std::out_of_range("key " + key.to_string() + " not in tree");
  return it->second;
}

void SearchTree::rotate(int id) {
  Node& x = nodes_[static_cast<std::size_t>(id)];
  const int p = x.parent;
  if (p == kNil) throw std::logic_error("cannot rotate the root");
  Node& pn = nodes_[static_cast<std::size_t>(p)];
  const int g = pn.parent;
  if (pn.left == id) {
    pn.left = x.right;
    if (x.right != kNil) nodes_[static_cast<std::size_t>(x.right)].parent = p;
    x.right = p;
  } else {
    pn.right = x.left;
    if (x.left != kNil) nodes_[static_cast<std::size_t>(x.left)].parent = p;
    x.left = p;
  }
  pn.parent = id;
  replace_child(g, p, id);
}

int SearchTree::depth_of(int id) const {
  int d = 0;
  for (int cur = node(id).parent; cur != kNil; cur = node(cur).parent) ++d;
  return d;
}

int SearchTree::lca_of(int a, int b) const {
  int da = depth_of(a);
  int db = depth_of(b);
  while (da > db) {
    a = node(a).parent;
    --da;
  }
  while (db > da) {
    b = node(b).parent;
    --db;
  }
  while (a != b) {
    a = node(a).parent;
    b = node(b).parent;
  }
  return a;
}

int SearchTree::distance_of(int a, int b) const {
  int da = depth_of(a);
  int db = depth_of(b);
  int dist = 0;
  while (da > db) {
    a = node(a).parent;
    --da;
    ++dist;
  }
  while (db > da) {
    b = node(b).parent;
    --db;
    ++dist;
  }
  while (a != b) {
    a = node(a).parent;
    b = node(b).parent;
    dist += 2;
  }
  return dist;
}

std::vector<int> SearchTree::depths() const {
  std::vector<int> d(nodes_.size(), -1);
  for (int id : preorder()) {
    const int p = node(id).parent;
    d[static_cast<std::size_t>(id)] = p == kNil ? 0 : d[static_cast<std::size_t>(p)] + 1;
  }
  return d;
}

int SearchTree::height() const {
  int h = -1;
  for (int d : depths()) h = std::max(h, d);
  return h;
}

std::vector<int> SearchTree::inorder() const {
  std::vector<int> out;
  out.reserve(live_);
  std::vector<int> stack;
  int cur = root_;
  while (cur != kNil || !stack.empty()) {
    while (cur != kNil) {
      stack.push_back(cur);
      cur = node(cur).left;
    }
    cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    cur = node(cur).right;
  }
  return out;
}

std::vector<int> SearchTree::preorder() const {
  std::vector<int> out;
  out.reserve(live_);
  if (root_ == kNil) return out;
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    if (node(cur).right != kNil) stack.push_back(node(cur).right);
    if (node(cur).left != kNil) stack.push_back(node(cur).left);
  }
  return out;
}

std::vector<Key> SearchTree::inorder_keys() const {
  std::vector<Key> out;
  for (int id : inorder()) out.push_back(key(id));
  return out;
}

std::vector<std::int64_t> SearchTree::integer_keys() const {
  std::vector<std::int64_t> out;
  for (int id : inorder()) {
    if (key(id).is_integer()) out.push_back(key(id).num());
  }
  return out;
}

bool SearchTree::has_auxiliary_keys() const {
  for (const auto& [k, id] : index_) {
    if (!k.is_integer()) return true;
  }
  return false;
}

bool SearchTree::is_valid(std::string* why) const {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (live_ == 0) return root_ == kNil || fail("empty tree with a root");
  if (root_ == kNil || !node(root_).alive) return fail("missing root");
  if (node(root_).parent != kNil) return fail("root has a parent");
  std::size_t seen = 0;
  std::vector<char> visited(nodes_.size(), 0);
  for (int id : preorder()) {
    if (visited[static_cast<std::size_t>(id)]) return fail("cycle at " + key(id).to_string());
    visited[static_cast<std::size_t>(id)] = 1;
    ++seen;
    if (seen > live_) return fail("more reachable nodes than live nodes");
    const Node& n = node(id);
    if (!n.alive) return fail("removed node reachable");
    if (n.left != kNil && node(n.left).parent != id) return fail("left child parent link at " + n.key.to_string());
    if (n.right != kNil && node(n.right).parent != id) return fail("right child parent link at " + n.key.to_string());
  }
  if (seen != live_) return fail("unreachable live nodes");
  const auto keys = inorder_keys();
  for (std::size_t i = 1; i < keys.size(); ++i) {
    if (!(keys[i - 1] < keys[i])) return fail("symmetric order violated at " + keys[i].to_string());
  }
  return true;
}

Links SearchTree::links() const {
  Links l;
  l.parent.resize(nodes_.size());
  l.left.resize(nodes_.size());
  l.right.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    l.parent[i] = nodes_[i].parent;
    l.left[i] = nodes_[i].left;
    l.right[i] = nodes_[i].right;
  }
  l.root = root_;
  return l;
}

void SearchTree::assign_links(const Links& l) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!nodes_[i].alive) continue;
    nodes_[i].parent = l.parent[i];
    nodes_[i].left = l.left[i];
    nodes_[i].right = l.right[i];
  }
  root_ = l.root;
}

namespace {
bool same_shape_rec(const SearchTree& a, int x, const SearchTree& b, int y) {
  if (x == SearchTree::kNil || y == SearchTree::kNil) return x == y;
  if (a.key(x) != b.key(y)) return false;
  return same_shape_rec(a, a.node(x).left, b, b.node(y).left) &&
         same_shape_rec(a, a.node(x).right, b, b.node(y).right);
}
}  // namespace

bool same_shape(const SearchTree& a, const SearchTree& b) {
  return a.size() == b.size() && same_shape_rec(a, a.root(), b, b.root());
}

}  // namespace bstlab
