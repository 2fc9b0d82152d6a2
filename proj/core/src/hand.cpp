#include "bstlab/hand.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace bstlab {

Hand compute_hand(const SearchTree& tree, std::span<const int> fingers) {
  Hand h;
  const auto cap = static_cast<std::size_t>(tree.capacity());
  h.in_steiner.assign(cap, 0);
  std::vector<char> terminal(cap, 0);
  auto add_path = [&](int id) {
    terminal[static_cast<std::size_t>(id)] = 1;
    for (int cur = id; cur != SearchTree::kNil && !h.in_steiner[static_cast<std::size_t>(cur)];
         cur = tree.node(cur).parent) {
      h.in_steiner[static_cast<std::size_t>(cur)] = 1;
      h.steiner.push_back(cur);
    }
  };
  add_path(tree.root());
  for (int f : fingers) add_path(f);

  std::vector<char> pseudo(cap, 0);
  for (int id : h.steiner) {
    const auto& nd = tree.node(id);
    const bool l = nd.left != SearchTree::kNil && h.in_steiner[static_cast<std::size_t>(nd.left)];
    const bool r = nd.right != SearchTree::kNil && h.in_steiner[static_cast<std::size_t>(nd.right)];
    if (terminal[static_cast<std::size_t>(id)] || (l && r)) pseudo[static_cast<std::size_t>(id)] = 1;
    if (nd.left != SearchTree::kNil && !l) h.knuckles.push_back(nd.left);
    if (nd.right != SearchTree::kNil && !r) h.knuckles.push_back(nd.right);
  }
  for (int id : h.steiner) {
    if (pseudo[static_cast<std::size_t>(id)]) h.pseudofingers.push_back(id);
  }
  auto by_key = [&](int a, int b) { return tree.key(a) < tree.key(b); };
  std::sort(h.pseudofingers.begin(), h.pseudofingers.end(), by_key);
  std::sort(h.knuckles.begin(), h.knuckles.end(), by_key);

  for (int y : h.pseudofingers) {
    if (y == tree.root()) continue;
    HalfTendon below{{}, true, SearchTree::kNil, y};
    HalfTendon above{{}, false, SearchTree::kNil, y};
    int cur = tree.node(y).parent;
    while (!pseudo[static_cast<std::size_t>(cur)]) {
      (tree.key(cur) < tree.key(y) ? below : above).nodes.push_back(cur);
      cur = tree.node(cur).parent;
    }
    below.upper = above.upper = cur;
    for (HalfTendon* ht : {&below, &above}) {
      if (ht->nodes.empty()) continue;
      std::sort(ht->nodes.begin(), ht->nodes.end(), by_key);
      h.half_tendons.push_back(std::move(*ht));
    }
  }

  for (int p : h.pseudofingers) h.items.push_back({true, p, 0, tree.key(p), tree.key(p)});
  for (std::size_t i = 0; i < h.half_tendons.size(); ++i) {
    const auto& ns = h.half_tendons[i].nodes;
    h.items.push_back({false, SearchTree::kNil, i, tree.key(ns.front()), tree.key(ns.back())});
  }
  std::sort(h.items.begin(), h.items.end(), [](const HandItem& a, const HandItem& b) { return a.lo < b.lo; });
  return h;
}

std::string check_hand(const SearchTree& tree, std::span<const int> fingers, const Hand& hand) {
  std::set<int> terminals(fingers.begin(), fingers.end());
  terminals.insert(tree.root());
  const std::size_t k = terminals.size();
  if (hand.pseudofingers.size() > 2 * k) return "more than 2k pseudofingers";
  if (hand.items.size() > 6 * k) return "extended hand has more than 6k intervals";
  for (std::size_t i = 1; i < hand.items.size(); ++i) {
    if (!(hand.items[i - 1].hi < hand.items[i].lo)) return "extended hand intervals overlap";
  }
  std::size_t covered = hand.pseudofingers.size();
  for (const auto& ht : hand.half_tendons) covered += ht.nodes.size();
  if (covered != hand.steiner.size()) return "pseudofingers and half tendons do not partition the Steiner tree";
  return {};
}

}  // namespace bstlab
