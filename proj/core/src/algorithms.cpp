#include "bstlab/algorithms.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "bstlab/sequences.hpp"

namespace bstlab {

std::int64_t splay_access(SearchTree& tree, const Key& key) {
  const int x = tree.at(key);
  const std::int64_t cost = tree.depth_of(x) + 1;
  while (tree.node(x).parent != SearchTree::kNil) {
    const int p = tree.node(x).parent;
    const int g = tree.node(p).parent;
    if (g == SearchTree::kNil) {
      tree.rotate(x);  // zig
    } else if ((tree.node(g).left == p) == (tree.node(p).left == x)) {
      tree.rotate(p);  // zig-zig
      tree.rotate(x);
    } else {
      tree.rotate(x);  // zig-zag
      tree.rotate(x);
    }
  }
  return cost;
}

std::int64_t mtr_access(SearchTree& tree, const Key& key) {
  const int x = tree.at(key);
  const std::int64_t cost = tree.depth_of(x) + 1;
  while (tree.node(x).parent != SearchTree::kNil) tree.rotate(x);
  return cost;
}

std::int64_t static_access(const SearchTree& tree, const Key& key) { return tree.depth(key) + 1; }

CostLedger run_online(OnlineAlgorithm alg, SearchTree& tree, const AccessSequence& seq) {
  CostLedger ledger;
  ledger.per_access.reserve(seq.size());
  for (int s : seq) {
    switch (alg) {
      case OnlineAlgorithm::Splay:
        ledger.record(splay_access(tree, s));
        break;
      case OnlineAlgorithm::MoveToRoot:
        ledger.record(mtr_access(tree, s));
        break;
      case OnlineAlgorithm::Static:
        ledger.record(static_access(tree, s));
        break;
    }
  }
  return ledger;
}

namespace {

// Reference depth indexed by node id of `tree`.
std::vector<int> reference_depths(const SearchTree& tree, const SearchTree& reference) {
  if (tree.size() != reference.size()) throw std::invalid_argument("potential: trees have different key sets");
  const auto rdepth = reference.depths();
  std::vector<int> out(static_cast<std::size_t>(tree.capacity()), 0);
  for (int id : tree.inorder()) {
    const auto rid = reference.find(tree.key(id));
    if (!rid) throw std::invalid_argument("potential: key " + tree.key(id).to_string() + " missing from reference");
    out[static_cast<std::size_t>(id)] = rdepth[static_cast<std::size_t>(*rid)];
  }
  return out;
}

std::int64_t potential_with(const SearchTree& tree, const std::vector<int>& rdepth) {
  auto order = tree.preorder();
  std::vector<int> best(rdepth);
  std::int64_t phi = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& nd = tree.node(*it);
    int& b = best[static_cast<std::size_t>(*it)];
    if (nd.left != SearchTree::kNil) b = std::min(b, best[static_cast<std::size_t>(nd.left)]);
    if (nd.right != SearchTree::kNil) b = std::min(b, best[static_cast<std::size_t>(nd.right)]);
    phi -= 2 * b;
  }
  return phi;
}

}  // namespace

std::int64_t min_depth_potential(const SearchTree& tree, const SearchTree& reference) {
  return potential_with(tree, reference_depths(tree, reference));
}

AmortizedReport splay_amortized_check(const AccessSequence& seq, SearchTree start_tree, const SearchTree& reference,
                                      double c) {
  const auto rdepth = reference_depths(start_tree, reference);
  AmortizedReport rep;
  std::int64_t phi = potential_with(start_tree, rdepth);
  for (std::size_t j = 0; j < seq.size(); ++j) {
    const int id = start_tree.at(seq[j]);
    const std::int64_t cost = splay_access(start_tree, seq[j]);
    const std::int64_t next = potential_with(start_tree, rdepth);
    const double budget = rdepth[static_cast<std::size_t>(id)] + 1.0;
    const double amortized = static_cast<double>(cost + next - phi);
    rep.max_ratio = std::max(rep.max_ratio, amortized / budget);
    if (amortized > c * budget) {
      if (rep.violations == 0) rep.first_violation = j;
      ++rep.violations;
      rep.pass = false;
    }
    rep.total_cost += cost;
    phi = next;
  }
  return rep;
}

}  // namespace bstlab
