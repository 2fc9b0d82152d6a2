#pragma once

#include <cstdint>
#include <vector>

#include "bstlab/search_tree.hpp"

namespace bstlab {

class AccessSequence;

/// Nodes touched per access in the BST model, with their running total.
struct CostLedger {
  std::vector<std::int64_t> per_access;
  std::int64_t total = 0;

  void record(std::int64_t cost) {
    per_access.push_back(cost);
    total += cost;
  }
  std::size_t size() const { return per_access.size(); }
};

/// Bottom-up splay of key to the root. Returns the original depth + 1.
/// Throws std::out_of_range when the key is absent.
std::int64_t splay_access(SearchTree& tree, const Key& key);

/// Rotates key to the root one single rotation at a time. Returns depth + 1.
std::int64_t mtr_access(SearchTree& tree, const Key& key);

/// Plain search without restructuring. Returns depth + 1.
std::int64_t static_access(const SearchTree& tree, const Key& key);

enum class OnlineAlgorithm { Splay, MoveToRoot, Static };

/// Serves every access of seq on tree (modified in place).
CostLedger run_online(OnlineAlgorithm alg, SearchTree& tree, const AccessSequence& seq);

/// Sum over nodes i of -2 * min reference depth over the subtree of i in tree.
/// Throws std::invalid_argument when the key sets differ.
std::int64_t min_depth_potential(const SearchTree& tree, const SearchTree& reference);

struct AmortizedReport {
  double max_ratio = 0.0;  ///< max over accesses of (cost + dPhi) / (d_R(s) + 1)
  std::size_t violations = 0;
  std::size_t first_violation = 0;  ///< index of the first failing access (valid when violations > 0)
  std::int64_t total_cost = 0;
  bool pass = true;
};

/// Splays seq starting from start_tree and checks, for every access,
/// cost + Phi_after - Phi_before <= c * (d_R(s) + 1) under the min-depth
/// potential with respect to reference.
AmortizedReport splay_amortized_check(const AccessSequence& seq, SearchTree start_tree,
                                      const SearchTree& reference, double c = 12.0);

}  // namespace bstlab
