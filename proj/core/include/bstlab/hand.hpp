#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bstlab/search_tree.hpp"

namespace bstlab {

/// Half of a tendon: the interior nodes of the path between two adjacent
/// pseudofingers x (upper) and y (lower) that lie on one side of y.
struct HalfTendon {
  std::vector<int> nodes;  ///< node ids in increasing key order
  bool below = true;       ///< elements are less than y (else greater)
  int upper = SearchTree::kNil;  ///< pseudofinger x
  int lower = SearchTree::kNil;  ///< pseudofinger y
};

/// One interval of the extended hand: a pseudofinger or a half tendon.
struct HandItem {
  bool pseudofinger = true;
  int node = SearchTree::kNil;  ///< the pseudofinger (valid when pseudofinger)
  std::size_t tendon = 0;       ///< index into Hand::half_tendons otherwise
  Key lo;
  Key hi;
};

/// Extended hand of a tree with fingers; the root always counts as a finger.
struct Hand {
  std::vector<int> steiner;        ///< Steiner tree node ids
  std::vector<int> pseudofingers;  ///< node ids, in key order
  std::vector<HalfTendon> half_tendons;
  std::vector<HandItem> items;     ///< extended hand, in key order
  std::vector<int> knuckles;       ///< roots of the components left after removing the Steiner tree
  std::vector<char> in_steiner;    ///< by node id
};

Hand compute_hand(const SearchTree& tree, std::span<const int> fingers);

/// Structural invariants: |P| <= 2k', disjoint items covering the Steiner
/// tree exactly, |E| <= 6k', where k' counts distinct fingers plus the root.
/// Returns an empty string when all hold, otherwise a description.
std::string check_hand(const SearchTree& tree, std::span<const int> fingers, const Hand& hand);

}  // namespace bstlab
