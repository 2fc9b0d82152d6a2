#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bstlab/constructions.hpp"
#include "bstlab/kserver.hpp"
#include "bstlab/search_tree.hpp"

namespace bstlab {

class AccessSequence;

/// A bound value with an optional certificate (a tree, a finger, weights)
/// that re-evaluates to the value.
struct BoundValue {
  std::string kind;
  double value = 0.0;
  std::optional<SearchTree> tree;
  std::optional<WeightFunction> weights;
  std::optional<int> finger;
};

// Balance and entropy --------------------------------------------------------

double balance_bound(const AccessSequence& seq);
double entropy_bound(const AccessSequence& seq);
double weighted_balance(const AccessSequence& seq, const WeightFunction& w);
/// Exactly H(S); the witness puts w(i) = m_i on accessed keys and a negligible
/// weight on the others, which approaches the infimum to within 1e-9.
BoundValue weighted_balance_opt(const AccessSequence& seq);

// Key-space locality ---------------------------------------------------------

double static_finger_at(const AccessSequence& seq, int f);
BoundValue static_finger(const AccessSequence& seq);
double weighted_static_finger_at(const AccessSequence& seq, const WeightFunction& w, int f);
double dynamic_finger(const AccessSequence& seq);
double weighted_dynamic_finger(const AccessSequence& seq, const WeightFunction& w);

// Time locality --------------------------------------------------------------

/// |w_S(j)| for every j, via a Fenwick tree over last occurrences.
std::vector<std::int64_t> working_set_sizes(const AccessSequence& seq);
double working_set(const AccessSequence& seq);

// Reference-tree locality ----------------------------------------------------

/// SO_T(S) = sum of d_T(s_j).
std::int64_t static_optimality_at(const AccessSequence& seq, const SearchTree& tree);

inline constexpr std::size_t kMaxOptimalTreeKeys = 4096;
/// Exact min over trees on [n] by the Knuth-accelerated optimal BST program,
/// run over the distinct accessed keys; unaccessed keys hang below as
/// balanced subtrees. Throws GuardExceeded above kMaxOptimalTreeKeys distinct
/// keys; entropy_bound is the fallback.
BoundValue static_optimality(const AccessSequence& seq);

std::int64_t fixed_finger_at(const AccessSequence& seq, const SearchTree& tree, const Key& f);
std::int64_t lazy_finger_at(const AccessSequence& seq, const SearchTree& tree);
/// Sum of log2 min{|f - s_j| + 1, d_T(s_j) + 1, |w_S(j)|}.
double unified_at(const AccessSequence& seq, const SearchTree& tree, int f);

/// Exhaustive minimum over all trees on [n] (n <= kMaxEnumerationKeys).
BoundValue lazy_finger_opt(const AccessSequence& seq);
/// Exhaustive minimum over trees and fingers (n <= 10).
BoundValue fixed_finger_opt(const AccessSequence& seq);
inline constexpr int kMaxFixedFingerKeys = 10;
/// Upper bound on the fixed-finger minimum for any n: the optimal static
/// tree with the finger at its root, where FF equals SO.
BoundValue fixed_finger_upper(const AccessSequence& seq);

/// LF^k_T(S), including the +1 per access and free initial placement.
std::int64_t k_lazy_finger_at(const AccessSequence& seq, const SearchTree& tree, int k);

struct MonotoneStrategy {
  std::int64_t cost = 0;
  bool increasing = true;       ///< runs are non-decreasing (else non-increasing)
  std::vector<int> finger_of;   ///< run index per access
  int fingers_used = 0;
};

/// Strategy for k-monotone sequences: a partition into at most k monotone
/// runs, one finger per run, each finger starting at its run's first key.
/// Two online partitions are tried (best-fit patience, and the fitting run
/// with the nearest finger) and the cheaper valid one is kept. Throws std::invalid_argument when seq contains both monotone
/// patterns of length k + 1.
MonotoneStrategy kfinger_monotone_strategy(const AccessSequence& seq, const SearchTree& tree, int k);

// Equivalence witnesses ------------------------------------------------------

/// w(i) = 4^-d_T(i).
WeightFunction so_witness_to_weights(const SearchTree& tree);
/// Treap built from w.
SearchTree weights_to_so_witness(const WeightFunction& w, std::uint64_t seed);
/// w(i) = 4^-d_T(f, i).
WeightFunction ff_witness_to_weights(const SearchTree& tree, int f);

}  // namespace bstlab
