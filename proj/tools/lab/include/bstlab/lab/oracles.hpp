#pragma once

// Slow reference implementations used to cross-check the fast ones.

#include <cstdint>
#include <span>
#include <vector>

#include "bstlab/search_tree.hpp"
#include "bstlab/sequences.hpp"

namespace bstlab::oracle {

/// |w_S(j)| by rescanning the window of every access: O(m^2).
std::vector<std::int64_t> working_set_sizes(const AccessSequence& seq);

/// min over all trees on [n] of sum_j d_T(s_j); n <= 12.
std::int64_t static_optimality(const AccessSequence& seq);

/// LF^k_T(S) by dynamic programming over finger configurations (multisets
/// of k nodes); the first placement is free and each access adds 1.
std::int64_t k_lazy_finger(const AccessSequence& seq, const SearchTree& tree, int k);

/// min over all trees on [n] of LF^k_T(S) via the k-server solver; n <= 12.
std::int64_t k_lazy_finger_opt(const AccessSequence& seq, int k);

/// Longest strictly increasing subsequence by O(n^2) dynamic programming.
std::size_t longest_increasing(std::span<const int> seq);

/// Pattern containment by trying every subsequence of the pattern's length.
bool contains_pattern(std::span<const int> seq, std::span<const int> pattern);

/// Intervals of consecutive values occupying consecutive positions, all
/// checked explicitly.
bool is_simple_permutation(std::span<const int> perm);

}  // namespace bstlab::oracle
