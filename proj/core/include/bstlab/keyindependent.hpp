#pragma once

#include <cstdint>
#include <vector>

#include "bstlab/search_tree.hpp"
#include "bstlab/sequences.hpp"

namespace bstlab {

/// Total Move-to-root cost of seq from tree0.
std::int64_t mtr_cost(const SearchTree& tree0, const AccessSequence& seq);

struct KIEstimate {
  double mean = 0;
  double std_error = 0;
  int trials = 0;
  std::uint64_t seed = 0;
};

/// Per working-set-size statistics gathered over all trials (non-first
/// accesses only), indexed by |w_S(j)|.
struct KIAccessStats {
  std::vector<double> cost_sum;
  std::vector<std::int64_t> count;

  double mean_cost(std::size_t ws) const { return count[ws] ? cost_sum[ws] / static_cast<double>(count[ws]) : 0.0; }
  /// Largest mean cost / (4 (log2 s + 1)) over the observed sizes s.
  double worst_bound_ratio() const;
};

/// Mean of mtr_cost(tree0, pi(seq)) over `trials` uniform relabelings pi of
/// [n]. Trial t uses the seed split_seed(seed, t). Every trial asserts that
/// the accessed keys form a root-containing component and that an access
/// only finds keys accessed since its previous access above it
/// (std::logic_error otherwise).
KIEstimate ki_mtr(const SearchTree& tree0, const AccessSequence& seq, int trials, std::uint64_t seed,
                  KIAccessStats* stats = nullptr);

/// Exact expectation over all n! relabelings; n <= 8.
double ki_mtr_exact(const SearchTree& tree0, const AccessSequence& seq);
inline constexpr int kMaxExactKeys = 8;

struct KIReport {
  KIEstimate estimate;
  double ws = 0;          ///< WS(S)
  std::int64_t f_n = 0;   ///< sum of d_T(i) over the balanced tree
  std::int64_t m = 0;
  double ratio = 0;       ///< mean / (ws + f_n + m)
  bool in_band = false;   ///< ratio within [1/16, 16]
  double worst_ws_ratio = 0;
  bool ws_costs_ok = false;  ///< every mean cost at size s is <= 4 (log2 s + 1)
};

/// KI-MTR from the balanced tree over [n], compared with WS(S) + sum d_T(i) + m.
KIReport ki_ratio_report(const AccessSequence& seq, int trials, std::uint64_t seed);

}  // namespace bstlab
