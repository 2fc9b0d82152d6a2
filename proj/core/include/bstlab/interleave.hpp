#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bstlab/algorithms.hpp"
#include "bstlab/search_tree.hpp"
#include "bstlab/sequences.hpp"

namespace bstlab {

/// One access in the BST model: the touched keys (a connected set containing
/// the root and the accessed key) and the rotations performed among them.
struct ExecutionStep {
  Key access;
  std::vector<Key> touched;
  std::vector<Key> rotations;  ///< each key is rotated above its parent, in order
};

struct ExecutionTrace {
  SearchTree initial;
  std::vector<ExecutionStep> steps;

  std::int64_t total_cost() const;
  std::vector<std::int64_t> costs() const;
};

/// Replays the trace and returns an empty string if every step is legal,
/// otherwise a description of the first violation. The final tree is
/// written to `final_tree` when given.
std::string check_execution(const ExecutionTrace& trace, SearchTree* final_tree = nullptr);

/// Execution of an online algorithm (Splay or MoveToRoot; Static performs no
/// rotations) from tree0.
ExecutionTrace record_execution(OnlineAlgorithm alg, const SearchTree& tree0, std::span<const Key> accesses);
ExecutionTrace record_execution(OnlineAlgorithm alg, const SearchTree& tree0, const AccessSequence& seq);

/// Replaces every key i by i-1/3 (in i's place), i+1/3 (its right child) and
/// i (a leaf, left child of i+1/3), and replays the trace so that the
/// original keys stay leaves. Each access costs 2t+1 <= 3t for t touched.
/// Requires integer keys.
ExecutionTrace leaves_tripling(const ExecutionTrace& trace);

struct ComposedRun {
  ExecutionTrace trace;                 ///< over [n] plus the auxiliary gadget keys
  std::vector<std::int64_t> part_costs;
  std::int64_t template_cost = 0;       ///< cost of the template algorithm on the template sequence
  std::int64_t template_portion = 0;    ///< cost spent on gadget nodes
  std::int64_t total = 0;
  bool bound_holds = false;             ///< total <= sum(part_costs) + 3 * template_cost
};

/// Serves seq on a tree made of the tripled template tree whose leaves are
/// replaced by the part trees. Each part and the template start balanced.
/// Block i gets gadget keys a_i - 1/3 and b_i + 1/3. Throws
/// std::logic_error if the cost decomposition fails.
ComposedRun composed_execute(const AccessSequence& seq, const Partition& partition, OnlineAlgorithm sub,
                             OnlineAlgorithm templ, bool check = true);

/// Removes every non-integer key. Each one merges into its real predecessor
/// (or successor when it has none); a merged key occupies the shallower of
/// the two positions. The per-access cost never grows (std::logic_error
/// otherwise). Only real keys may be accessed (std::invalid_argument).
ExecutionTrace eliminate_auxiliary(const ExecutionTrace& trace);

/// Text form: the initial tree on one line, then one line per access:
/// `<key> | <touched keys> | <rotated keys>`.
std::string format_execution(const ExecutionTrace& trace);
ExecutionTrace parse_execution(std::string_view text);

}  // namespace bstlab
