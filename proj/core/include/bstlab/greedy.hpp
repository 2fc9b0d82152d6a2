#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bstlab/algorithms.hpp"

namespace bstlab {

class AccessSequence;
class SearchTree;

/// Geometric view of an execution: touched keys per time step. Rows before
/// time 1 encode an initial tree (a node at depth d sits at time -d); access
/// rows are times 1..m.
struct PointSet {
  int universe = 0;
  int first_time = 1;
  std::vector<std::vector<int>> rows;  ///< sorted keys, rows[r] at time first_time + r
  std::vector<int> access;             ///< accessed key per access row

  int prefix_rows() const { return 1 - first_time; }
  int time_of(std::size_t row) const { return first_time + static_cast<int>(row); }
  std::size_t size() const;
};

struct GreedyResult {
  PointSet points;
  CostLedger ledger;
};

/// Geometric Greedy. Without an initial tree the history is empty.
GreedyResult greedy_run(const AccessSequence& seq, const SearchTree* initial_tree = nullptr);

/// Exhaustive check: every pair of points with distinct keys and times, at
/// least one of them in an access row, spans a rectangle holding a third
/// point. O(P * rows * log) time.
bool arborally_satisfied(const PointSet& ps, std::string* why = nullptr);

/// Checks `samples` random rectangles; partners are drawn from nearby rows
/// and from uniformly random earlier rows.
bool sampled_arboral_check(const PointSet& ps, std::size_t samples, std::uint64_t seed, std::string* why = nullptr);

/// Whether removing any single non-access point of an access row breaks
/// arboral satisfaction.
bool rows_minimal(const PointSet& ps, std::string* why = nullptr);

}  // namespace bstlab
