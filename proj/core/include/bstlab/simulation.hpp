#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "bstlab/hand.hpp"
#include "bstlab/kfinger.hpp"

namespace bstlab {

/// How the tree over the extended hand (the top tree) is maintained.
enum class TopMode {
  Rebuild,      ///< perfectly balanced over the current items, every step
  Incremental,  ///< items keep their place; scapegoat rebuilds on overflow
};

struct SimulationOptions {
  TopMode top = TopMode::Rebuild;
  bool check_each_step = false;  ///< validate the hand and the tree each step
};

struct SimulationReport {
  std::int64_t machine_cost = 0;
  std::int64_t machine_moves = 0;
  std::int64_t machine_rotations = 0;
  std::int64_t accesses = 0;
  std::int64_t update_cost = 0;      ///< nodes touched by restructuring
  std::int64_t update_rotations = 0;
  std::int64_t access_cost = 0;      ///< depth + 1 of each accessed node in the simulating tree
  std::int64_t simulated_cost = 0;   ///< update_cost + access_cost
  std::int64_t update_steps = 0;     ///< moves and rotations
  double ratio = 0;                  ///< simulated_cost / machine_cost
  double mean_update_cost = 0;       ///< update_cost / update_steps
  int max_pseudofinger_depth = 0;
  double depth_limit = 0;
  double update_limit = 0;
  std::size_t max_items = 0;
  std::int64_t top_rebuilds = 0;
};

/// Maintains a single BST T' over the same keys (and node ids) as the
/// machine's tree, with every pseudofinger of the machine at depth
/// O(log k). Throws std::logic_error when that depth bound is broken.
class SimulatedBST {
 public:
  SimulatedBST(const SearchTree& tree0, int k, SimulationOptions opts = {});

  void step(const Instruction& ins, const std::optional<Key>& expected = std::nullopt);

  const KFingerMachine& machine() const { return machine_; }
  const SearchTree& simulated() const { return sim_; }
  const Hand& hand() const { return hand_; }
  SimulationReport report() const;

  static double depth_limit(int k);
  static double update_limit(int k);

 private:
  struct Slot {
    int left = -1, right = -1, parent = -1;
    bool alive = false;
    std::vector<int> elems;  ///< node ids covered by the item last placed here
    std::size_t item = 0;
  };

  void update_top();
  void rebuild_subtree(int v);
  void inorder_slots(int s, std::vector<int>& out) const;
  void replace_slot(int parent, int old_child, int new_child);
  int build_range(const std::vector<int>& slots, std::size_t lo, std::size_t hi, int parent);
  void delete_slot(int s);
  void insert_slot(int s);
  void rebalance();
  Links target_links();

  KFingerMachine machine_;
  SearchTree sim_;
  SimulationOptions opts_;
  Hand hand_;
  std::vector<Slot> slots_;
  int top_root_ = -1;
  std::set<int> pivots_;
  SimulationReport rep_;
};

/// Runs a trace through a SimulatedBST and returns the report. When seq is
/// given the trace's accesses must serve it.
SimulationReport simulate(const SearchTree& tree0, int k, const Trace& trace, SimulationOptions opts = {},
                          const AccessSequence* seq = nullptr);

}  // namespace bstlab
