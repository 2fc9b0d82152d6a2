#include "bstlab/simulation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "bstlab/constructions.hpp"
#include "bstlab/deque.hpp"
#include "bstlab/sequences.hpp"

namespace bstlab {

namespace {

constexpr int kNone = -1;

int floor_log2(std::size_t n) { return n == 0 ? 0 : static_cast<int>(std::bit_width(n)) - 1; }

std::vector<int> item_nodes(const Hand& hand, const HandItem& item) {
  if (item.pseudofinger) return {item.node};
  return hand.half_tendons[item.tendon].nodes;
}

}  // namespace

double SimulatedBST::depth_limit(int k) { return 4.0 * std::log2(k + 1.0) + 4.0; }
double SimulatedBST::update_limit(int k) { return 16.0 * std::log2(k + 1.0) + 16.0; }

SimulatedBST::SimulatedBST(const SearchTree& tree0, int k, SimulationOptions opts)
    : machine_(tree0, k), sim_(tree0), opts_(opts) {
  if (tree0.empty()) throw std::invalid_argument("simulation needs a nonempty tree");
  hand_ = compute_hand(machine_.tree(), machine_.fingers());
  update_top();
  // With every finger on the root the layout reproduces the initial tree.
  restructure(sim_, target_links());
  rep_.depth_limit = depth_limit(k);
  rep_.update_limit = update_limit(k);
}

void SimulatedBST::inorder_slots(int s, std::vector<int>& out) const {
  if (s == kNone) return;
  inorder_slots(slots_[static_cast<std::size_t>(s)].left, out);
  out.push_back(s);
  inorder_slots(slots_[static_cast<std::size_t>(s)].right, out);
}

void SimulatedBST::replace_slot(int parent, int old_child, int new_child) {
  if (parent == kNone) {
    top_root_ = new_child;
  } else {
    Slot& p = slots_[static_cast<std::size_t>(parent)];
    (p.left == old_child ? p.left : p.right) = new_child;
  }
  if (new_child != kNone) slots_[static_cast<std::size_t>(new_child)].parent = parent;
}

int SimulatedBST::build_range(const std::vector<int>& slots, std::size_t lo, std::size_t hi, int parent) {
  if (lo >= hi) return kNone;
  const std::size_t mid = lo + (hi - lo) / 2;
  const int s = slots[mid];
  slots_[static_cast<std::size_t>(s)].parent = parent;
  slots_[static_cast<std::size_t>(s)].left = build_range(slots, lo, mid, s);
  slots_[static_cast<std::size_t>(s)].right = build_range(slots, mid + 1, hi, s);
  return s;
}

void SimulatedBST::rebuild_subtree(int v) {
  std::vector<int> order;
  inorder_slots(v, order);
  const int parent = slots_[static_cast<std::size_t>(v)].parent;
  const int top = build_range(order, 0, order.size(), parent);
  replace_slot(parent, v, top);
  ++rep_.top_rebuilds;
}

void SimulatedBST::delete_slot(int s) {
  Slot& x = slots_[static_cast<std::size_t>(s)];
  if (x.left == kNone || x.right == kNone) {
    replace_slot(x.parent, s, x.left != kNone ? x.left : x.right);
  } else {
    int t = x.right;
    while (slots_[static_cast<std::size_t>(t)].left != kNone) t = slots_[static_cast<std::size_t>(t)].left;
    Slot& y = slots_[static_cast<std::size_t>(t)];
    if (y.parent != s) {
      replace_slot(y.parent, t, y.right);
      y.right = x.right;
      slots_[static_cast<std::size_t>(y.right)].parent = t;
    }
    y.left = x.left;
    slots_[static_cast<std::size_t>(y.left)].parent = t;
    replace_slot(x.parent, s, t);
  }
  x = Slot{};
}

void SimulatedBST::insert_slot(int s) {
  Slot& x = slots_[static_cast<std::size_t>(s)];
  x.left = x.right = x.parent = kNone;
  if (top_root_ == kNone) {
    top_root_ = s;
    return;
  }
  int cur = top_root_;
  for (;;) {
    Slot& c = slots_[static_cast<std::size_t>(cur)];
    int& next = x.item < c.item ? c.left : c.right;
    if (next == kNone) {
      next = s;
      x.parent = cur;
      return;
    }
    cur = next;
  }
}

void SimulatedBST::rebalance() {
  std::vector<int> order;
  inorder_slots(top_root_, order);
  if (order.empty()) return;
  const int budget = floor_log2(order.size()) + 2;
  for (;;) {
    // Depths and sizes of every slot, by a preorder / reverse pass.
    std::vector<int> pre;
    std::vector<int> stack{top_root_};
    std::unordered_map<int, int> depth, size;
    depth[top_root_] = 0;
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      pre.push_back(s);
      for (int c : {slots_[static_cast<std::size_t>(s)].left, slots_[static_cast<std::size_t>(s)].right}) {
        if (c == kNone) continue;
        depth[c] = depth[s] + 1;
        stack.push_back(c);
      }
    }
    int deepest = top_root_;
    for (int s : pre) {
      if (depth[s] > depth[deepest]) deepest = s;
    }
    if (depth[deepest] <= budget) return;
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
      const Slot& x = slots_[static_cast<std::size_t>(*it)];
      size[*it] = 1 + (x.left == kNone ? 0 : size[x.left]) + (x.right == kNone ? 0 : size[x.right]);
    }
    int v = deepest;
    while (depth[v] + floor_log2(static_cast<std::size_t>(size[v])) > budget) {
      v = slots_[static_cast<std::size_t>(v)].parent;
    }
    rebuild_subtree(v);
  }
}

void SimulatedBST::update_top() {
  const auto& items = hand_.items;
  if (opts_.top == TopMode::Rebuild || slots_.empty()) {
    slots_.assign(items.size(), Slot{});
    std::vector<int> order(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
      order[i] = static_cast<int>(i);
      slots_[i].alive = true;
      slots_[i].item = i;
      slots_[i].elems = item_nodes(hand_, items[i]);
    }
    top_root_ = build_range(order, 0, order.size(), kNone);
    return;
  }

  // Match every item to the slot that held most of its nodes, keeping the
  // matched slots in the same relative order as the items.
  std::vector<int> order;
  inorder_slots(top_root_, order);
  std::unordered_map<int, int> rank, owner;
  for (std::size_t r = 0; r < order.size(); ++r) {
    rank[order[r]] = static_cast<int>(r);
    for (int id : slots_[static_cast<std::size_t>(order[r])].elems) owner[id] = order[r];
  }
  std::vector<int> slot_of(items.size(), kNone);
  std::vector<char> used(slots_.size(), 0);
  int last_rank = -1;
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::unordered_map<int, int> votes;
    for (int id : item_nodes(hand_, items[i])) {
      auto it = owner.find(id);
      if (it != owner.end()) ++votes[it->second];
    }
    int best = kNone;
    for (const auto& [s, v] : votes) {
      if (used[static_cast<std::size_t>(s)] || rank[s] <= last_rank) continue;
      if (best == kNone || v > votes[best] || (v == votes[best] && rank[s] < rank[best])) best = s;
    }
    if (best == kNone) continue;
    slot_of[i] = best;
    used[static_cast<std::size_t>(best)] = 1;
    last_rank = rank[best];
  }
  for (int s : order) {
    if (!used[static_cast<std::size_t>(s)]) delete_slot(s);
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (slot_of[i] == kNone) continue;
    Slot& x = slots_[static_cast<std::size_t>(slot_of[i])];
    x.item = i;
    x.elems = item_nodes(hand_, items[i]);
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (slot_of[i] != kNone) continue;
    int s = kNone;
    for (std::size_t j = 0; j < slots_.size(); ++j) {
      if (!slots_[j].alive) {
        s = static_cast<int>(j);
        break;
      }
    }
    if (s == kNone) {
      s = static_cast<int>(slots_.size());
      slots_.emplace_back();
    }
    Slot& x = slots_[static_cast<std::size_t>(s)];
    x.alive = true;
    x.item = i;
    x.elems = item_nodes(hand_, items[i]);
    insert_slot(s);
  }
  rebalance();
}

Links SimulatedBST::target_links() {
  const SearchTree& t = machine_.tree();
  Links tgt = t.links();
  auto idx = [](int id) { return static_cast<std::size_t>(id); };
  for (int id : hand_.steiner) tgt.left[idx(id)] = tgt.right[idx(id)] = SearchTree::kNil;
  auto link = [&](int parent, bool left, int child) {
    (left ? tgt.left : tgt.right)[idx(parent)] = child;
    if (child != SearchTree::kNil) tgt.parent[idx(child)] = parent;
  };

  std::set<int> next_pivots;
  auto lay = [&](auto&& self, int s) -> int {
    if (s == kNone) return SearchTree::kNil;
    const Slot& slot = slots_[static_cast<std::size_t>(s)];
    const int l = self(self, slot.left);
    const int r = self(self, slot.right);
    const HandItem& item = hand_.items[slot.item];
    if (item.pseudofinger) {
      link(item.node, true, l);
      link(item.node, false, r);
      return item.node;
    }
    const auto& ns = hand_.half_tendons[item.tendon].nodes;
    const int mn = ns.front();
    const int mx = ns.back();
    link(mn, true, l);
    if (ns.size() == 1) {
      link(mn, false, r);
      return mn;
    }
    link(mn, false, mx);
    link(mx, false, r);
    std::vector<int> interior(ns.begin() + 1, ns.end() - 1);
    if (!interior.empty()) {
      std::size_t p = interior.size() / 2;
      for (std::size_t i = 0; i < interior.size(); ++i) {
        if (pivots_.count(interior[i])) {
          p = i;
          break;
        }
      }
      next_pivots.insert(interior[p]);
      link(mx, true, deque_layout(tgt, interior, p));
    }
    return mn;
  };
  const int root = lay(lay, top_root_);
  tgt.root = root;
  tgt.parent[idx(root)] = SearchTree::kNil;
  pivots_ = std::move(next_pivots);

  std::vector<int> steiner_sorted;
  for (const auto& item : hand_.items) {
    const auto ns = item_nodes(hand_, item);
    steiner_sorted.insert(steiner_sorted.end(), ns.begin(), ns.end());
  }
  for (int r : hand_.knuckles) {
    const auto b = std::upper_bound(steiner_sorted.begin(), steiner_sorted.end(), r,
                                    [&](int x, int y) { return t.key(x) < t.key(y); });
    if (b != steiner_sorted.begin() && tgt.right[idx(*(b - 1))] == SearchTree::kNil) {
      link(*(b - 1), false, r);
    } else if (b != steiner_sorted.end() && tgt.left[idx(*b)] == SearchTree::kNil) {
      link(*b, true, r);
    } else {
      throw std::logic_error("no free slot for a subtree hanging off the hand");
    }
  }
  return tgt;
}

void SimulatedBST::step(const Instruction& ins, const std::optional<Key>& expected) {
  machine_.step(ins, expected);
  if (ins.op == Instruction::Op::Access) {
    rep_.access_cost += sim_.depth_of(machine_.finger_node(ins.finger)) + 1;
    return;
  }
  hand_ = compute_hand(machine_.tree(), machine_.fingers());
  if (opts_.check_each_step) {
    const std::string why = check_hand(machine_.tree(), machine_.fingers(), hand_);
    if (!why.empty()) throw std::logic_error("hand invariant: " + why);
  }
  update_top();
  const auto res = restructure(sim_, target_links(), opts_.check_each_step);
  rep_.update_cost += static_cast<std::int64_t>(res.touched.size());
  rep_.update_rotations += static_cast<std::int64_t>(res.rotations.size());
  ++rep_.update_steps;
  rep_.max_items = std::max(rep_.max_items, hand_.items.size());
  for (int p : hand_.pseudofingers) {
    const int d = sim_.depth_of(p);
    rep_.max_pseudofinger_depth = std::max(rep_.max_pseudofinger_depth, d);
    if (d > rep_.depth_limit) {
      throw std::logic_error("pseudofinger " + sim_.key(p).to_string() + " at depth " + std::to_string(d) +
                             " in the simulating tree");
    }
  }
}

SimulationReport SimulatedBST::report() const {
  SimulationReport r = rep_;
  r.machine_moves = machine_.moves();
  r.machine_rotations = machine_.rotations();
  r.accesses = machine_.accesses();
  r.machine_cost = machine_.cost();
  r.simulated_cost = r.update_cost + r.access_cost;
  r.ratio = r.machine_cost == 0 ? 0.0 : static_cast<double>(r.simulated_cost) / static_cast<double>(r.machine_cost);
  r.mean_update_cost =
      r.update_steps == 0 ? 0.0 : static_cast<double>(r.update_cost) / static_cast<double>(r.update_steps);
  return r;
}

SimulationReport simulate(const SearchTree& tree0, int k, const Trace& trace, SimulationOptions opts,
                          const AccessSequence* seq) {
  SimulatedBST sim(tree0, k, opts);
  std::size_t next = 0;
  for (const auto& ins : trace) {
    std::optional<Key> expected;
    if (seq && ins.op == Instruction::Op::Access) {
      if (next >= seq->size()) throw std::invalid_argument("trace declares more accesses than the sequence holds");
      expected = Key((*seq)[next++]);
    }
    sim.step(ins, expected);
  }
  if (seq && next != seq->size()) throw std::invalid_argument("trace declares fewer accesses than the sequence holds");
  return sim.report();
}

}  // namespace bstlab
