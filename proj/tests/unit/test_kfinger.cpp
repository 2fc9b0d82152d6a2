#include <doctest.h>

#include <cmath>

#include "bstlab/bounds.hpp"
#include "bstlab/constructions.hpp"
#include "bstlab/deque.hpp"
#include "bstlab/hand.hpp"
#include "bstlab/kfinger.hpp"
#include "bstlab/kserver.hpp"
#include "bstlab/simulation.hpp"
#include "helpers.hpp"

using namespace bstlab;
using Dir = Instruction::Dir;
using testing::seq;

TEST_CASE("k-finger machine") {
  KFingerMachine m(build_balanced(7), 2);
  CHECK(m.tree().key(m.finger_node(0)) == Key(4));
  m.step(Instruction::move(0, Dir::Left));
  m.step(Instruction::move(0, Dir::Parent));
  CHECK(m.cost() == 2);
  CHECK(m.finger_node(0) == m.tree().root());

  // one finger walking a spine serves sequential access with n - 1 moves
  const int n = 10;
  const AccessSequence s = gen_sequential(n);
  const Trace walk = finger_assignment_trace(build_right_spine(n), s, 1, std::vector<int>(n, 0));
  const KFingerMachine w = run_trace(build_right_spine(n), 1, walk, &s);
  CHECK(w.moves() == n - 1);
  CHECK(w.accesses() == n);

  // fingers follow their keys through rotations
  KFingerMachine r(build_balanced(7), 2);
  r.step(Instruction::move(1, Dir::Left));
  r.step(Instruction::rotate(1));
  CHECK(r.tree().key(r.tree().root()) == Key(2));
  CHECK(r.tree().key(r.finger_node(1)) == Key(2));
  CHECK(r.tree().key(r.finger_node(0)) == Key(4));
  CHECK(r.tree().is_valid());
  CHECK(r.tree().integer_keys() == build_balanced(7).integer_keys());

  CHECK_THROWS_AS(r.step(Instruction::rotate(1)), std::invalid_argument);
  CHECK_THROWS_AS(r.step(Instruction::move(1, Dir::Parent)), std::invalid_argument);
  CHECK_THROWS_AS(r.step(Instruction::access(0), Key(3)), std::invalid_argument);
  CHECK_THROWS_AS(r.step(Instruction::access(5)), std::invalid_argument);
  CHECK_THROWS_AS(KFingerMachine(build_balanced(3), 0), std::invalid_argument);
}

TEST_CASE("trace text round trip") {
  const Trace t = random_trace(build_balanced(31), 3, 200, 5);
  CHECK(parse_trace(format_trace(t)) == t);
  CHECK(parse_trace("# c\nM 1 L\nR 2\nA 1\n") ==
        Trace{Instruction::move(0, Dir::Left), Instruction::rotate(1), Instruction::access(0)});
  CHECK_THROWS_AS(parse_trace("M 1 X"), std::invalid_argument);
  CHECK_THROWS_AS(parse_trace("Q 1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_trace("A 0"), std::invalid_argument);
}

TEST_CASE("extended hand") {
  const SearchTree t = build_balanced(7);
  const std::vector<int> root{t.root()};
  const Hand h1 = compute_hand(t, root);
  CHECK(h1.pseudofingers == root);
  CHECK(h1.half_tendons.empty());
  CHECK(h1.items.size() == 1);

  const std::vector<int> f{t.at(4), t.at(1), t.at(7)};
  const Hand h = compute_hand(t, f);
  CHECK(h.pseudofingers == std::vector<int>{t.at(1), t.at(4), t.at(7)});
  REQUIRE(h.half_tendons.size() == 2);
  for (const HalfTendon& ht : h.half_tendons) {
    REQUIRE(ht.nodes.size() == 1);
    if (ht.nodes[0] == t.at(2)) {
      CHECK_FALSE(ht.below);
    } else {
      CHECK(ht.nodes[0] == t.at(6));
      CHECK(ht.below);
    }
  }
  CHECK(h.items.size() == 5);
  CHECK(check_hand(t, f, h).empty());

  Rng rng(131);
  for (int rep = 0; rep < 300; ++rep) {
    const int n = std::uniform_int_distribution<int>(1, 200)(rng);
    const int k = std::uniform_int_distribution<int>(1, 12)(rng);
    const SearchTree r = build_random_tree(n, rng);
    std::vector<int> fingers(static_cast<std::size_t>(k));
    for (auto& x : fingers) x = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const Hand hr = compute_hand(r, fingers);
    const std::string why = check_hand(r, fingers, hr);
    REQUIRE_MESSAGE(why.empty(), why);
    CHECK(hr.pseudofingers.size() <= 2 * static_cast<std::size_t>(k + 1));
    CHECK(hr.items.size() <= 6 * static_cast<std::size_t>(k + 1));
  }
}

TEST_CASE("deque as a BST") {
  DequeBST d;
  d.push_min(3);
  CHECK(d.pop_min() == Key(3));
  CHECK(d.empty());
  CHECK_THROWS_AS(d.pop_min(), std::out_of_range);
  CHECK_THROWS_AS(d.pop_max(), std::out_of_range);

  const int n = 2000;
  DequeBST q;
  for (int i = 0; i < n; ++i) {
    if (i % 2) {
      q.push_max(Key(1000000 + i));
    } else {
      q.push_min(Key(-i));
    }
  }
  for (int i = 0; i < n; ++i) {
    if (i % 2) {
      q.pop_max();
    } else {
      q.pop_min();
    }
  }
  CHECK(q.empty());
  CHECK(q.rotations() <= 8 * n);

  Rng rng(137);
  DequeBST r;
  std::deque<Key> model;
  std::int64_t lo = 0, hi = 0;
  for (int i = 0; i < 5000; ++i) {
    const int op = std::uniform_int_distribution<int>(0, 3)(rng);
    if (op == 0 || model.empty()) {
      r.push_min(Key(--lo));
      model.push_front(Key(lo));
    } else if (op == 1) {
      r.push_max(Key(++hi));
      model.push_back(Key(hi));
    } else if (op == 2) {
      REQUIRE(r.pop_min() == model.front());
      model.pop_front();
    } else {
      REQUIRE(r.pop_max() == model.back());
      model.pop_back();
    }
    REQUIRE(r.keys() == std::vector<Key>(model.begin(), model.end()));
    REQUIRE(r.tree().inorder_keys() == r.keys());
    if (i % 50 == 0) REQUIRE(r.tree().is_valid());
  }
  CHECK(r.rotations() <= 8 * 5000);
  CHECK_THROWS_AS(r.push_min(Key(hi + 1)), std::invalid_argument);
}

TEST_CASE("deque layout") {
  SearchTree t = build_balanced(7);
  Links l = t.links();
  std::vector<int> nodes;
  for (int i = 1; i <= 7; ++i) nodes.push_back(t.at(i));
  const int top = deque_layout(l, nodes, 3);
  l.root = top;
  l.parent[static_cast<std::size_t>(top)] = SearchTree::kNil;
  t.assign_links(l);
  CHECK(t.is_valid());
  CHECK(t.key(t.root()) == Key(4));
  CHECK(t.key(t.node(t.root()).left) == Key(1));
  CHECK(t.key(t.node(t.root()).right) == Key(7));
  CHECK(t.depth(3) == 3);
  CHECK(t.depth(5) == 3);
}

namespace {

void check_report(const SimulationReport& rep, int k, std::int64_t n) {
  CHECK(rep.max_pseudofinger_depth <= SimulatedBST::depth_limit(k));
  CHECK(rep.mean_update_cost <= SimulatedBST::update_limit(k));
  CHECK(static_cast<double>(rep.simulated_cost) <=
        16 * std::log2(k + 1.0) * static_cast<double>(rep.machine_cost) + 16.0 * static_cast<double>(n));
}

}  // namespace

TEST_CASE("simulating a k-finger machine") {
  CHECK(SimulatedBST::depth_limit(1) == doctest::Approx(8));
  CHECK(SimulatedBST::update_limit(3) == doctest::Approx(48));

  SUBCASE("one finger on spine walks") {
    for (int n : {64, 256}) {
      const SearchTree spine = build_right_spine(n);
      const AccessSequence s = gen_sequential(n);
      const Trace walk = finger_assignment_trace(spine, s, 1, std::vector<int>(static_cast<std::size_t>(n), 0));
      const SimulationReport rep = simulate(spine, 1, walk, {}, &s);
      CHECK(rep.ratio <= 16);
      check_report(rep, 1, n);
    }
  }

  SUBCASE("optimal four-finger sequential walk") {
    const int n = 128;
    const SearchTree t = build_balanced(n);
    const AccessSequence s = gen_sequential(n);
    const KServerSolution sol = k_server_on_tree(s, t, 4);
    const Trace tr = finger_assignment_trace(t, s, 4, sol.server_of);
    for (TopMode mode : {TopMode::Rebuild, TopMode::Incremental}) {
      const SimulationReport rep = simulate(t, 4, tr, {mode, false}, &s);
      CHECK(rep.ratio <= 16 * std::log2(5.0));
      check_report(rep, 4, n);
    }
  }

  SUBCASE("random traces with per-rotation validation") {
    for (int k : {2, 4, 8}) {
      Rng rng(static_cast<std::uint64_t>(139 + k));
      const SearchTree t0 = build_random_tree(64, rng);
      const Trace tr = random_trace(t0, k, 3000, static_cast<std::uint64_t>(k));
      for (TopMode mode : {TopMode::Rebuild, TopMode::Incremental}) {
        SimulatedBST sim(t0, k, {mode, true});
        for (const Instruction& ins : tr) {
          sim.step(ins);
          REQUIRE(sim.simulated().integer_keys() == sim.machine().tree().integer_keys());
        }
        const SimulationReport rep = sim.report();
        CHECK(rep.machine_cost == sim.machine().cost());
        CHECK(rep.simulated_cost == rep.update_cost + rep.access_cost);
        CHECK(rep.max_items <= 6 * static_cast<std::size_t>(k + 1));
        check_report(rep, k, 64);
      }
    }
  }

  SUBCASE("optimal finger strategies stay within O(log k) of LF^k") {
    Rng rng(149);
    for (int rep = 0; rep < 10; ++rep) {
      const int k = 2 + rep % 3;
      const SearchTree t = build_random_tree(12, rng);
      const AccessSequence s = testing::random_seq(12, 40, rng);
      const KServerSolution sol = k_server_on_tree(s, t, k);
      const SimulationReport r = simulate(t, k, finger_assignment_trace(t, s, k, sol.server_of), {}, &s);
      CHECK(static_cast<double>(r.simulated_cost) <=
            16 * std::log2(k + 1.0) * static_cast<double>(k_lazy_finger_at(s, t, k)) + 16 * 12);
    }
  }

  SUBCASE("accesses must match the sequence") {
    const SearchTree t = build_balanced(7);
    const AccessSequence s = seq(7, {4, 4});
    CHECK_THROWS_AS(simulate(t, 1, Trace{Instruction::access(0)}, {}, &s), std::invalid_argument);
    const AccessSequence wrong = seq(7, {3});
    CHECK_THROWS_AS(simulate(t, 1, Trace{Instruction::access(0)}, {}, &wrong), std::invalid_argument);
  }
}
