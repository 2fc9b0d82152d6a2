#include <doctest.h>

#include <numeric>

#include "bstlab/algorithms.hpp"
#include "bstlab/bounds.hpp"
#include "bstlab/constructions.hpp"
#include "bstlab/greedy.hpp"
#include "bstlab/sequences.hpp"
#include "helpers.hpp"

using namespace bstlab;
using testing::seq;

TEST_CASE("splay") {
  SearchTree t = build_balanced(3);
  CHECK(splay_access(t, 2) == 1);
  CHECK(same_shape(t, build_balanced(3)));

  SearchTree c = build_left_chain(3);
  CHECK(splay_access(c, 1) == 3);
  CHECK(c.key(c.root()) == Key(1));
  CHECK(c.key(c.node(c.root()).right) == Key(2));
  CHECK(c.key(c.node(c.at(2)).right) == Key(3));

  CHECK_THROWS_AS(splay_access(c, 7), std::out_of_range);

  Rng rng(61);
  SearchTree r = build_random_tree(50, rng);
  for (int i = 0; i < 10000; ++i) {
    const int key = std::uniform_int_distribution<int>(1, 50)(rng);
    const int d = r.depth(key);
    REQUIRE(splay_access(r, key) == d + 1);
    REQUIRE(r.key(r.root()) == Key(key));
    if (i % 97 == 0) REQUIRE(r.is_valid());
  }
  CHECK(r.is_valid());
}

TEST_CASE("move to root") {
  SearchTree t = build_balanced(3);
  CHECK(mtr_access(t, 2) == 1);
  CHECK(same_shape(t, build_balanced(3)));

  SearchTree s = build_right_spine(3);
  CHECK(mtr_access(s, 3) == 3);
  CHECK(s.key(s.root()) == Key(3));
  CHECK(s.key(s.node(s.root()).left) == Key(1));
  CHECK(s.is_valid());
  CHECK_THROWS_AS(mtr_access(s, 0), std::out_of_range);

  SUBCASE("ancestor relation follows the last-access order") {
    // i is an ancestor of k iff i has the highest priority in [i, k], where
    // accessed keys rank by last access and the rest by initial depth.
    Rng rng(67);
    for (int rep = 0; rep < 40; ++rep) {
      const int n = std::uniform_int_distribution<int>(1, 64)(rng);
      const SearchTree t0 = build_random_tree(n, rng);
      SearchTree t = t0;
      const AccessSequence sq = testing::random_seq(n, static_cast<std::size_t>(rng() % (2 * n) + 1), rng);
      std::vector<long> prio(static_cast<std::size_t>(n + 1));
      for (int i = 1; i <= n; ++i) prio[i] = -1 - t0.depth(i);
      for (std::size_t j = 0; j < sq.size(); ++j) {
        mtr_access(t, sq[j]);
        prio[sq[j]] = static_cast<long>(j);
        REQUIRE(t.is_valid());
      }
      for (int i = 1; i <= n; ++i) {
        for (int k = 1; k <= n; ++k) {
          if (i == k) continue;
          bool top = true;
          for (int j = std::min(i, k); j <= std::max(i, k); ++j)
            if (j != i && prio[j] > prio[i]) top = false;
          const bool anc = t.lca_of(t.at(i), t.at(k)) == t.at(i);
          REQUIRE(anc == top);
        }
      }
    }
  }
}

TEST_CASE("run_online") {
  SearchTree t = build_balanced(7);
  const CostLedger l = run_online(OnlineAlgorithm::MoveToRoot, t, seq(7, {4, 4, 4}));
  CHECK(l.total == 3);
  CHECK(l.size() == 3);
  SearchTree b = build_balanced(64);
  CHECK(run_online(OnlineAlgorithm::Splay, b, gen_sequential(64)).total <= 20 * 64);
  SearchTree s = build_balanced(7);
  CHECK(run_online(OnlineAlgorithm::Static, s, seq(7, {1, 4})).per_access == std::vector<std::int64_t>{3, 1});
  CHECK(same_shape(s, build_balanced(7)));
}

TEST_CASE("greedy") {
  CHECK(greedy_run(seq(1, {1})).ledger.total == 1);
  CHECK(greedy_run(seq(2, {1, 2})).ledger.total == 3);
  CHECK(greedy_run(gen_sequential(64)).ledger.total <= 4 * 64);

  Rng rng(71);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = std::uniform_int_distribution<int>(1, 12)(rng);
    const AccessSequence s = testing::random_seq(n, 25, rng);
    const GreedyResult g = greedy_run(s);
    std::string why;
    REQUIRE_MESSAGE(arborally_satisfied(g.points, &why), why);
    REQUIRE_MESSAGE(rows_minimal(g.points, &why), why);
    CHECK(g.ledger.total == static_cast<std::int64_t>(g.points.size()));
    const SearchTree t = build_random_tree(n, rng);
    const GreedyResult h = greedy_run(s, &t);
    CHECK(h.points.prefix_rows() == t.height() + 1);
    REQUIRE_MESSAGE(arborally_satisfied(h.points, &why), why);
    CHECK(sampled_arboral_check(h.points, 500, 3, &why));
  }

  SUBCASE("the checker rejects an unsatisfied set") {
    PointSet ps;
    ps.universe = 2;
    ps.rows = {{1}, {2}};
    ps.access = {1, 2};
    CHECK_FALSE(arborally_satisfied(ps));
    CHECK_FALSE(sampled_arboral_check(ps, 100, 1));
    ps.rows = {{1}, {1, 2}};
    CHECK(arborally_satisfied(ps));
    ps.rows = {{1, 2}, {1, 2}};
    CHECK_FALSE(rows_minimal(ps));
  }
}

TEST_CASE("min-depth potential") {
  CHECK(min_depth_potential(build_balanced(1), build_balanced(1)) == 0);
  CHECK(min_depth_potential(build_balanced(3), build_balanced(3)) == -4);
  CHECK_THROWS_AS(min_depth_potential(build_balanced(3), build_balanced(4)), std::invalid_argument);

  // with T = R every subtree minimum sits at the subtree root
  Rng rng(73);
  const SearchTree r = build_random_tree(30, rng);
  std::int64_t sum = 0;
  for (int i = 1; i <= 30; ++i) sum += r.depth(i);
  CHECK(min_depth_potential(r, r) == -2 * sum);
  SearchTree t = build_random_tree(30, rng);
  CHECK(min_depth_potential(t, r) <= 0);
}

TEST_CASE("splay amortized against a reference tree") {
  SearchTree t = build_balanced(15);
  const AmortizedReport root = splay_amortized_check(seq(15, std::vector<int>(50, 8)), t, t);
  CHECK(root.pass);
  CHECK(root.max_ratio <= 1.0);

  Rng rng(79);
  std::int64_t accesses = 0;
  while (accesses < 10000) {
    const int n = std::uniform_int_distribution<int>(2, 256)(rng);
    const SearchTree start = build_random_tree(n, rng);
    const SearchTree ref = build_random_tree(n, rng);
    const AccessSequence s = testing::random_seq(n, 1000, rng);
    const AmortizedReport rep = splay_amortized_check(s, start, ref);
    REQUIRE(rep.pass);
    CHECK(rep.max_ratio <= 12.0);
    std::int64_t depth_sum = 0;
    for (int i = 1; i <= n; ++i) depth_sum += ref.depth(i);
    CHECK(rep.total_cost <= 12 * (static_optimality_at(s, ref) + depth_sum + static_cast<std::int64_t>(s.size())));
    accesses += static_cast<std::int64_t>(s.size());
  }
}
