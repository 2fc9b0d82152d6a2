#include <doctest.h>

#include <numeric>
#include <set>

#include "bstlab/algorithms.hpp"
#include "bstlab/constructions.hpp"
#include "bstlab/interleave.hpp"
#include "bstlab/tree_io.hpp"
#include "helpers.hpp"

using namespace bstlab;
using testing::seq;

namespace {

std::int64_t splay_cost(const AccessSequence& s) {
  SearchTree t = build_balanced(s.universe());
  return run_online(OnlineAlgorithm::Splay, t, s).total;
}

bool leaves_are_integers(const SearchTree& t) {
  for (int v : t.inorder()) {
    const auto& nd = t.node(v);
    if (t.key(v).is_integer() && (nd.left != SearchTree::kNil || nd.right != SearchTree::kNil)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("execution traces") {
  const ExecutionTrace tr = record_execution(OnlineAlgorithm::Splay, build_balanced(15), gen_sequential(15));
  CHECK(check_execution(tr).empty());
  SearchTree t = build_balanced(15);
  CHECK(tr.total_cost() == run_online(OnlineAlgorithm::Splay, t, gen_sequential(15)).total);
  SearchTree fin;
  REQUIRE(check_execution(tr, &fin).empty());
  CHECK(same_shape(fin, t));

  const ExecutionTrace back = parse_execution(format_execution(tr));
  CHECK(format_execution(back) == format_execution(tr));
  CHECK(back.costs() == tr.costs());

  ExecutionTrace bad = tr;
  bad.steps[0].touched.pop_back();
  CHECK_FALSE(check_execution(bad).empty());
  ExecutionTrace rot = tr;
  rot.steps[0].rotations.push_back(Key(15));
  CHECK_FALSE(check_execution(rot).empty());
}

TEST_CASE("leaves tripling") {
  const ExecutionTrace one = record_execution(OnlineAlgorithm::Splay, build_balanced(1), seq(1, {1, 1}));
  const ExecutionTrace three = leaves_tripling(one);
  CHECK(three.initial.size() == 3);
  CHECK(three.initial.height() == 2);
  CHECK(three.total_cost() == 3 * one.total_cost());

  Rng rng(151);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = std::uniform_int_distribution<int>(1, 30)(rng);
    const SearchTree t0 = build_random_tree(n, rng);
    const AccessSequence s = testing::random_seq(n, 60, rng);
    for (OnlineAlgorithm alg : {OnlineAlgorithm::Splay, OnlineAlgorithm::MoveToRoot}) {
      const ExecutionTrace a = record_execution(alg, t0, s);
      const ExecutionTrace b = leaves_tripling(a);
      REQUIRE(check_execution(b).empty());
      const auto ca = a.costs();
      const auto cb = b.costs();
      REQUIRE(ca.size() == cb.size());
      for (std::size_t j = 0; j < ca.size(); ++j) REQUIRE(cb[j] <= 3 * ca[j]);
      // replay and confirm the integer keys stay leaves throughout
      SearchTree cur = b.initial;
      REQUIRE(leaves_are_integers(cur));
      for (const ExecutionStep& st : b.steps) {
        for (const Key& r : st.rotations) cur.rotate(cur.at(r));
        REQUIRE(leaves_are_integers(cur));
      }
    }
  }
}

TEST_CASE("composed execution") {
  SUBCASE("a single block") {
    const AccessSequence s = seq(6, {3, 1, 6, 2, 2, 5});
    const ComposedRun run = composed_execute(s, {{1, 6}}, OnlineAlgorithm::Splay, OnlineAlgorithm::Splay);
    CHECK(run.bound_holds);
    CHECK(run.part_costs == std::vector<std::int64_t>{splay_cost(s)});
    CHECK(run.template_cost == static_cast<std::int64_t>(s.size()));
    CHECK(run.template_portion == 2 * static_cast<std::int64_t>(s.size()));
    CHECK(run.total == splay_cost(s) + run.template_portion);
  }

  SUBCASE("tilted grid n = 4") {
    const AccessSequence g = gen_tilted_grid(2, 2);
    const ComposedRun run = composed_execute(g, uniform_partition(4, 2), OnlineAlgorithm::Splay, OnlineAlgorithm::Splay);
    const std::int64_t rhs = 2 * splay_cost(seq(2, {1, 2})) + 3 * splay_cost(seq(2, {1, 2, 1, 2}));
    CHECK(run.total <= rhs);
    CHECK(check_execution(run.trace).empty());
  }

  SUBCASE("tilted grids with independent costs") {
    for (auto [k, l] : {std::pair{4, 16}, std::pair{8, 8}, std::pair{16, 16}}) {
      const AccessSequence g = gen_tilted_grid(k, l);
      const Partition p = uniform_partition(k * l, l);
      const CompositionTemplate ct = decompose(g, p);
      const ComposedRun run = composed_execute(g, p, OnlineAlgorithm::Splay, OnlineAlgorithm::Splay);
      std::int64_t parts = 0;
      for (const auto& part : ct.parts) parts += splay_cost(part);
      CHECK(run.total == std::accumulate(run.part_costs.begin(), run.part_costs.end(), std::int64_t{0}) +
                             run.template_portion);
      CHECK(run.template_portion <= 3 * run.template_cost);
      CHECK(run.template_cost == splay_cost(ct.pattern));
      CHECK(run.total <= parts + 3 * splay_cost(ct.pattern));
      CHECK(check_execution(run.trace).empty());
    }
  }

  SUBCASE("random sequences and partitions, every algorithm pair") {
    Rng rng(157);
    for (int rep = 0; rep < 12; ++rep) {
      const int n = std::uniform_int_distribution<int>(2, 40)(rng);
      const AccessSequence s = testing::random_seq(n, 80, rng);
      const Partition p = uniform_partition(n, std::uniform_int_distribution<int>(1, n)(rng));
      for (OnlineAlgorithm sub : {OnlineAlgorithm::Splay, OnlineAlgorithm::MoveToRoot})
        for (OnlineAlgorithm tpl : {OnlineAlgorithm::Splay, OnlineAlgorithm::MoveToRoot}) {
          const ComposedRun run = composed_execute(s, p, sub, tpl);
          REQUIRE(run.bound_holds);
          REQUIRE(check_execution(run.trace).empty());
        }
    }
  }

  CHECK_THROWS_AS(composed_execute(seq(4, {1}), {{1, 2}}, OnlineAlgorithm::Splay, OnlineAlgorithm::Splay),
                  std::invalid_argument);
}

namespace {

// Label of a key after elimination: itself when real, else the nearest real
// key below it (or the smallest real key).
Key label_of(const Key& k, const std::vector<Key>& reals) {
  if (k.is_integer()) return k;
  auto it = std::lower_bound(reals.begin(), reals.end(), k);
  return it == reals.begin() ? reals.front() : *std::prev(it);
}

}  // namespace

TEST_CASE("auxiliary elimination") {
  SUBCASE("untouched auxiliaries leave the costs alone") {
    std::vector<Key> keys{Key(1), Key(2), Key(3), Key(7, 2), Key(4)};
    SearchTree t = build_balanced(keys);
    REQUIRE(t.key(t.root()) == Key(3));
    const ExecutionTrace a = record_execution(OnlineAlgorithm::Static, t, std::vector<Key>{Key(3), Key(2), Key(3)});
    const ExecutionTrace b = eliminate_auxiliary(a);
    CHECK(b.costs() == a.costs());
    CHECK_FALSE(b.initial.has_auxiliary_keys());
  }

  SUBCASE("a merged key takes the shallower position") {
    SearchTree t = parse_tree("(3/2 (1 . .) (2 . .))");
    const ExecutionTrace a = record_execution(OnlineAlgorithm::Static, t, std::vector<Key>{Key(1)});
    const ExecutionTrace b = eliminate_auxiliary(a);
    CHECK(b.initial.key(b.initial.root()) == Key(1));
    CHECK(b.initial.size() == 2);
    CHECK(b.costs() == std::vector<std::int64_t>{1});
  }

  SUBCASE("random traces: search paths only shrink") {
    Rng rng(163);
    for (int rep = 0; rep < 30; ++rep) {
      const int n = std::uniform_int_distribution<int>(1, 25)(rng);
      std::vector<Key> keys;
      std::vector<Key> reals;
      for (int i = 1; i <= n; ++i) {
        reals.emplace_back(i);
        keys.emplace_back(i);
        if (rng() % 2) keys.emplace_back(2 * i + 1, 2);
        if (rng() % 3 == 0) keys.emplace_back(4 * i + 1, 4);
      }
      if (rng() % 2) keys.emplace_back(1, 3);
      const SearchTree t0 = build_random_tree(keys, rng);
      std::vector<Key> acc;
      for (int j = 0; j < 60; ++j) acc.push_back(reals[rng() % reals.size()]);
      const OnlineAlgorithm alg = rep % 2 ? OnlineAlgorithm::Splay : OnlineAlgorithm::MoveToRoot;
      const ExecutionTrace a = record_execution(alg, t0, acc);
      const ExecutionTrace b = eliminate_auxiliary(a);
      REQUIRE(check_execution(b).empty());
      REQUIRE(b.steps.size() == a.steps.size());
      for (std::size_t j = 0; j < a.steps.size(); ++j) {
        std::set<Key> allowed;
        for (const Key& k : a.steps[j].touched) allowed.insert(label_of(k, reals));
        REQUIRE(b.steps[j].touched.size() <= a.steps[j].touched.size());
        REQUIRE(b.steps[j].access == a.steps[j].access);
        for (const Key& k : b.steps[j].touched) REQUIRE(allowed.count(k));
      }
    }
  }

  SUBCASE("composed runs reduce to executions over the real keys") {
    const AccessSequence g = gen_tilted_grid(4, 8);
    const ComposedRun run = composed_execute(g, uniform_partition(32, 8), OnlineAlgorithm::Splay, OnlineAlgorithm::Splay);
    const ExecutionTrace b = eliminate_auxiliary(run.trace);
    CHECK(check_execution(b).empty());
    CHECK(b.total_cost() <= run.total);
    CHECK(b.initial.size() == 32);
  }

  SUBCASE("auxiliary keys cannot be accessed") {
    const SearchTree t = parse_tree("(3/2 (1 . .) (2 . .))");
    const ExecutionTrace a = record_execution(OnlineAlgorithm::Static, t, std::vector<Key>{Key(3, 2)});
    CHECK_THROWS_AS(eliminate_auxiliary(a), std::invalid_argument);
  }
}
