#include <doctest.h>

#include <cmath>
#include <numeric>

#include "bstlab/constructions.hpp"
#include "bstlab/rational.hpp"
#include "bstlab/search_tree.hpp"
#include "bstlab/tree_io.hpp"
#include "helpers.hpp"

using namespace bstlab;
using testing::valid;

TEST_CASE("keys are exact rationals") {
  CHECK(Key(2, 4) == Key(1, 2));
  CHECK(Key(-3, -6) == Key(1, 2));
  CHECK(Key(1, 3) < Key(1, 2));
  CHECK(Key(7) > Key(13, 2));
  CHECK(Key(1, 2) + Key(1, 3) == Key(5, 6));
  CHECK(Key(3) - Key(1, 3) == Key(8, 3));
  CHECK(Key(4, 2).is_integer());
  CHECK(Key(4, 2).as_integer() == 2);
  CHECK_THROWS_AS((void)Key(1, 2).as_integer(), std::domain_error);
  CHECK_THROWS((void)Key(1, 0));
  CHECK(Key::parse("5/10") == Key(1, 2));
  CHECK(Key::parse("-4") == Key(-4));
  CHECK_FALSE(Key::parse("x").has_value());
  CHECK_FALSE(Key::parse("1/0").has_value());
  CHECK(Key(5, 10).to_string() == "1/2");
}

TEST_CASE("rotate") {
  SearchTree t = build_left_chain(2);
  REQUIRE(t.key(t.root()) == Key(2));
  t.rotate(t.at(1));
  CHECK(t.key(t.root()) == Key(1));
  CHECK(t.key(t.node(t.root()).right) == Key(2));
  CHECK(valid(t));

  SUBCASE("rotation and its inverse restore the tree") {
    Rng rng(3);
    SearchTree a = build_random_tree(20, rng);
    SearchTree b = a;
    const int x = a.at(7);
    if (a.node(x).parent != SearchTree::kNil) {
      const int p = a.node(x).parent;
      a.rotate(x);
      a.rotate(p);
      CHECK(same_shape(a, b));
    }
  }

  SUBCASE("random rotations keep the in-order sequence") {
    Rng rng(11);
    for (int rep = 0; rep < 1000; ++rep) {
      SearchTree r = build_random_tree(15, rng);
      const int id = std::uniform_int_distribution<int>(0, 14)(rng);
      if (r.node(id).parent == SearchTree::kNil) continue;
      r.rotate(id);
      REQUIRE(r.integer_keys() == [] {
        std::vector<std::int64_t> v(15);
        std::iota(v.begin(), v.end(), 1);
        return v;
      }());
      REQUIRE(r.is_valid());
    }
  }

  CHECK_THROWS_AS(t.rotate(t.root()), std::logic_error);
}

TEST_CASE("depth, distance, lca") {
  SearchTree chain = build_left_chain(5);
  CHECK(chain.depth(5) == 0);
  CHECK(chain.depth(4) == 1);
  CHECK(chain.depth(1) == 4);
  CHECK(chain.height() == 4);

  SearchTree b = build_balanced(3);
  CHECK(b.distance(1, 1) == 0);
  CHECK(b.distance(1, 3) == 2);
  CHECK(b.key(b.lca_of(b.at(1), b.at(3))) == Key(2));

  SearchTree spine = build_right_spine(3);
  CHECK(spine.distance(1, 3) == 2);
  CHECK_THROWS_AS((void)spine.depth(9), std::out_of_range);
}

TEST_CASE("build_balanced") {
  CHECK(build_balanced(1).size() == 1);
  CHECK(build_balanced(3).key(build_balanced(3).root()) == Key(2));
  CHECK(build_balanced(7).height() == 2);
  CHECK(valid(build_balanced(1000)));
  CHECK_THROWS_AS(build_balanced(std::vector<Key>{}), std::invalid_argument);
  CHECK_THROWS_AS(build_balanced(std::vector<Key>{Key(1), Key(1)}), std::invalid_argument);
}

TEST_CASE("remove_node splices a single child") {
  SearchTree t = build_right_spine(3);
  t.remove_node(t.at(2));
  CHECK(t.size() == 2);
  CHECK(t.distance(1, 3) == 1);
  CHECK(valid(t));
  SearchTree b = build_balanced(3);
  CHECK_THROWS_AS(b.remove_node(b.root()), std::logic_error);
}

TEST_CASE("tree text round trip") {
  Rng rng(5);
  std::vector<Key> keys;
  for (int i = 1; i <= 10; ++i) {
    keys.emplace_back(i);
    keys.emplace_back(2 * i + 1, 2);
  }
  SearchTree t = build_random_tree(keys, rng);
  const std::string text = format_tree(t);
  SearchTree back = parse_tree(text);
  CHECK(same_shape(t, back));
  CHECK(format_tree(back) == text);
  CHECK(back.has_auxiliary_keys());
  CHECK(format_tree(build_balanced(3)) == "(2 (1 . .) (3 . .))");
  CHECK_THROWS_AS(parse_tree("(2 (3 . .) .)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tree("(2 (1 . .)"), std::invalid_argument);
}

TEST_CASE("shape enumeration") {
  CHECK(all_bst_shapes(1).size() == 1);
  CHECK(all_bst_shapes(3).size() == 5);
  CHECK(all_bst_shapes(4).size() == 14);
  CHECK(all_bst_shapes(8).size() == 1430);
  for (const auto& p : all_bst_shapes(4)) CHECK(valid(tree_from_parents(p)));
  CHECK_THROWS_AS((void)all_bst_shapes(kMaxEnumerationKeys + 1), GuardExceeded);
}

TEST_CASE("treap from weights") {
  CHECK(build_treap_from_weights(WeightFunction::uniform(1), 1).size() == 1);

  SUBCASE("uniform weights give logarithmic depth") {
    const WeightFunction w = WeightFunction::uniform(1023);
    double sum = 0;
    for (std::uint64_t s = 0; s < 200; ++s) sum += build_treap_from_weights(w, s).depth(512);
    CHECK(sum / 200 <= 2 * std::log2(1024.0));
  }

  SUBCASE("a heavy key is usually the root") {
    std::vector<double> v(51, 1.0);
    v[0] = 1000;
    const WeightFunction w(v);
    REQUIRE(w.total() <= 1100);
    int roots = 0;
    for (std::uint64_t s = 0; s < 500; ++s) {
      const SearchTree t = build_treap_from_weights(w, s);
      roots += t.key(t.root()) == Key(1);
    }
    CHECK(roots >= 0.9 * 500);
  }
}

TEST_CASE("deterministic tree from weights") {
  const SearchTree u = build_deterministic_from_weights(WeightFunction::uniform(3));
  CHECK(u.key(u.root()) == Key(2));

  const WeightFunction w({8, 1, 1, 1, 1, 1, 1, 1});
  const SearchTree t = build_deterministic_from_weights(w);
  CHECK(t.depth(1) <= 2 * std::log2(15.0 / 8.0) + 2);
  CHECK(t.depth(1) < 4);

  Rng rng(17);
  std::uniform_real_distribution<double> wd(0.001, 10.0);
  for (int rep = 0; rep < 500; ++rep) {
    const int n = std::uniform_int_distribution<int>(1, 64)(rng);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = rep % 2 ? wd(rng) : std::pow(wd(rng), 4);
    const WeightFunction wf(v);
    const SearchTree d = build_deterministic_from_weights(wf);
    REQUIRE(d.is_valid());
    for (int i = 1; i <= n; ++i) REQUIRE(d.depth(i) <= 2 * std::log2(wf.total() / wf(i)) + 2 + 1e-9);
  }
  CHECK_THROWS_AS(WeightFunction({1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(WeightFunction({1.0, -2.0}), std::invalid_argument);
}

TEST_CASE("weights from tree") {
  CHECK(weights_from_tree(build_balanced(1)).values() == std::vector<double>{1.0});
  const WeightFunction two = weights_from_tree(build_right_spine(2));
  CHECK(two.values() == std::vector<double>{1.0, 0.25});

  Rng rng(23);
  for (int rep = 0; rep < 100; ++rep) {
    const SearchTree t = build_random_tree(40, rng);
    const WeightFunction w = weights_from_tree(t);
    // subtree sums, accumulated bottom-up over the preorder
    std::vector<double> sub(static_cast<std::size_t>(t.capacity()), 0.0);
    auto order = t.preorder();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int v = *it;
      sub[v] += w(static_cast<int>(t.key(v).as_integer()));
      if (t.node(v).parent != SearchTree::kNil) sub[t.node(v).parent] += sub[v];
    }
    for (int v : order) REQUIRE(sub[v] <= 2 * w(static_cast<int>(t.key(v).as_integer())) + 1e-12);

    // round trip through the deterministic construction
    const SearchTree d = build_deterministic_from_weights(w);
    for (int i = 1; i <= 40; ++i) REQUIRE(d.depth(i) <= 4 * (t.depth(i) + 1));
  }
}

TEST_CASE("auxiliary keys removed through weights keep distances") {
  // Soft check: the treap over weights_from_tree(T) keeps real-key distances
  // within a constant factor of those in T, on average over seeds.
  Rng rng(29);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<Key> keys;
    for (int i = 1; i <= 30; ++i) {
      keys.emplace_back(i);
      if (i % 3 == 0) keys.emplace_back(2 * i + 1, 2);
    }
    const SearchTree t = build_random_tree(keys, rng);
    const WeightFunction w = weights_from_tree(t);
    for (int pair = 0; pair < 20; ++pair) {
      const int a = std::uniform_int_distribution<int>(1, 30)(rng);
      const int b = std::uniform_int_distribution<int>(1, 30)(rng);
      double mean = 0;
      for (std::uint64_t s = 0; s < 40; ++s) mean += build_treap_from_weights(w, s).distance(a, b);
      mean /= 40;
      CHECK(mean <= 8.0 * (t.distance(a, b) + 1));
    }
  }
}
