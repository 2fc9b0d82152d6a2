#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "bstlab/bounds.hpp"
#include "bstlab/constructions.hpp"
#include "bstlab/lab/oracles.hpp"
#include "bstlab/sequences.hpp"
#include "helpers.hpp"

using namespace bstlab;
using testing::seq;

namespace {

std::vector<int> iota_vec(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return v;
}

std::vector<int> standardize(const std::vector<int>& v) {
  std::vector<int> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] < v[b]; });
  std::vector<int> out(v.size());
  for (std::size_t r = 0; r < idx.size(); ++r) out[idx[r]] = static_cast<int>(r) + 1;
  return out;
}

}  // namespace

TEST_CASE("sequence validation and text form") {
  CHECK_THROWS_AS(AccessSequence(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(AccessSequence(3, {1, 4}), std::invalid_argument);
  CHECK_THROWS_AS(require_nonempty(AccessSequence(3, {})), std::invalid_argument);
  CHECK_THROWS_AS(require_permutation(seq(3, {1, 1, 2})), std::invalid_argument);
  const AccessSequence s = seq(5, {1, 5, 3, 2, 4});
  CHECK(s.is_permutation());
  CHECK(s.to_text() == "5 5\n1 5 3 2 4\n");
  CHECK(AccessSequence::parse(s.to_text()) == s);
  CHECK(seq(3, {1, 1, 3}).frequencies() == std::vector<std::int64_t>{0, 2, 0, 1});
  CHECK_THROWS_AS(AccessSequence::parse("3 2\n1"), std::invalid_argument);
}

TEST_CASE("sequential and preorder generators") {
  CHECK(gen_sequential(1).keys() == std::vector<int>{1});
  CHECK(gen_sequential(3).keys() == std::vector<int>{1, 2, 3});
  CHECK(gen_sequential(5).keys() == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(gen_preorder(build_balanced(1)).keys() == std::vector<int>{1});
  CHECK(gen_preorder(build_balanced(3)).keys() == std::vector<int>{2, 1, 3});
  CHECK(gen_preorder(build_left_chain(3)).keys() == std::vector<int>{3, 2, 1});
}

TEST_CASE("tilted grid") {
  CHECK(gen_tilted_grid(1, 4).keys() == std::vector<int>{1, 2, 3, 4});
  CHECK(gen_tilted_grid(2, 2).keys() == std::vector<int>{1, 3, 2, 4});
  CHECK(gen_tilted_grid(3, 2).keys() == std::vector<int>{1, 3, 5, 2, 4, 6});

  SUBCASE("order-isomorphic to the skewed point set") {
    for (int k = 1; k <= 12; ++k) {
      for (int l = 1; l <= 12; ++l) {
        // point (i, j): key i*l + j - 1, time j*k + i, i in [0,k), j in [1,l]
        std::vector<std::pair<int, int>> pts;
        for (int i = 0; i < k; ++i)
          for (int j = 1; j <= l; ++j) pts.emplace_back(j * k + i, i * l + j - 1);
        std::sort(pts.begin(), pts.end());
        std::vector<int> keys;
        for (auto& p : pts) keys.push_back(p.second);
        CHECK(standardize(keys) == gen_tilted_grid(k, l).keys());
        if (k <= l) {
          // the time coordinate j*l + i - 1 orders the same points when k <= l
          std::vector<std::pair<int, int>> alt;
          for (int i = 0; i < k; ++i)
            for (int j = 1; j <= l; ++j) alt.emplace_back(j * l + i - 1, i * l + j - 1);
          std::sort(alt.begin(), alt.end());
          std::vector<int> akeys;
          for (auto& p : alt) akeys.push_back(p.second);
          CHECK(standardize(akeys) == gen_tilted_grid(k, l).keys());
        }
      }
    }
  }

  SUBCASE("avoids the decreasing pattern of length k+1") {
    for (int k = 1; k <= 5; ++k) {
      std::vector<int> dec(static_cast<std::size_t>(k + 1));
      std::iota(dec.rbegin(), dec.rend(), 1);
      for (int l = 1; l <= 5; ++l) CHECK_FALSE(contains_pattern(gen_tilted_grid(k, l), dec));
    }
    CHECK_FALSE(contains_pattern(gen_tilted_grid(2, 3), std::vector<int>{3, 2, 1}));
    CHECK(contains_pattern(gen_tilted_grid(3, 3), std::vector<int>{3, 2, 1}));
  }
}

TEST_CASE("phase sequences") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const AccessSequence p = gen_phase_sequence(4, 1, 4, 1, s);
    REQUIRE(p.size() == 4);
    CHECK(p[0] == p[2]);
    CHECK(p[1] == p[3]);
    CHECK(p[0] != p[1]);
  }
  for (std::uint64_t s = 0; s < 100; ++s) {
    const AccessSequence p = gen_phase_sequence(100, 2, 8, 3, s);
    REQUIRE(p.size() == 24);
    for (int ph = 0; ph < 3; ++ph) {
      std::set<int> d(p.keys().begin() + ph * 8, p.keys().begin() + (ph + 1) * 8);
      CHECK(d.size() == 4);
    }
  }
  CHECK(gen_phase_sequence(100, 2, 8, 3, 7) == gen_phase_sequence(100, 2, 8, 3, 7));
  const AccessSequence big = gen_phase_sequence(512, 2, 128, 4, 1);
  CHECK(working_set(big) <= 4 * (2 * 2 * std::log2(512.0) + 128 * std::log2(4.0)));
}

TEST_CASE("compose and decompose") {
  CompositionTemplate fig{seq(2, {1, 2, 1, 1, 2}), {seq(3, {1, 3, 2}), seq(2, {2, 1})}};
  CHECK(compose(fig).keys() == std::vector<int>{1, 5, 3, 2, 4});
  CHECK(compose({seq(1, {1, 1}), {seq(2, {2, 1})}}).keys() == std::vector<int>{2, 1});
  CHECK(compose({seq(2, {2, 1}), {seq(1, {1}), seq(1, {1})}}).keys() == std::vector<int>{2, 1});

  const CompositionTemplate back = decompose(seq(5, {1, 5, 3, 2, 4}), {{1, 3}, {4, 5}});
  CHECK(back.pattern.keys() == std::vector<int>{1, 2, 1, 1, 2});
  REQUIRE(back.parts.size() == 2);
  CHECK(back.parts[0].keys() == std::vector<int>{1, 3, 2});
  CHECK(back.parts[1].keys() == std::vector<int>{2, 1});

  const CompositionTemplate single = decompose(seq(2, {1, 2}), {{1, 2}});
  CHECK(single.pattern.keys() == std::vector<int>{1, 1});
  CHECK(single.parts[0].keys() == std::vector<int>{1, 2});

  const CompositionTemplate grid = decompose(gen_tilted_grid(2, 2), {{1, 2}, {3, 4}});
  CHECK(grid.pattern.keys() == std::vector<int>{1, 2, 1, 2});
  CHECK(grid.parts[0].keys() == std::vector<int>{1, 2});
  CHECK(grid.parts[1].keys() == std::vector<int>{1, 2});

  CHECK_THROWS_AS(decompose(seq(5, {1}), {{1, 2}, {4, 5}}), std::invalid_argument);
  CHECK_THROWS_AS(decompose(seq(5, {1}), {{1, 3}, {3, 5}}), std::invalid_argument);

  Rng rng(41);
  for (int rep = 0; rep < 300; ++rep) {
    const int n = std::uniform_int_distribution<int>(1, 30)(rng);
    const AccessSequence s = testing::random_seq(n, 40, rng);
    Partition p;
    int lo = 1;
    while (lo <= n) {
      const int hi = std::min(n, lo + std::uniform_int_distribution<int>(0, 5)(rng));
      p.push_back({lo, hi});
      lo = hi + 1;
    }
    REQUIRE(compose(decompose(s, p)) == s);
  }
}

TEST_CASE("monotone parameter") {
  CHECK(monotone_parameter(gen_sequential(10)) == 2);
  CHECK(monotone_parameter(seq(1, {1})) == 2);
  CHECK(monotone_parameter(seq(4, {2, 4, 1, 3})) == 3);

  auto brute = [](const AccessSequence& s) {
    for (int m = 2;; ++m) {
      std::vector<int> inc = iota_vec(m);
      std::vector<int> dec(inc.rbegin(), inc.rend());
      if (!oracle::contains_pattern(s.keys(), inc) || !oracle::contains_pattern(s.keys(), dec)) return m;
    }
  };
  // every sequence over a 3-letter alphabet of length <= 9
  for (int len = 1; len <= 9; ++len) {
    std::vector<int> v(static_cast<std::size_t>(len), 1);
    while (true) {
      const AccessSequence s(3, v);
      REQUIRE(monotone_parameter(s) == brute(s));
      std::size_t i = 0;
      while (i < v.size() && v[i] == 3) v[i++] = 1;
      if (i == v.size()) break;
      ++v[i];
    }
  }
  // every permutation of length <= 8
  for (int len = 1; len <= 8; ++len) {
    std::vector<int> p = iota_vec(len);
    do {
      const AccessSequence s(len, p);
      REQUIRE(monotone_parameter(s) == brute(s));
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST_CASE("pattern containment") {
  CHECK(contains_pattern(seq({1, 2, 3}), std::vector<int>{1, 2}));
  CHECK_FALSE(contains_pattern(seq({3, 2, 1}), std::vector<int>{1, 2}));
  CHECK_THROWS_AS((void)contains_pattern(seq({1}), iota_vec(7)), GuardExceeded);
  Rng rng(43);
  const std::vector<std::vector<int>> patterns = {{1, 2}, {2, 1}, {1, 3, 2}, {2, 4, 1, 3}, {3, 1, 4, 2}, {1, 2, 3, 4, 5}};
  for (int rep = 0; rep < 300; ++rep) {
    const AccessSequence s = testing::random_seq(8, 9, rng);
    for (const auto& p : patterns) REQUIRE(contains_pattern(s, p) == oracle::contains_pattern(s.keys(), p));
  }
  CHECK(oracle::longest_increasing(std::vector<int>{2, 4, 1, 3}) == 2);
  CHECK(longest_increasing(std::vector<int>{3, 1, 2, 5, 4}) == 3);
  CHECK(longest_decreasing(std::vector<int>{3, 1, 2, 5, 4}) == 2);
}

TEST_CASE("decomposability parameter") {
  CHECK(decomposability_parameter(seq(1, {1})) == 2);
  CHECK(decomposability_parameter(seq(4, {2, 4, 1, 3})) == 4);
  CHECK(is_simple_permutation(std::vector<int>{2, 4, 1, 3}));
  CHECK_FALSE(is_simple_permutation(std::vector<int>{1, 3, 2}));

  Rng rng(47);
  for (int rep = 0; rep < 50; ++rep) {
    const SearchTree t = build_random_tree(40, rng);
    CHECK(decomposability_parameter(gen_preorder(t)) == 2);
  }

  SUBCASE("agrees with the simple-pattern avoidance definition") {
    // simple permutations of length 4..7
    std::set<std::vector<int>> simple;
    for (int len = 4; len <= 7; ++len) {
      std::vector<int> p = iota_vec(len);
      do {
        if (oracle::is_simple_permutation(p)) {
          REQUIRE(is_simple_permutation(p));
          simple.insert(p);
        } else {
          REQUIRE_FALSE(is_simple_permutation(p));
        }
      } while (std::next_permutation(p.begin(), p.end()));
    }
    for (int len = 1; len <= 7; ++len) {
      std::vector<int> p = iota_vec(len);
      do {
        // standardized subsequences of length >= 4 that are simple
        int longest = 0;
        for (unsigned mask = 0; mask < (1u << len); ++mask) {
          const int bits = __builtin_popcount(mask);
          if (bits < 4 || bits <= longest) continue;
          std::vector<int> sub;
          for (int i = 0; i < len; ++i)
            if (mask >> i & 1u) sub.push_back(p[static_cast<std::size_t>(i)]);
          if (simple.count(standardize(sub))) longest = bits;
        }
        int d = 2;
        // smallest d >= 2 avoiding every simple pattern of lengths d+1 and d+2
        while (true) {
          bool hit = false;
          for (unsigned mask = 0; mask < (1u << len) && !hit; ++mask) {
            const int bits = __builtin_popcount(mask);
            if (bits != d + 1 && bits != d + 2) continue;
            std::vector<int> sub;
            for (int i = 0; i < len; ++i)
              if (mask >> i & 1u) sub.push_back(p[static_cast<std::size_t>(i)]);
            hit = simple.count(standardize(sub)) > 0;
          }
          if (!hit) break;
          ++d;
        }
        REQUIRE(decomposability_parameter(AccessSequence(len, p)) == d);
        REQUIRE(d == std::max(2, longest));
      } while (std::next_permutation(p.begin(), p.end()));
    }
  }
}

TEST_CASE("decomposable generator") {
  CHECK(gen_decomposable(2, 0, 1).keys() == std::vector<int>{1});
  for (std::uint64_t s = 0; s < 100; ++s) {
    const AccessSequence p = gen_decomposable(2, 4, s);
    REQUIRE(p.is_permutation());
    CHECK(decomposability_parameter(p) == 2);
  }
  for (std::uint64_t s = 0; s < 30; ++s) {
    const AccessSequence p = gen_decomposable(4, 3, s);
    CHECK(p.size() <= 64);
    CHECK(decomposability_parameter(p) <= 4);
  }
  Rng rng(53);
  for (int len : {2, 4, 5, 9}) CHECK(is_simple_permutation(random_simple_permutation(len, rng)));
}
