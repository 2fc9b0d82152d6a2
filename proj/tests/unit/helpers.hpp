#pragma once
#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "bstlab/search_tree.hpp"
#include "bstlab/sequences.hpp"

namespace testing {

inline bstlab::AccessSequence seq(int n, std::vector<int> keys) { return {n, std::move(keys)}; }

inline bstlab::AccessSequence seq(std::vector<int> keys) {
  int n = 1;
  for (int k : keys) n = std::max(n, k);
  return {n, std::move(keys)};
}

inline bstlab::AccessSequence random_seq(int n, std::size_t m, bstlab::Rng& rng) {
  std::uniform_int_distribution<int> d(1, n);
  std::vector<int> keys(m);
  for (auto& k : keys) k = d(rng);
  return {n, keys};
}

inline bool valid(const bstlab::SearchTree& t) {
  std::string why;
  const bool ok = t.is_valid(&why);
  if (!ok) MESSAGE(why);
  return ok;
}

}  // namespace testing
