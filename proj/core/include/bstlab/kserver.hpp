#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bstlab/search_tree.hpp"

namespace bstlab {

class AccessSequence;

/// Offline k-server solution with free initial placement.
struct KServerSolution {
  std::int64_t cost = 0;           ///< sum over requests of 1 + distance moved
  std::vector<int> server_of;      ///< server index (0-based) serving each request
  std::vector<int> first_request;  ///< per server, index of its first request or -1
};

inline constexpr std::size_t kMaxKServerRequests = 2000;

/// Exact optimum for m requests with pairwise distances dist(i, j) (a metric),
/// by min-cost flow: each request is a unit node that pays -B when covered, a
/// server moving from request i to a later request j pays dist(i, j), and k
/// units are pushed by successive shortest paths. Throws GuardExceeded above
/// kMaxKServerRequests requests.
KServerSolution solve_k_server(std::size_t m, int k, const std::function<int(std::size_t, std::size_t)>& dist);

/// LF^k_T(S): requests are the accesses of seq, distances are tree distances.
KServerSolution k_server_on_tree(const AccessSequence& seq, const SearchTree& tree, int k);

}  // namespace bstlab
