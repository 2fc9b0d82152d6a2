#include "bstlab/kserver.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "bstlab/common.hpp"
#include "bstlab/sequences.hpp"

namespace bstlab {

namespace {

// Dense successive-shortest-path min-cost flow on the request DAG. Node ids:
// 0 = source, 1 + 2i = in_i, 2 + 2i = out_i, 2m + 1 = sink. Residual
// capacities are kept implicitly as 0/1 flags.
class RequestFlow {
 public:
  RequestFlow(std::size_t m, int k, std::vector<std::int64_t> dist)
      : m_(m), k_(k), d_(std::move(dist)), v_(2 * m + 2), chain_(m * m, 0), src_in_(m, 0), node_(m, 0),
        out_sink_(m, 0) {
    std::int64_t maxd = 0;
    for (auto x : d_) maxd = std::max(maxd, x);
    big_ = 1 + maxd * static_cast<std::int64_t>(m);
  }

  void run() {
    init_potential();
    for (int unit = 0; unit < k_; ++unit) {
      if (!augment()) throw std::logic_error("k-server flow: no augmenting path");
    }
  }

  std::int64_t moved() const {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = i + 1; j < m_; ++j)
        if (chain_[i * m_ + j]) total += d_[i * m_ + j];
    return total;
  }

  bool all_covered() const {
    return std::all_of(node_.begin(), node_.end(), [](char c) { return c != 0; });
  }

  KServerSolution solution() const {
    KServerSolution sol;
    sol.server_of.assign(m_, -1);
    int server = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!src_in_[i]) continue;
      sol.first_request.push_back(static_cast<int>(i));
      std::size_t cur = i;
      while (true) {
        sol.server_of[cur] = server;
        std::size_t next = m_;
        for (std::size_t j = cur + 1; j < m_; ++j) {
          if (chain_[cur * m_ + j]) {
            next = j;
            break;
          }
        }
        if (next == m_) break;
        cur = next;
      }
      ++server;
    }
    while (static_cast<int>(sol.first_request.size()) < k_) sol.first_request.push_back(-1);
    sol.cost = moved() + static_cast<std::int64_t>(m_);
    return sol;
  }

 private:
  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

  std::size_t in(std::size_t i) const { return 1 + 2 * i; }
  std::size_t out(std::size_t i) const { return 2 + 2 * i; }
  std::size_t sink() const { return v_ - 1; }

  void init_potential() {
    pot_.assign(v_, 0);
    // Topological order of the empty-flow DAG: s, in_0, out_0, in_1, ..., t.
    std::int64_t best_out = kInf;
    for (std::size_t j = 0; j < m_; ++j) {
      std::int64_t din = 0;  // straight from the source
      for (std::size_t i = 0; i < j; ++i) din = std::min(din, pot_[out(i)] + d_[i * m_ + j]);
      pot_[in(j)] = din;
      pot_[out(j)] = din - big_;
      best_out = std::min(best_out, pot_[out(j)]);
    }
    pot_[sink()] = std::min<std::int64_t>(0, best_out);
  }

  template <class F>
  void for_each_arc(std::size_t u, F&& f) const {
    // f(v, cost, kind, index)
    if (u == 0) {
      for (std::size_t i = 0; i < m_; ++i)
        if (!src_in_[i]) f(in(i), 0, 0, i);
      if (src_sink_ < k_) f(sink(), 0, 1, 0);
    } else if (u == sink()) {
      for (std::size_t i = 0; i < m_; ++i)
        if (out_sink_[i]) f(out(i), 0, 2, i);
      if (src_sink_ > 0) f(std::size_t{0}, 0, 3, 0);
    } else if (u % 2 == 1) {
      const std::size_t j = (u - 1) / 2;
      if (!node_[j]) f(out(j), -big_, 4, j);
      if (src_in_[j]) f(std::size_t{0}, 0, 5, j);
      for (std::size_t i = 0; i < j; ++i)
        if (chain_[i * m_ + j]) f(out(i), -d_[i * m_ + j], 6, i * m_ + j);
    } else {
      const std::size_t i = (u - 2) / 2;
      if (node_[i]) f(in(i), big_, 7, i);
      if (!out_sink_[i]) f(sink(), 0, 8, i);
      for (std::size_t j = i + 1; j < m_; ++j)
        if (!chain_[i * m_ + j]) f(in(j), d_[i * m_ + j], 9, i * m_ + j);
    }
  }

  bool augment() {
    std::vector<std::int64_t> dist(v_, kInf);
    std::vector<char> done(v_, 0);
    struct Via {
      std::size_t from = 0;
      int kind = -1;
      std::size_t index = 0;
    };
    std::vector<Via> via(v_);
    dist[0] = 0;
    for (std::size_t iter = 0; iter < v_; ++iter) {
      std::size_t u = v_;
      for (std::size_t x = 0; x < v_; ++x)
        if (!done[x] && dist[x] < kInf && (u == v_ || dist[x] < dist[u])) u = x;
      if (u == v_) break;
      done[u] = 1;
      for_each_arc(u, [&](std::size_t v, std::int64_t cost, int kind, std::size_t index) {
        const std::int64_t reduced = cost + pot_[u] - pot_[v];
        if (dist[u] + reduced < dist[v]) {
          dist[v] = dist[u] + reduced;
          via[v] = {u, kind, index};
        }
      });
    }
    if (dist[sink()] >= kInf) return false;
    // Unreachable nodes advance by the largest finite distance so reduced
    // costs stay nonnegative on arcs leaving them.
    std::int64_t reach = 0;
    for (std::size_t x = 0; x < v_; ++x)
      if (dist[x] < kInf) reach = std::max(reach, dist[x]);
    for (std::size_t x = 0; x < v_; ++x) pot_[x] += dist[x] < kInf ? dist[x] : reach;
    for (std::size_t v = sink(); v != 0;) {
      const Via& e = via[v];
      switch (e.kind) {
        case 0: src_in_[e.index] = 1; break;
        case 1: ++src_sink_; break;
        case 2: out_sink_[e.index] = 0; break;
        case 3: --src_sink_; break;
        case 4: node_[e.index] = 1; break;
        case 5: src_in_[e.index] = 0; break;
        case 6: chain_[e.index] = 0; break;
        case 7: node_[e.index] = 0; break;
        case 8: out_sink_[e.index] = 1; break;
        case 9: chain_[e.index] = 1; break;
        default: throw std::logic_error("k-server flow: broken predecessor chain");
      }
      v = e.from;
    }
    return true;
  }

  std::size_t m_;
  int k_;
  std::vector<std::int64_t> d_;
  std::size_t v_;
  std::int64_t big_ = 0;
  std::vector<char> chain_;
  std::vector<char> src_in_;
  std::vector<char> node_;
  std::vector<char> out_sink_;
  int src_sink_ = 0;
  std::vector<std::int64_t> pot_;
};

}  // namespace

KServerSolution solve_k_server(std::size_t m, int k, const std::function<int(std::size_t, std::size_t)>& dist) {
  if (k < 1) throw std::invalid_argument("k-server: k must be positive");
  if (m == 0) throw std::invalid_argument("k-server: no requests");
  if (m > kMaxKServerRequests) {
    throw GuardExceeded("k-server flow is limited to " + std::to_string(kMaxKServerRequests) + " requests (got " +
                        std::to_string(m) + ")");
  }
  const int servers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(k), m));
  std::vector<std::int64_t> d(m * m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) d[i * m + j] = dist(i, j);
  RequestFlow flow(m, servers, std::move(d));
  flow.run();
  if (!flow.all_covered()) throw std::logic_error("k-server flow left a request uncovered");
  auto sol = flow.solution();
  while (static_cast<int>(sol.first_request.size()) < k) sol.first_request.push_back(-1);
  return sol;
}

KServerSolution k_server_on_tree(const AccessSequence& seq, const SearchTree& tree, int k) {
  require_nonempty(seq);
  if (k > seq.universe()) throw std::invalid_argument("k-lazy finger needs k <= n");
  std::vector<int> ids;
  ids.reserve(seq.size());
  for (int s : seq) ids.push_back(tree.at(s));
  const auto depth = tree.depths();
  auto tree_dist = [&](std::size_t i, std::size_t j) {
    int a = ids[i];
    int b = ids[j];
    int da = depth[static_cast<std::size_t>(a)];
    int db = depth[static_cast<std::size_t>(b)];
    int d = 0;
    while (da > db) {
      a = tree.node(a).parent;
      --da;
      ++d;
    }
    while (db > da) {
      b = tree.node(b).parent;
      --db;
      ++d;
    }
    while (a != b) {
      a = tree.node(a).parent;
      b = tree.node(b).parent;
      d += 2;
    }
    return d;
  };
  return solve_k_server(seq.size(), k, tree_dist);
}

}  // namespace bstlab
