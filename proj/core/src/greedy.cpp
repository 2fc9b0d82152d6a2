#include "bstlab/greedy.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

#include "bstlab/common.hpp"
#include "bstlab/search_tree.hpp"
#include "bstlab/sequences.hpp"

namespace bstlab {

std::size_t PointSet::size() const {
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  return total;
}

GreedyResult greedy_run(const AccessSequence& seq, const SearchTree* initial_tree) {
  const int n = seq.universe();
  constexpr int kNever = std::numeric_limits<int>::min();
  std::vector<int> last(static_cast<std::size_t>(n) + 2, kNever);
  GreedyResult res;
  res.points.universe = n;
  if (initial_tree) {
    if (initial_tree->has_auxiliary_keys() || static_cast<int>(initial_tree->size()) != n) {
      throw std::invalid_argument("greedy initial tree must hold exactly the keys [1, n]");
    }
    const auto depth = initial_tree->depths();
    const int height = initial_tree->height();
    res.points.first_time = -height;
    res.points.rows.assign(static_cast<std::size_t>(height) + 1, {});
    for (int id : initial_tree->inorder()) {
      const auto key = initial_tree->key(id).as_integer();
      if (key < 1 || key > n) throw std::invalid_argument("greedy initial tree must hold exactly the keys [1, n]");
      const int d = depth[static_cast<std::size_t>(id)];
      last[static_cast<std::size_t>(key)] = -d;
      res.points.rows[static_cast<std::size_t>(height - d)].push_back(static_cast<int>(key));
    }
  }
  res.points.rows.reserve(res.points.rows.size() + seq.size());
  for (std::size_t j = 0; j < seq.size(); ++j) {
    const int t = static_cast<int>(j) + 1;
    const int x = seq[j];
    std::vector<int> row;
    int run = last[static_cast<std::size_t>(x)];
    for (int y = x - 1; y >= 1; --y) {
      const int ty = last[static_cast<std::size_t>(y)];
      if (ty > run) {
        row.push_back(y);
        run = ty;
      }
    }
    std::reverse(row.begin(), row.end());
    row.push_back(x);
    run = last[static_cast<std::size_t>(x)];
    for (int y = x + 1; y <= n; ++y) {
      const int ty = last[static_cast<std::size_t>(y)];
      if (ty > run) {
        row.push_back(y);
        run = ty;
      }
    }
    for (int y : row) last[static_cast<std::size_t>(y)] = t;
    res.ledger.record(static_cast<std::int64_t>(row.size()));
    res.points.rows.push_back(std::move(row));
    res.points.access.push_back(x);
  }
  return res;
}

namespace {

bool row_has(const std::vector<int>& row, int lo, int hi) {
  auto it = std::lower_bound(row.begin(), row.end(), lo);
  return it != row.end() && *it <= hi;
}

// Rectangle between (x, row a) and (y, row b), a > b, holds a third point.
bool rectangle_ok(const PointSet& ps, std::size_t a, int x, std::size_t b, int y) {
  const int lo = std::min(x, y);
  const int hi = std::max(x, y);
  // Rows strictly between, with any key in [lo, hi].
  for (std::size_t r = b + 1; r < a; ++r) {
    if (row_has(ps.rows[r], lo, hi)) return true;
  }
  // Row a, other than x; row b, other than y.
  auto other = [&](const std::vector<int>& row, int skip) {
    auto it = std::lower_bound(row.begin(), row.end(), lo);
    for (; it != row.end() && *it <= hi; ++it) {
      if (*it != skip) return true;
    }
    return false;
  };
  return other(ps.rows[a], x) || other(ps.rows[b], y);
}

std::string describe(const PointSet& ps, std::size_t a, int x, std::size_t b, int y) {
  return "unsatisfied rectangle between (" + std::to_string(x) + ", t=" + std::to_string(ps.time_of(a)) + ") and (" +
         std::to_string(y) + ", t=" + std::to_string(ps.time_of(b)) + ")";
}

}  // namespace

bool arborally_satisfied(const PointSet& ps, std::string* why) {
  const auto first_access = static_cast<std::size_t>(ps.prefix_rows());
  for (std::size_t a = first_access; a < ps.rows.size(); ++a) {
    for (int x : ps.rows[a]) {
      // Sweep earlier rows; right_min is the least key >= x seen in rows
      // (b, a] excluding (x, a) itself, left_max the mirror.
      int right_min = std::numeric_limits<int>::max();
      int left_max = std::numeric_limits<int>::min();
      {
        const auto& row = ps.rows[a];
        auto it = std::upper_bound(row.begin(), row.end(), x);
        if (it != row.end()) right_min = *it;
        auto jt = std::lower_bound(row.begin(), row.end(), x);
        if (jt != row.begin()) left_max = *std::prev(jt);
      }
      for (std::size_t b = a; b-- > 0;) {
        const auto& row = ps.rows[b];
        auto it = std::lower_bound(row.begin(), row.end(), x);
        if (it != row.end()) {
          const int y = *it;
          if (y > x && right_min > y) {
            if (why) *why = describe(ps, a, x, b, y);
            return false;
          }
          right_min = std::min(right_min, y);
        }
        auto jt = std::upper_bound(row.begin(), row.end(), x);
        if (jt != row.begin()) {
          const int y = *std::prev(jt);
          if (y < x && left_max < y) {
            if (why) *why = describe(ps, a, x, b, y);
            return false;
          }
          left_max = std::max(left_max, y);
        }
      }
    }
  }
  return true;
}

bool sampled_arboral_check(const PointSet& ps, std::size_t samples, std::uint64_t seed, std::string* why) {
  const auto first_access = static_cast<std::size_t>(ps.prefix_rows());
  if (ps.rows.size() <= first_access || ps.rows.size() < 2) return true;
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick_row(std::max<std::size_t>(first_access, 1), ps.rows.size() - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t a = pick_row(rng);
    const auto& ra = ps.rows[a];
    const int x = ra[std::uniform_int_distribution<std::size_t>(0, ra.size() - 1)(rng)];
    std::size_t b = 0;
    if (s % 2 == 0) {
      const std::size_t back = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(a, 32))(rng);
      b = a - back;
    } else {
      b = std::uniform_int_distribution<std::size_t>(0, a - 1)(rng);
    }
    const auto& rb = ps.rows[b];
    if (rb.empty()) continue;
    const int y = rb[std::uniform_int_distribution<std::size_t>(0, rb.size() - 1)(rng)];
    if (y == x) continue;
    if (!rectangle_ok(ps, a, x, b, y)) {
      if (why) *why = describe(ps, a, x, b, y);
      return false;
    }
  }
  return true;
}

bool rows_minimal(const PointSet& ps, std::string* why) {
  const auto first_access = static_cast<std::size_t>(ps.prefix_rows());
  PointSet work = ps;
  for (std::size_t a = first_access; a < ps.rows.size(); ++a) {
    const int access = ps.access[a - first_access];
    for (std::size_t i = 0; i < ps.rows[a].size(); ++i) {
      const int x = ps.rows[a][i];
      if (x == access) continue;
      work.rows[a].erase(work.rows[a].begin() + static_cast<std::ptrdiff_t>(i));
      const bool still = arborally_satisfied(work);
      work.rows[a] = ps.rows[a];
      if (still) {
        if (why) *why = "point (" + std::to_string(x) + ", t=" + std::to_string(ps.time_of(a)) + ") is redundant";
        return false;
      }
    }
  }
  return true;
}

}  // namespace bstlab
