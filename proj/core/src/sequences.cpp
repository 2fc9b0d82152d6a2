#include "bstlab/sequences.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bstlab/search_tree.hpp"

namespace bstlab {

AccessSequence::AccessSequence(int n, std::vector<int> keys) : n_(n), keys_(std::move(keys)) {
  if (n < 1) throw std::invalid_argument("universe size must be positive");
  for (int k : keys_) {
    if (k < 1 || k > n) {
      throw std::invalid_argument("key " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    }
  }
}

std::vector<std::int64_t> AccessSequence::frequencies() const {
  std::vector<std::int64_t> f(static_cast<std::size_t>(n_) + 1, 0);
  for (int k : keys_) ++f[static_cast<std::size_t>(k)];
  return f;
}

bool AccessSequence::is_permutation() const {
  if (keys_.size() != static_cast<std::size_t>(n_)) return false;
  std::vector<char> seen(static_cast<std::size_t>(n_) + 1, 0);
  for (int k : keys_) {
    if (seen[static_cast<std::size_t>(k)]) return false;
    seen[static_cast<std::size_t>(k)] = 1;
  }
  return true;
}

std::string AccessSequence::to_text() const {
  std::string out = std::to_string(n_) + " " + std::to_string(keys_.size()) + "\n";
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(keys_[i]);
  }
  out += '\n';
  return out;
}

AccessSequence AccessSequence::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  long long n = 0;
  long long m = 0;
  if (!(in >> n >> m) || n < 1 || m < 0) throw std::invalid_argument("sequence header must be `n m`");
  if (n > std::numeric_limits<int>::max()) throw std::invalid_argument("universe too large");
  std::vector<int> keys;
  keys.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long k = 0;
    if (!(in >> k)) throw std::invalid_argument("sequence body shorter than m");
    if (k < 1 || k > n) throw std::invalid_argument("key " + std::to_string(k) + " out of range");
    keys.push_back(static_cast<int>(k));
  }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("sequence body longer than m");
  return AccessSequence(static_cast<int>(n), std::move(keys));
}

AccessSequence read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sequence file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return AccessSequence::parse(ss.str());
}

void write_sequence_file(const std::string& path, const AccessSequence& seq) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write sequence file " + path);
  out << seq.to_text();
}

void require_nonempty(const AccessSequence& seq) {
  if (seq.empty()) throw std::invalid_argument("empty access sequence");
}

void require_permutation(const AccessSequence& seq) {
  if (!seq.is_permutation()) throw std::invalid_argument("sequence is not a permutation of [n]");
}

// ---------------------------------------------------------------------------

AccessSequence gen_sequential(int n) {
  if (n < 1) throw std::invalid_argument("gen_sequential: n must be positive");
  std::vector<int> keys(static_cast<std::size_t>(n));
  std::iota(keys.begin(), keys.end(), 1);
  return AccessSequence(n, std::move(keys));
}

AccessSequence gen_preorder(const SearchTree& tree) {
  if (tree.empty()) throw std::invalid_argument("gen_preorder: empty tree");
  if (tree.has_auxiliary_keys()) throw std::invalid_argument("gen_preorder: tree has auxiliary keys");
  const int n = static_cast<int>(tree.size());
  std::vector<int> keys;
  for (int id : tree.preorder()) {
    const std::int64_t k = tree.key(id).num();
    if (k < 1 || k > n) throw std::invalid_argument("gen_preorder: keys are not exactly [n]");
    keys.push_back(static_cast<int>(k));
  }
  return AccessSequence(n, std::move(keys));
}

AccessSequence gen_tilted_grid(int k, int l) {
  if (k < 1 || l < 1) throw std::invalid_argument("gen_tilted_grid: k and l must be positive");
  const long long n = static_cast<long long>(k) * l;
  if (n > std::numeric_limits<int>::max()) throw std::overflow_error("gen_tilted_grid: k*l overflows");
  std::vector<int> keys;
  keys.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= l; ++j) {
    for (int i = 0; i < k; ++i) keys.push_back(i * l + j);
  }
  return AccessSequence(static_cast<int>(n), std::move(keys));
}

AccessSequence gen_phase_sequence(int n, int k, int X, int Y, std::uint64_t seed) {
  if (k < 1 || X < 1 || Y < 1) throw std::invalid_argument("gen_phase_sequence: k, X, Y must be positive");
  if (2 * k > n) throw std::invalid_argument("gen_phase_sequence: need 2k <= n");
  if (X % (2 * k) != 0) throw std::invalid_argument("gen_phase_sequence: X must be a multiple of 2k");
  Rng rng(seed);
  std::uniform_int_distribution<int> pick(1, n);
  std::vector<int> keys;
  keys.reserve(static_cast<std::size_t>(X) * static_cast<std::size_t>(Y));
  for (int phase = 0; phase < Y; ++phase) {
    std::set<int> drawn;
    while (static_cast<int>(drawn.size()) < 2 * k) drawn.insert(pick(rng));
    for (int rep = 0; rep < X / (2 * k); ++rep) keys.insert(keys.end(), drawn.begin(), drawn.end());
  }
  return AccessSequence(n, std::move(keys));
}

std::vector<int> random_simple_permutation(int length, Rng& rng) {
  if (length == 1) return {1};
  if (length == 2) return std::bernoulli_distribution(0.5)(rng) ? std::vector<int>{1, 2} : std::vector<int>{2, 1};
  if (length == 3) throw std::invalid_argument("no simple permutation of length 3");
  std::vector<int> p(static_cast<std::size_t>(length));
  std::iota(p.begin(), p.end(), 1);
  do {
    std::shuffle(p.begin(), p.end(), rng);
  } while (!is_simple_permutation(p));
  return p;
}

namespace {

// Inflation skeleton[parts...]: positions concatenate, values shift by the
// sizes of parts whose skeleton value is smaller.
std::vector<int> inflate(const std::vector<int>& skeleton, const std::vector<std::vector<int>>& parts) {
  std::vector<int> offset(skeleton.size() + 1, 0);
  std::vector<std::size_t> by_value(skeleton.size());
  for (std::size_t i = 0; i < skeleton.size(); ++i) by_value[static_cast<std::size_t>(skeleton[i] - 1)] = i;
  int acc = 0;
  std::vector<int> base(skeleton.size());
  for (std::size_t v = 0; v < skeleton.size(); ++v) {
    base[by_value[v]] = acc;
    acc += static_cast<int>(parts[by_value[v]].size());
  }
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(acc));
  for (std::size_t i = 0; i < skeleton.size(); ++i) {
    for (int x : parts[i]) out.push_back(x + base[i]);
  }
  return out;
}

std::vector<int> gen_decomposable_rec(int k, int depth, Rng& rng) {
  if (depth <= 0) return {1};
  std::vector<int> arities{2};
  for (int a = 4; a <= k; ++a) arities.push_back(a);
  const int arity = arities[std::uniform_int_distribution<std::size_t>(0, arities.size() - 1)(rng)];
  const auto skeleton = random_simple_permutation(arity, rng);
  std::vector<std::vector<int>> parts;
  for (int i = 0; i < arity; ++i) parts.push_back(gen_decomposable_rec(k, depth - 1, rng));
  return inflate(skeleton, parts);
}

}  // namespace

AccessSequence gen_decomposable(int k, int depth, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("gen_decomposable: k must be at least 2");
  if (depth < 0) throw std::invalid_argument("gen_decomposable: depth must be nonnegative");
  Rng rng(seed);
  auto p = gen_decomposable_rec(k, depth, rng);
  const int n = static_cast<int>(p.size());
  return AccessSequence(n, std::move(p));
}

// ---------------------------------------------------------------------------

AccessSequence compose(const CompositionTemplate& ct) {
  const auto parts_count = ct.parts.size();
  if (parts_count == 0) throw std::invalid_argument("compose: no parts");
  if (static_cast<std::size_t>(ct.pattern.universe()) != parts_count) {
    throw std::invalid_argument("compose: template universe must equal the number of parts");
  }
  const auto freq = ct.pattern.frequencies();
  std::vector<int> shift(parts_count, 0);
  int n = 0;
  for (std::size_t i = 0; i < parts_count; ++i) {
    if (freq[i + 1] != static_cast<std::int64_t>(ct.parts[i].size())) {
      throw std::invalid_argument("compose: part " + std::to_string(i + 1) +
                                  " length does not match its template occurrences");
    }
    shift[i] = n;
    n += ct.parts[i].universe();
  }
  std::vector<std::size_t> cursor(parts_count, 0);
  std::vector<int> keys;
  keys.reserve(ct.pattern.size());
  for (int t : ct.pattern) {
    const auto i = static_cast<std::size_t>(t - 1);
    keys.push_back(ct.parts[i][cursor[i]++] + shift[i]);
  }
  return AccessSequence(n, std::move(keys));
}

void require_partition(const Partition& partition, int n) {
  if (partition.empty()) throw std::invalid_argument("partition: no intervals");
  int expect = 1;
  for (const auto& iv : partition) {
    if (iv.lo != expect || iv.hi < iv.lo) throw std::invalid_argument("partition: intervals must tile [1, n] in order");
    expect = iv.hi + 1;
  }
  if (expect != n + 1) throw std::invalid_argument("partition: intervals must end at n");
}

CompositionTemplate decompose(const AccessSequence& seq, const Partition& partition) {
  const int n = seq.universe();
  require_partition(partition, n);
  std::vector<int> block_of(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < partition.size(); ++i) {
    for (int key = partition[i].lo; key <= partition[i].hi; ++key) block_of[static_cast<std::size_t>(key)] = static_cast<int>(i);
  }
  std::vector<std::vector<int>> parts(partition.size());
  std::vector<int> pattern;
  pattern.reserve(seq.size());
  for (int key : seq) {
    const int b = block_of[static_cast<std::size_t>(key)];
    parts[static_cast<std::size_t>(b)].push_back(key - partition[static_cast<std::size_t>(b)].lo + 1);
    pattern.push_back(b + 1);
  }
  CompositionTemplate ct{AccessSequence(static_cast<int>(partition.size()), std::move(pattern)), {}};
  for (std::size_t i = 0; i < partition.size(); ++i) {
    ct.parts.emplace_back(partition[i].hi - partition[i].lo + 1, std::move(parts[i]));
  }
  return ct;
}

Partition uniform_partition(int n, int width) {
  if (n < 1 || width < 1) throw std::invalid_argument("uniform_partition: n and width must be positive");
  Partition p;
  for (int lo = 1; lo <= n; lo += width) p.push_back({lo, std::min(n, lo + width - 1)});
  return p;
}

// ---------------------------------------------------------------------------

std::size_t longest_increasing(std::span<const int> seq) {
  std::vector<int> tails;
  for (int x : seq) {
    auto it = std::lower_bound(tails.begin(), tails.end(), x);
    if (it == tails.end()) {
      tails.push_back(x);
    } else {
      *it = x;
    }
  }
  return tails.size();
}

std::size_t longest_decreasing(std::span<const int> seq) {
  std::vector<int> neg(seq.begin(), seq.end());
  for (int& x : neg) x = -x;
  return longest_increasing(neg);
}

int monotone_parameter(const AccessSequence& seq) {
  require_nonempty(seq);
  return static_cast<int>(std::min(longest_increasing(seq.keys()), longest_decreasing(seq.keys()))) + 1;
}

bool is_simple_permutation(std::span<const int> perm) {
  const std::size_t n = perm.size();
  if (n <= 2) return true;
  for (std::size_t a = 0; a < n; ++a) {
    int lo = perm[a];
    int hi = perm[a];
    for (std::size_t b = a + 1; b < n; ++b) {
      lo = std::min(lo, perm[b]);
      hi = std::max(hi, perm[b]);
      const bool whole = a == 0 && b == n - 1;
      if (!whole && hi - lo == static_cast<int>(b - a)) return false;
    }
  }
  return true;
}

BlockDecomposition decompose_blocks(const AccessSequence& perm) {
  require_permutation(perm);
  const auto& p = perm.keys();
  BlockDecomposition dec;
  dec.nodes.push_back({BlockNode::Kind::Leaf, 0, p.size(), 1, perm.universe(), {}});
  std::vector<std::size_t> work{0};
  while (!work.empty()) {
    const std::size_t id = work.back();
    work.pop_back();
    const std::size_t b = dec.nodes[id].begin;
    const std::size_t e = dec.nodes[id].end;
    const int lo = dec.nodes[id].low;
    const int hi = dec.nodes[id].high;
    if (e - b == 1) continue;

    std::vector<std::size_t> cuts;  // exclusive ends of children
    BlockNode::Kind kind = BlockNode::Kind::Prime;
    int run_max = lo - 1;
    for (std::size_t i = b; i + 1 < e; ++i) {
      run_max = std::max(run_max, p[i]);
      if (run_max - lo == static_cast<int>(i - b)) cuts.push_back(i + 1);
    }
    if (!cuts.empty()) {
      kind = BlockNode::Kind::Sum;
    } else {
      int run_min = hi + 1;
      for (std::size_t i = b; i + 1 < e; ++i) {
        run_min = std::min(run_min, p[i]);
        if (hi - run_min == static_cast<int>(i - b)) cuts.push_back(i + 1);
      }
      if (!cuts.empty()) kind = BlockNode::Kind::Skew;
    }
    if (kind == BlockNode::Kind::Prime) {
      std::size_t c = b;
      while (c < e) {
        int mn = p[c];
        int mx = p[c];
        std::size_t best = c;
        for (std::size_t j = c + 1; j < e; ++j) {
          mn = std::min(mn, p[j]);
          mx = std::max(mx, p[j]);
          if (c == b && j == e - 1) break;
          if (mx - mn == static_cast<int>(j - c)) best = j;
        }
        cuts.push_back(best + 1);
        c = best + 1;
      }
      cuts.pop_back();
    }
    cuts.push_back(e);
    dec.nodes[id].kind = kind;
    std::size_t start = b;
    for (std::size_t cut : cuts) {
      int mn = p[start];
      int mx = p[start];
      for (std::size_t j = start; j < cut; ++j) {
        mn = std::min(mn, p[j]);
        mx = std::max(mx, p[j]);
      }
      const std::size_t child = dec.nodes.size();
      dec.nodes.push_back({BlockNode::Kind::Leaf, start, cut, mn, mx, {}});
      dec.nodes[id].children.push_back(child);
      work.push_back(child);
      start = cut;
    }
  }
  return dec;
}

int decomposability_parameter(const AccessSequence& perm) {
  const auto dec = decompose_blocks(perm);
  int d = 2;
  for (const auto& node : dec.nodes) {
    if (node.kind == BlockNode::Kind::Prime) d = std::max(d, static_cast<int>(node.children.size()));
  }
  return d;
}

namespace {

bool match_pattern(const std::vector<int>& s, std::span<const int> pat, std::vector<std::size_t>& chosen,
                   std::size_t from) {
  const std::size_t depth = chosen.size();
  if (depth == pat.size()) return true;
  if (s.size() - from < pat.size() - depth) return false;
  for (std::size_t i = from; i < s.size(); ++i) {
    bool ok = true;
    for (std::size_t q = 0; q < depth && ok; ++q) {
      const int a = s[chosen[q]];
      const int b = s[i];
      if (a == b) {
        ok = false;
      } else {
        ok = (pat[q] < pat[depth]) == (a < b);
      }
    }
    if (!ok) continue;
    chosen.push_back(i);
    if (match_pattern(s, pat, chosen, i + 1)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

bool contains_pattern(const AccessSequence& seq, std::span<const int> pattern, std::size_t max_length) {
  if (pattern.size() > max_length) {
    throw GuardExceeded("contains_pattern: pattern length " + std::to_string(pattern.size()) +
                        " exceeds guard " + std::to_string(max_length));
  }
  std::vector<int> pat(pattern.begin(), pattern.end());
  if (!AccessSequence(std::max(1, static_cast<int>(pat.size())), pat).is_permutation()) {
    throw std::invalid_argument("contains_pattern: pattern must be a permutation");
  }
  if (pattern.empty()) return true;
  std::vector<std::size_t> chosen;
  return match_pattern(seq.keys(), pattern, chosen, 0);
}

}  // namespace bstlab
