#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bstlab/common.hpp"

namespace bstlab {

class SearchTree;

/// A finite sequence of keys from the universe [1, n].
class AccessSequence {
 public:
  AccessSequence() = default;
  /// Throws std::invalid_argument if n < 1 or a key lies outside [1, n].
  AccessSequence(int n, std::vector<int> keys);

  int universe() const { return n_; }
  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  const std::vector<int>& keys() const { return keys_; }
  int operator[](std::size_t i) const { return keys_[i]; }
  auto begin() const { return keys_.begin(); }
  auto end() const { return keys_.end(); }

  /// Access counts m_i indexed by key (index 0 unused).
  std::vector<std::int64_t> frequencies() const;
  bool is_permutation() const;

  /// `n m` on the first line, the m keys on the second.
  std::string to_text() const;
  static AccessSequence parse(std::string_view text);

  friend bool operator==(const AccessSequence&, const AccessSequence&) = default;

 private:
  int n_ = 1;
  std::vector<int> keys_;
};

AccessSequence read_sequence_file(const std::string& path);
void write_sequence_file(const std::string& path, const AccessSequence& seq);

/// Throws std::invalid_argument unless seq is a nonempty sequence.
void require_nonempty(const AccessSequence& seq);
/// Throws std::invalid_argument unless seq is a permutation of [n].
void require_permutation(const AccessSequence& seq);

// ---------------------------------------------------------------------------
// Generators

AccessSequence gen_sequential(int n);

/// Preorder key sequence of a tree whose keys are exactly [n].
AccessSequence gen_preorder(const SearchTree& tree);

/// Tilted k-by-l grid: blocks [l(i-1)+1, l*i], visited column by column
/// (1, l+1, ..., l(k-1)+1, 2, l+2, ...).
AccessSequence gen_tilted_grid(int k, int l);

/// Y phases; each phase draws 2k distinct keys uniformly from [n], orders them
/// increasingly and repeats that block X/(2k) times.
AccessSequence gen_phase_sequence(int n, int k, int X, int Y, std::uint64_t seed);

/// Random k-decomposable permutation built by recursive inflation of
/// skeletons of arity <= k, `depth` levels deep.
AccessSequence gen_decomposable(int k, int depth, std::uint64_t seed);

/// Uniformly random simple permutation of the given length (length 2 or >= 4).
std::vector<int> random_simple_permutation(int length, Rng& rng);

// ---------------------------------------------------------------------------
// Composition

struct CompositionTemplate {
  AccessSequence pattern;  ///< template over [l]
  std::vector<AccessSequence> parts;  ///< part i has universe n_i
};

/// Composed sequence S_t = X^(template_t)_(sigma(t)) + N_t, where N_t is the
/// total universe size of the parts before part template_t.
AccessSequence compose(const CompositionTemplate& ct);

struct Interval {
  int lo = 1;
  int hi = 1;
  friend bool operator==(const Interval&, const Interval&) = default;
};
using Partition = std::vector<Interval>;

void require_partition(const Partition& partition, int n);

/// Restrictions to each interval (re-based to 1) and the template over [k].
/// Parts may be empty when an interval is never accessed.
CompositionTemplate decompose(const AccessSequence& seq, const Partition& partition);

/// Blocks of `width` consecutive keys covering [n] (the last may be shorter).
Partition uniform_partition(int n, int width);

// ---------------------------------------------------------------------------
// Pattern parameters

std::size_t longest_increasing(std::span<const int> seq);
std::size_t longest_decreasing(std::span<const int> seq);

/// Smallest m >= 2 such that seq avoids (1..m) or (m..1).
int monotone_parameter(const AccessSequence& seq);

bool is_simple_permutation(std::span<const int> perm);

/// Node of the substitution-decomposition tree. Positions are 0-based,
/// half-open; values are the closed range [low, high].
struct BlockNode {
  enum class Kind { Leaf, Sum, Skew, Prime };
  Kind kind = Kind::Leaf;
  std::size_t begin = 0;
  std::size_t end = 0;
  int low = 0;
  int high = 0;
  std::vector<std::size_t> children;  ///< node indices, in position order
};

struct BlockDecomposition {
  std::vector<BlockNode> nodes;
  std::size_t root = 0;
};

/// Canonical substitution decomposition: linear (sum/skew) nodes carry their
/// maximal chain of components, prime nodes their maximal proper blocks.
BlockDecomposition decompose_blocks(const AccessSequence& perm);

/// Largest prime-node arity, with linear nodes counted as arity 2 and a floor
/// of 2.
int decomposability_parameter(const AccessSequence& perm);

inline constexpr std::size_t kMaxPatternLength = 6;

/// Whether some subsequence of seq is order-isomorphic to pattern. Exponential
/// in |pattern|; guarded by max_length.
bool contains_pattern(const AccessSequence& seq, std::span<const int> pattern,
                      std::size_t max_length = kMaxPatternLength);

}  // namespace bstlab
