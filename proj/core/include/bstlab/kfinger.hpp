#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bstlab/search_tree.hpp"

namespace bstlab {

class AccessSequence;

/// One k-finger instruction. Fingers are numbered from 1 in text form and
/// from 0 in memory.
struct Instruction {
  enum class Op { Move, Rotate, Access };
  enum class Dir { Parent, Left, Right };
  Op op = Op::Access;
  int finger = 0;
  Dir dir = Dir::Parent;

  static Instruction move(int finger, Dir dir) { return {Op::Move, finger, dir}; }
  static Instruction rotate(int finger) { return {Op::Rotate, finger, Dir::Parent}; }
  static Instruction access(int finger) { return {Op::Access, finger, Dir::Parent}; }

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

using Trace = std::vector<Instruction>;

/// `M i P|L|R`, `R i`, `A i`, one per line; `#` starts a comment.
std::string format_trace(const Trace& trace);
Trace parse_trace(std::string_view text);
Trace read_trace_file(const std::string& path);
void write_trace_file(const std::string& path, const Trace& trace);

/// A BST with k fingers, all starting at the root. Fingers follow their node
/// through rotations. Cost is one unit per move, rotation and access.
class KFingerMachine {
 public:
  KFingerMachine(SearchTree tree, int k);

  /// Applies one instruction; throws std::invalid_argument when it is
  /// illegal. For an access, `expected` (when given) must be the key under
  /// the finger.
  void step(const Instruction& ins, const std::optional<Key>& expected = std::nullopt);

  const SearchTree& tree() const { return tree_; }
  int k() const { return static_cast<int>(fingers_.size()); }
  const std::vector<int>& fingers() const { return fingers_; }
  int finger_node(int i) const { return fingers_.at(static_cast<std::size_t>(i)); }

  std::int64_t moves() const { return moves_; }
  std::int64_t rotations() const { return rotations_; }
  std::int64_t accesses() const { return accesses_; }
  std::int64_t cost() const { return moves_ + rotations_ + accesses_; }

 private:
  SearchTree tree_;
  std::vector<int> fingers_;
  std::int64_t moves_ = 0;
  std::int64_t rotations_ = 0;
  std::int64_t accesses_ = 0;
};

/// Runs a trace on a fresh machine. When seq is given, the j-th access
/// must land on seq[j] and the trace must declare exactly |seq| accesses.
KFingerMachine run_trace(const SearchTree& tree0, int k, const Trace& trace, const AccessSequence* seq = nullptr);

/// Trace that serves seq with the finger assignment server_of (one entry per
/// access): the finger walks along the tree path to the key, then accesses.
Trace finger_assignment_trace(const SearchTree& tree, const AccessSequence& seq, int k,
                              const std::vector<int>& server_of);

/// Random legal trace of the given length over fingers 1..k; accesses make
/// up roughly a quarter of the instructions, rotations an eighth.
Trace random_trace(const SearchTree& tree0, int k, std::size_t length, std::uint64_t seed);

}  // namespace bstlab
