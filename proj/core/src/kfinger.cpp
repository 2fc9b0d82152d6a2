#include "bstlab/kfinger.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bstlab/common.hpp"
#include "bstlab/sequences.hpp"

namespace bstlab {

std::string format_trace(const Trace& trace) {
  std::string out;
  for (const auto& ins : trace) {
    const std::string f = std::to_string(ins.finger + 1);
    switch (ins.op) {
      case Instruction::Op::Move: {
        const char d = ins.dir == Instruction::Dir::Parent ? 'P' : ins.dir == Instruction::Dir::Left ? 'L' : 'R';
        out += "M " + f + " " + d + "\n";
        break;
      }
      case Instruction::Op::Rotate:
        out += "R " + f + "\n";
        break;
      case Instruction::Op::Access:
        out += "A " + f + "\n";
        break;
    }
  }
  return out;
}

Trace parse_trace(std::string_view text) {
  Trace trace;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;
    auto bad = [&](const std::string& why) {
      return std::invalid_argument("trace line " + std::to_string(lineno) + ": " + why);
    };
    int finger = 0;
    if (!(ls >> finger) || finger < 1) throw bad("expected a finger number >= 1");
    Instruction ins;
    ins.finger = finger - 1;
    if (op == "M") {
      std::string d;
      if (!(ls >> d)) throw bad("move needs a direction");
      ins.op = Instruction::Op::Move;
      if (d == "P") {
        ins.dir = Instruction::Dir::Parent;
      } else if (d == "L") {
        ins.dir = Instruction::Dir::Left;
      } else if (d == "R") {
        ins.dir = Instruction::Dir::Right;
      } else {
        throw bad("direction must be P, L or R");
      }
    } else if (op == "R") {
      ins.op = Instruction::Op::Rotate;
    } else if (op == "A") {
      ins.op = Instruction::Op::Access;
    } else {
      throw bad("unknown instruction '" + op + "'");
    }
    std::string extra;
    if (ls >> extra) throw bad("trailing text");
    trace.push_back(ins);
  }
  return trace;
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_trace(ss.str());
}

void write_trace_file(const std::string& path, const Trace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file " + path);
  out << format_trace(trace);
}

KFingerMachine::KFingerMachine(SearchTree tree, int k) : tree_(std::move(tree)) {
  if (k < 1) throw std::invalid_argument("k-finger machine needs k >= 1");
  if (tree_.empty()) throw std::invalid_argument("k-finger machine needs a nonempty tree");
  fingers_.assign(static_cast<std::size_t>(k), tree_.root());
}

void KFingerMachine::step(const Instruction& ins, const std::optional<Key>& expected) {
  if (ins.finger < 0 || ins.finger >= k()) {
    throw std::invalid_argument("finger " + std::to_string(ins.finger + 1) + " out of range");
  }
  int& f = fingers_[static_cast<std::size_t>(ins.finger)];
  const auto& nd = tree_.node(f);
  switch (ins.op) {
    case Instruction::Op::Move: {
      const int next = ins.dir == Instruction::Dir::Parent ? nd.parent
                       : ins.dir == Instruction::Dir::Left ? nd.left
                                                            : nd.right;
      if (next == SearchTree::kNil) {
        throw std::invalid_argument("illegal move of finger " + std::to_string(ins.finger + 1) + " at key " +
                                    nd.key.to_string());
      }
      f = next;
      ++moves_;
      break;
    }
    case Instruction::Op::Rotate:
      if (nd.parent == SearchTree::kNil) {
        throw std::invalid_argument("finger " + std::to_string(ins.finger + 1) + " sits on the root; cannot rotate");
      }
      tree_.rotate(f);
      ++rotations_;
      break;
    case Instruction::Op::Access:
      if (expected && nd.key != *expected) {
        throw std::invalid_argument("access declared at key " + nd.key.to_string() + " but " +
                                    expected->to_string() + " was requested");
      }
      ++accesses_;
      break;
  }
}

KFingerMachine run_trace(const SearchTree& tree0, int k, const Trace& trace, const AccessSequence* seq) {
  KFingerMachine machine(tree0, k);
  std::size_t next = 0;
  for (const auto& ins : trace) {
    std::optional<Key> expected;
    if (seq && ins.op == Instruction::Op::Access) {
      if (next >= seq->size()) throw std::invalid_argument("trace declares more accesses than the sequence holds");
      expected = Key((*seq)[next++]);
    }
    machine.step(ins, expected);
  }
  if (seq && next != seq->size()) throw std::invalid_argument("trace declares fewer accesses than the sequence holds");
  return machine;
}

Trace finger_assignment_trace(const SearchTree& tree, const AccessSequence& seq, int k,
                              const std::vector<int>& server_of) {
  if (server_of.size() != seq.size()) throw std::invalid_argument("assignment length differs from the sequence");
  std::vector<int> at(static_cast<std::size_t>(k), tree.root());
  Trace trace;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    const int f = server_of[j];
    if (f < 0 || f >= k) throw std::invalid_argument("assignment uses a finger outside [1, k]");
    int& cur = at[static_cast<std::size_t>(f)];
    const int target = tree.at(seq[j]);
    const int meet = tree.lca_of(cur, target);
    while (cur != meet) {
      trace.push_back(Instruction::move(f, Instruction::Dir::Parent));
      cur = tree.node(cur).parent;
    }
    std::vector<Instruction::Dir> down;
    for (int x = target; x != meet; x = tree.node(x).parent) {
      const int p = tree.node(x).parent;
      down.push_back(tree.node(p).left == x ? Instruction::Dir::Left : Instruction::Dir::Right);
    }
    for (auto it = down.rbegin(); it != down.rend(); ++it) trace.push_back(Instruction::move(f, *it));
    cur = target;
    trace.push_back(Instruction::access(f));
  }
  return trace;
}

Trace random_trace(const SearchTree& tree0, int k, std::size_t length, std::uint64_t seed) {
  KFingerMachine machine(tree0, k);
  Rng rng(seed);
  Trace trace;
  std::uniform_int_distribution<int> pick_finger(0, k - 1);
  std::uniform_int_distribution<int> pick_op(0, 7);
  std::uniform_int_distribution<int> pick_dir(0, 2);
  while (trace.size() < length) {
    const int f = pick_finger(rng);
    const int op = pick_op(rng);
    const auto& nd = machine.tree().node(machine.finger_node(f));
    Instruction ins;
    if (op < 2) {
      ins = Instruction::access(f);
    } else if (op == 2) {
      if (nd.parent == SearchTree::kNil) continue;
      ins = Instruction::rotate(f);
    } else {
      const auto dir = static_cast<Instruction::Dir>(pick_dir(rng));
      const int next = dir == Instruction::Dir::Parent ? nd.parent
                       : dir == Instruction::Dir::Left ? nd.left
                                                       : nd.right;
      if (next == SearchTree::kNil) continue;
      ins = Instruction::move(f, dir);
    }
    machine.step(ins);
    trace.push_back(ins);
  }
  return trace;
}

}  // namespace bstlab
