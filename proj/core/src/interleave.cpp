#include "bstlab/interleave.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "bstlab/constructions.hpp"
#include "bstlab/tree_io.hpp"

namespace bstlab {

std::int64_t ExecutionTrace::total_cost() const {
  std::int64_t total = 0;
  for (const auto& s : steps) total += static_cast<std::int64_t>(s.touched.size());
  return total;
}

std::vector<std::int64_t> ExecutionTrace::costs() const {
  std::vector<std::int64_t> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(static_cast<std::int64_t>(s.touched.size()));
  return out;
}

std::string check_execution(const ExecutionTrace& trace, SearchTree* final_tree) {
  SearchTree t = trace.initial;
  for (std::size_t j = 0; j < trace.steps.size(); ++j) {
    const auto& step = trace.steps[j];
    const std::string at = "step " + std::to_string(j + 1) + ": ";
    if (!t.contains(step.access)) return at + "accessed key " + step.access.to_string() + " is not in the tree";
    std::unordered_set<Key> touched;
    for (const Key& k : step.touched) {
      if (!t.contains(k)) return at + "touched key " + k.to_string() + " is not in the tree";
      if (!touched.insert(k).second) return at + "key " + k.to_string() + " touched twice";
    }
    if (!touched.count(step.access)) return at + "accessed key not touched";
    if (!touched.count(t.key(t.root()))) return at + "root not touched";
    for (const Key& k : step.touched) {
      const int p = t.node(t.at(k)).parent;
      if (p != SearchTree::kNil && !touched.count(t.key(p))) {
        return at + "touched set is not connected at " + k.to_string();
      }
    }
    for (const Key& r : step.rotations) {
      if (!touched.count(r)) return at + "rotation of untouched key " + r.to_string();
      const int id = t.at(r);
      const int p = t.node(id).parent;
      if (p == SearchTree::kNil) return at + "rotation of the root " + r.to_string();
      if (!touched.count(t.key(p))) return at + "rotation below an untouched parent";
      t.rotate(id);
    }
  }
  if (final_tree) *final_tree = std::move(t);
  return {};
}

ExecutionTrace record_execution(OnlineAlgorithm alg, const SearchTree& tree0, std::span<const Key> accesses) {
  ExecutionTrace trace{tree0, {}};
  SearchTree t = tree0;
  trace.steps.reserve(accesses.size());
  for (const Key& key : accesses) {
    const int x = t.at(key);
    ExecutionStep step{key, {}, {}};
    for (int cur = x; cur != SearchTree::kNil; cur = t.node(cur).parent) step.touched.push_back(t.key(cur));
    std::reverse(step.touched.begin(), step.touched.end());
    switch (alg) {
      case OnlineAlgorithm::Splay: {
        // Splaying only needs the x-to-root path, so track rotations on t.
        while (t.node(x).parent != SearchTree::kNil) {
          const int p = t.node(x).parent;
          const int g = t.node(p).parent;
          if (g != SearchTree::kNil && (t.node(p).left == x) == (t.node(g).left == p)) {
            step.rotations.push_back(t.key(p));
            t.rotate(p);
          }
          step.rotations.push_back(key);
          t.rotate(x);
          if (g != SearchTree::kNil && t.node(x).parent == g) {
            step.rotations.push_back(key);
            t.rotate(x);
          }
        }
        break;
      }
      case OnlineAlgorithm::MoveToRoot:
        while (t.node(x).parent != SearchTree::kNil) {
          step.rotations.push_back(key);
          t.rotate(x);
        }
        break;
      case OnlineAlgorithm::Static:
        break;
    }
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

ExecutionTrace record_execution(OnlineAlgorithm alg, const SearchTree& tree0, const AccessSequence& seq) {
  std::vector<Key> keys(seq.begin(), seq.end());
  return record_execution(alg, tree0, keys);
}

namespace {

// Tree in which every template node x becomes lo(x) (in x's place) with
// right child hi(x), whose left child is the subtree hung by `hang`.
struct Gadgets {
  std::function<Key(const Key&)> lo;
  std::function<Key(const Key&)> hi;
  std::function<void(SearchTree&, const Key&, int)> hang;  ///< attaches below the hi node
};

SearchTree gadget_tree(const SearchTree& templ, const Gadgets& g) {
  SearchTree out;
  if (templ.empty()) return out;
  struct Item {
    int id;
    int parent;
    bool left;
  };
  std::vector<Item> stack{{templ.root(), SearchTree::kNil, false}};
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    const Key& x = templ.key(it.id);
    const int lo = out.add_node(g.lo(x));
    const int hi = out.add_node(g.hi(x));
    if (it.parent == SearchTree::kNil) {
      out.set_root(lo);
    } else if (it.left) {
      out.attach_left(it.parent, lo);
    } else {
      out.attach_right(it.parent, lo);
    }
    out.attach_right(lo, hi);
    g.hang(out, x, hi);
    const auto& nd = templ.node(it.id);
    if (nd.left != SearchTree::kNil) stack.push_back({nd.left, lo, true});
    if (nd.right != SearchTree::kNil) stack.push_back({nd.right, hi, false});
  }
  return out;
}

// Copies `src` as the left subtree of `host` in `dst`.
void graft_left(SearchTree& dst, int host, const SearchTree& src) {
  if (src.empty()) return;
  std::vector<std::pair<int, std::pair<int, bool>>> stack{{src.root(), {host, true}}};
  while (!stack.empty()) {
    const auto [id, where] = stack.back();
    stack.pop_back();
    const int copy = dst.add_node(src.key(id));
    if (where.second) {
      dst.attach_left(where.first, copy);
    } else {
      dst.attach_right(where.first, copy);
    }
    const auto& nd = src.node(id);
    if (nd.left != SearchTree::kNil) stack.push_back({nd.left, {copy, true}});
    if (nd.right != SearchTree::kNil) stack.push_back({nd.right, {copy, false}});
  }
}

// Maps a template step onto the gadget tree: touched gadgets, then the
// rotations that keep every gadget intact. `templ` is advanced past the step.
void map_template_step(SearchTree& templ, const ExecutionStep& step, const Gadgets& g, ExecutionStep& out) {
  for (const Key& v : step.touched) {
    out.touched.push_back(g.lo(v));
    out.touched.push_back(g.hi(v));
  }
  for (const Key& r : step.rotations) {
    const int x = templ.at(r);
    const int p = templ.node(x).parent;
    if (templ.node(p).left == x) {
      out.rotations.insert(out.rotations.end(), {g.hi(r), g.hi(r), g.lo(r)});
    } else {
      out.rotations.insert(out.rotations.end(), {g.lo(r), g.lo(r)});
    }
    templ.rotate(x);
  }
}

}  // namespace

ExecutionTrace leaves_tripling(const ExecutionTrace& trace) {
  for (const Key& k : trace.initial.inorder_keys()) {
    if (!k.is_integer()) throw std::invalid_argument("leaves_tripling needs integer keys");
  }
  Gadgets g{
      [](const Key& x) { return Key(3 * x.num() - 1, 3); },
      [](const Key& x) { return Key(3 * x.num() + 1, 3); },
      [](SearchTree& t, const Key& x, int hi) { t.attach_left(hi, t.add_node(x)); },
  };
  ExecutionTrace out{gadget_tree(trace.initial, g), {}};
  SearchTree templ = trace.initial;
  for (const auto& step : trace.steps) {
    ExecutionStep s{step.access, {}, {}};
    map_template_step(templ, step, g, s);
    s.touched.push_back(step.access);
    out.steps.push_back(std::move(s));
  }
  return out;
}

ComposedRun composed_execute(const AccessSequence& seq, const Partition& partition, OnlineAlgorithm sub,
                             OnlineAlgorithm templ_alg, bool check) {
  require_partition(partition, seq.universe());
  const CompositionTemplate ct = decompose(seq, partition);
  const int k = static_cast<int>(partition.size());

  ComposedRun run;
  std::vector<ExecutionTrace> parts;
  for (int i = 0; i < k; ++i) {
    const Interval& iv = partition[static_cast<std::size_t>(i)];
    std::vector<Key> block;
    for (int key = iv.lo; key <= iv.hi; ++key) block.emplace_back(key);
    std::vector<Key> accesses;
    for (int key : ct.parts[static_cast<std::size_t>(i)]) accesses.emplace_back(key + iv.lo - 1);
    parts.push_back(record_execution(sub, build_balanced(block), accesses));
    run.part_costs.push_back(parts.back().total_cost());
  }
  const ExecutionTrace templ_trace = record_execution(templ_alg, build_balanced(k), ct.pattern);
  run.template_cost = templ_trace.total_cost();

  Gadgets g{
      [&](const Key& x) { return Key(3 * static_cast<std::int64_t>(partition[static_cast<std::size_t>(x.num() - 1)].lo) - 1, 3); },
      [&](const Key& x) { return Key(3 * static_cast<std::int64_t>(partition[static_cast<std::size_t>(x.num() - 1)].hi) + 1, 3); },
      [&](SearchTree& t, const Key& x, int hi) {
        graft_left(t, hi, parts[static_cast<std::size_t>(x.num() - 1)].initial);
      },
  };
  run.trace.initial = gadget_tree(templ_trace.initial, g);
  SearchTree templ = templ_trace.initial;
  std::vector<std::size_t> next(static_cast<std::size_t>(k), 0);
  for (std::size_t j = 0; j < seq.size(); ++j) {
    const auto& tstep = templ_trace.steps[j];
    const auto b = static_cast<std::size_t>(tstep.access.num() - 1);
    const auto& pstep = parts[b].steps[next[b]++];
    ExecutionStep s{pstep.access, {}, {}};
    map_template_step(templ, tstep, g, s);
    run.template_portion += static_cast<std::int64_t>(s.touched.size());
    s.touched.insert(s.touched.end(), pstep.touched.begin(), pstep.touched.end());
    s.rotations.insert(s.rotations.end(), pstep.rotations.begin(), pstep.rotations.end());
    run.total += static_cast<std::int64_t>(s.touched.size());
    run.trace.steps.push_back(std::move(s));
  }
  std::int64_t part_sum = 0;
  for (auto c : run.part_costs) part_sum += c;
  run.bound_holds = run.total <= part_sum + 3 * run.template_cost && run.total == part_sum + run.template_portion;
  if (!run.bound_holds) throw std::logic_error("composed execution exceeds the interleaving bound");
  if (check) {
    const std::string why = check_execution(run.trace);
    if (!why.empty()) throw std::logic_error("composed execution is not a valid BST execution: " + why);
  }
  return run;
}

namespace {

// Contraction of a tree with auxiliary keys onto its real keys.
class Contraction {
 public:
  explicit Contraction(const SearchTree& tree) {
    const auto keys = tree.inorder_keys();
    std::optional<Key> last_real;
    std::vector<Key> pending;
    for (const Key& k : keys) {
      if (k.is_integer()) {
        for (const Key& a : pending) label_[a] = k;
        pending.clear();
        label_[k] = k;
        last_real = k;
        reals_.push_back(k);
      } else if (last_real) {
        label_[k] = *last_real;
      } else {
        pending.push_back(k);
      }
    }
    if (reals_.empty()) throw std::invalid_argument("eliminate_auxiliary: no integer keys");
  }

  const Key& label(const Key& k) const { return label_.at(k); }
  const std::vector<Key>& reals() const { return reals_; }

  /// Links of the contracted tree, indexed by the node ids of `out`.
  Links contract(const SearchTree& a, const SearchTree& out) const {
    Links l = out.links();
    for (const Key& r : reals_) {
      const auto u = static_cast<std::size_t>(out.at(r));
      l.parent[u] = l.left[u] = l.right[u] = SearchTree::kNil;
    }
    // Survivor of each label: its shallowest member (ties cannot occur).
    std::unordered_map<Key, std::pair<int, int>> best;  // label -> (depth, node)
    std::vector<std::pair<int, int>> stack{{a.root(), 0}};
    while (!stack.empty()) {
      const auto [id, d] = stack.back();
      stack.pop_back();
      const Key& lab = label_.at(a.key(id));
      auto it = best.find(lab);
      if (it == best.end() || d < it->second.first) best[lab] = {d, id};
      const auto& nd = a.node(id);
      if (nd.left != SearchTree::kNil) stack.push_back({nd.left, d + 1});
      if (nd.right != SearchTree::kNil) stack.push_back({nd.right, d + 1});
    }
    std::vector<std::pair<int, int>> walk{{a.root(), SearchTree::kNil}};  // (node, nearest surviving ancestor label id in out)
    l.root = out.at(label_.at(a.key(a.root())));
    while (!walk.empty()) {
      const auto [id, up] = walk.back();
      walk.pop_back();
      const Key& lab = label_.at(a.key(id));
      int here = up;
      if (best.at(lab).second == id) {
        here = out.at(lab);
        if (up != SearchTree::kNil) {
          l.parent[static_cast<std::size_t>(here)] = up;
          (lab < out.key(up) ? l.left : l.right)[static_cast<std::size_t>(up)] = here;
        }
      }
      const auto& nd = a.node(id);
      if (nd.left != SearchTree::kNil) walk.push_back({nd.left, here});
      if (nd.right != SearchTree::kNil) walk.push_back({nd.right, here});
    }
    return l;
  }

 private:
  std::unordered_map<Key, Key> label_;
  std::vector<Key> reals_;
};

}  // namespace

ExecutionTrace eliminate_auxiliary(const ExecutionTrace& trace) {
  const Contraction c(trace.initial);
  SearchTree out;
  for (const Key& r : c.reals()) out.add_node(r);
  out.assign_links(c.contract(trace.initial, out));

  ExecutionTrace result{out, {}};
  SearchTree a = trace.initial;
  for (const auto& step : trace.steps) {
    if (!step.access.is_integer()) {
      throw std::invalid_argument("auxiliary key " + step.access.to_string() + " is accessed");
    }
    ExecutionStep s{step.access, {}, {}};
    std::unordered_set<Key> seen;
    std::vector<int> region;
    for (const Key& k : step.touched) {
      const Key& lab = c.label(k);
      if (seen.insert(lab).second) {
        s.touched.push_back(lab);
        region.push_back(out.at(lab));
      }
    }
    if (s.touched.size() > step.touched.size()) throw std::logic_error("elimination increased an access cost");
    if (out.depth(step.access) > a.depth(step.access)) {
      throw std::logic_error("elimination deepened the search path of " + step.access.to_string());
    }
    for (const Key& r : step.rotations) a.rotate(a.at(r));
    const auto res = restructure_within(out, c.contract(a, out), region);
    for (int id : res.rotations) s.rotations.push_back(out.key(id));
    result.steps.push_back(std::move(s));
  }
  return result;
}

std::string format_execution(const ExecutionTrace& trace) {
  std::ostringstream os;
  os << format_tree(trace.initial) << '\n';
  for (const auto& s : trace.steps) {
    os << s.access.to_string() << " |";
    for (const Key& k : s.touched) os << ' ' << k.to_string();
    os << " |";
    for (const Key& k : s.rotations) os << ' ' << k.to_string();
    os << '\n';
  }
  return os.str();
}

ExecutionTrace parse_execution(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("execution text is empty");
  ExecutionTrace trace{parse_tree(line), {}};
  auto keys_of = [](const std::string& field) {
    std::vector<Key> out;
    std::istringstream fs(field);
    std::string tok;
    while (fs >> tok) {
      auto k = Key::parse(tok);
      if (!k) throw std::invalid_argument("bad key '" + tok + "' in execution text");
      out.push_back(*k);
    }
    return out;
  };
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto p1 = line.find('|');
    const auto p2 = p1 == std::string::npos ? p1 : line.find('|', p1 + 1);
    if (p2 == std::string::npos) throw std::invalid_argument("execution line needs two '|' separators");
    const auto access = keys_of(line.substr(0, p1));
    if (access.size() != 1) throw std::invalid_argument("execution line needs exactly one accessed key");
    trace.steps.push_back({access[0], keys_of(line.substr(p1 + 1, p2 - p1 - 1)), keys_of(line.substr(p2 + 1))});
  }
  return trace;
}

}  // namespace bstlab
