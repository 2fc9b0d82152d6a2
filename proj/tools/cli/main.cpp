#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bstlab/algorithms.hpp"
#include "bstlab/bounds.hpp"
#include "bstlab/common.hpp"
#include "bstlab/constructions.hpp"
#include "bstlab/greedy.hpp"
#include "bstlab/interleave.hpp"
#include "bstlab/keyindependent.hpp"
#include "bstlab/kfinger.hpp"
#include "bstlab/kserver.hpp"
#include "bstlab/lab/experiments.hpp"
#include "bstlab/sequences.hpp"
#include "bstlab/simulation.hpp"
#include "bstlab/tree_io.hpp"
#include "output.hpp"

using namespace bstlab;
using Json = nlohmann::ordered_json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
};

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t given) {
  if (opt->count()) return given;
  if (const char* env = std::getenv("BSTLAB_SEED")) return std::stoull(env);
  const std::uint64_t seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
  std::cerr << "seed: " << seed << '\n';
  return seed;
}

// `balanced`, `random`, `spine`, `chain` or a tree file.
SearchTree resolve_tree(const std::string& spec, int n, std::uint64_t seed) {
  if (spec == "balanced") return build_balanced(n);
  if (spec == "spine") return build_right_spine(n);
  if (spec == "chain") return build_left_chain(n);
  if (spec == "random") {
    Rng rng(seed);
    return build_random_tree(n, rng);
  }
  return read_tree_file(spec);
}

WeightFunction read_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read weights file " + path);
  std::vector<double> w;
  double x = 0;
  while (in >> x) w.push_back(x);
  if (!in.eof()) throw std::invalid_argument("weights file " + path + " holds a non-number");
  return WeightFunction(std::move(w));
}

void write_weights(const std::string& path, const WeightFunction& w) {
  std::ofstream out(path);
  out.precision(17);
  for (double x : w.values()) out << x << '\n';
}

Partition parse_blocks(const std::string& text) {
  Partition p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw std::invalid_argument("block '" + item + "' is not lo-hi");
    p.push_back({std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1))});
  }
  return p;
}

OnlineAlgorithm parse_algorithm(const std::string& name) {
  if (name == "splay") return OnlineAlgorithm::Splay;
  if (name == "mtr") return OnlineAlgorithm::MoveToRoot;
  if (name == "static") return OnlineAlgorithm::Static;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bstlab: binary search tree bounds, algorithms and simulations"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "file of `key = value` defaults");
  Globals g;
  std::uint64_t seed_arg = 0;
  const CLI::Option* seed_opt =
      app.add_option("--seed", seed_arg, "random seed (default: $BSTLAB_SEED, else a printed random seed)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--out", g.out, "write output here instead of stdout");

  // gen -----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate an access sequence");
  std::string gen_kind;
  int n = 0, k = 0, l = 0, m = 0, big_x = 0, big_y = 0, depth = 0;
  std::string tree_file, template_file;
  std::vector<std::string> part_files;
  gen->add_option("kind", gen_kind, "sequence family")
      ->required()
      ->check(CLI::IsMember({"sequential", "preorder", "tilted-grid", "phase", "compose", "decomposable", "random"}));
  gen->add_option("--n", n, "number of keys");
  gen->add_option("--k", k, "blocks / fingers / arity bound");
  gen->add_option("--l", l, "block length (tilted grid)");
  gen->add_option("--m", m, "length (random)");
  gen->add_option("--X", big_x, "phase length");
  gen->add_option("--Y", big_y, "number of phases");
  gen->add_option("--depth", depth, "inflation depth (decomposable)");
  gen->add_option("--tree", tree_file, "tree file (preorder; default a random tree on --n keys)");
  gen->add_option("--template", template_file, "template sequence file (compose)");
  gen->add_option("--part", part_files, "part sequence files, in template order (compose)");

  // bound ---------------------------------------------------------------
  auto* bound = app.add_subcommand("bound", "evaluate a bound on a sequence");
  std::string bound_kind, seq_file, tree_spec, weights_file, witness_file;
  std::optional<int> finger;
  bound->add_option("kind", bound_kind, "bound")
      ->required()
      ->check(CLI::IsMember({"balance", "entropy", "wb", "wb-opt", "sf", "wsf", "df", "wdf", "ws", "so", "ff",
                             "ff-opt", "lf", "lfk", "ub", "monotone"}));
  bound->add_option("sequence", seq_file, "sequence file")->required();
  bound->add_option("--tree", tree_spec, "balanced | random | spine | chain | tree file");
  bound->add_option("--finger", finger, "finger key");
  bound->add_option("--weights", weights_file, "weights file (one positive number per key)");
  bound->add_option("--k", k, "number of fingers");
  bound->add_option("--witness", witness_file, "write the optimizing tree or weights here");

  // run -----------------------------------------------------------------
  auto* run = app.add_subcommand("run", "run a BST algorithm on a sequence");
  std::string alg, trace_file;
  bool per_access = false, check = false;
  run->add_option("algorithm", alg, "algorithm")->required()->check(CLI::IsMember({"splay", "greedy", "mtr", "static"}));
  run->add_option("sequence", seq_file, "sequence file")->required();
  run->add_option("--tree", tree_spec, "initial tree (default balanced; greedy starts empty unless given)");
  run->add_flag("--per-access", per_access, "include per-access costs");
  run->add_flag("--check", check, "validate the execution (arboral satisfaction for greedy)");
  run->add_option("--trace", trace_file, "write the execution trace here (splay, mtr, static)");

  // simulate-kfinger ------------------------------------------------------
  auto* sim = app.add_subcommand("simulate-kfinger", "simulate a k-finger machine in a single BST");
  std::string source = "random", top = "rebuild";
  std::size_t length = 10000;
  sim->add_option("--k", k, "fingers")->required();
  sim->add_option("--source", source, "random trace, optimal finger trace for --sequence, or --trace file")
      ->check(CLI::IsMember({"random", "optimal", "file"}));
  sim->add_option("--n", n, "keys for built-in trees");
  sim->add_option("--tree", tree_spec, "balanced | random | spine | chain | tree-grid | tree file");
  sim->add_option("--sequence", seq_file, "sequence file (optimal source)");
  sim->add_option("--trace", trace_file, "trace file (file source)");
  sim->add_option("--length", length, "random trace length");
  sim->add_option("--top", top, "top tree maintenance")->check(CLI::IsMember({"rebuild", "incremental"}));
  sim->add_flag("--check", check, "validate the hand and every rotation");
  sim->add_option("--l", l, "block length for --tree tree-grid");

  // compose-run -----------------------------------------------------------
  auto* comp = app.add_subcommand("compose-run", "time-interleaved execution over a key partition");
  std::string blocks, sub_alg = "splay", templ_alg = "splay";
  int width = 0;
  bool eliminate = false;
  comp->add_option("sequence", seq_file, "sequence file")->required();
  comp->add_option("--width", width, "uniform blocks of this many keys");
  comp->add_option("--blocks", blocks, "explicit blocks lo-hi,lo-hi,...");
  comp->add_option("--sub", sub_alg, "algorithm inside blocks")->check(CLI::IsMember({"splay", "mtr", "static"}));
  comp->add_option("--template", templ_alg, "algorithm on the template")->check(CLI::IsMember({"splay", "mtr", "static"}));
  comp->add_flag("--check", check, "validate the composed execution");
  comp->add_flag("--eliminate", eliminate, "also report the cost after removing auxiliary keys");
  comp->add_option("--trace", trace_file, "write the composed execution here");

  // ki ----------------------------------------------------------------------
  auto* ki = app.add_subcommand("ki", "key-independent move-to-root estimate");
  int trials = 200;
  ki->add_option("sequence", seq_file, "sequence file")->required();
  ki->add_option("--trials", trials, "random relabelings");

  // experiment ----------------------------------------------------------------
  auto* exp = app.add_subcommand("experiment", "run a registered experiment ('list' to show them)");
  std::string exp_name;
  lab::Params params;
  exp->add_option("name", exp_name, "experiment name")->required();
  std::map<std::string, std::int64_t> exp_values;
  for (const char* key : {"n", "k", "l", "m", "X", "Y", "trials", "instances", "length", "samples", "sequences",
                          "weights", "trees", "accesses", "exact_trials", "tiny", "max_log_n", "check_n"}) {
    exp->add_option(std::string("--") + key, exp_values[key], std::string("experiment parameter ") + key);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    g.seed = resolve_seed(seed_opt, seed_arg);
    cli::Output out(g.format, g.out);

    if (*gen) {
      AccessSequence seq;
      if (gen_kind == "sequential") {
        seq = gen_sequential(n);
      } else if (gen_kind == "preorder") {
        seq = gen_preorder(tree_file.empty() ? resolve_tree("random", n, g.seed) : read_tree_file(tree_file));
      } else if (gen_kind == "tilted-grid") {
        seq = gen_tilted_grid(k, l);
      } else if (gen_kind == "phase") {
        seq = gen_phase_sequence(n, k, big_x, big_y, g.seed);
      } else if (gen_kind == "decomposable") {
        seq = gen_decomposable(k, depth, g.seed);
      } else if (gen_kind == "random") {
        Rng rng(g.seed);
        std::vector<int> keys;
        for (int j = 0; j < m; ++j) keys.push_back(std::uniform_int_distribution<int>(1, n)(rng));
        seq = AccessSequence(n, keys);
      } else {
        CompositionTemplate ct{read_sequence_file(template_file), {}};
        for (const auto& f : part_files) ct.parts.push_back(read_sequence_file(f));
        seq = compose(ct);
      }
      if (g.out.empty()) {
        std::cout << seq.to_text();
      } else {
        write_sequence_file(g.out, seq);
        std::cerr << Json{{"kind", gen_kind}, {"n", seq.universe()}, {"m", seq.size()}, {"file", g.out}}.dump() << '\n';
      }
      return 0;
    }

    if (*bound) {
      const AccessSequence seq = read_sequence_file(seq_file);
      const int universe = seq.universe();
      auto tree = [&]() { return resolve_tree(tree_spec.empty() ? "balanced" : tree_spec, universe, g.seed); };
      auto need_finger = [&]() {
        if (!finger) throw std::invalid_argument(bound_kind + " needs --finger");
        return *finger;
      };
      auto weights = [&]() {
        if (weights_file.empty()) throw std::invalid_argument(bound_kind + " needs --weights");
        return read_weights(weights_file);
      };
      Json params_json = Json::object();
      BoundValue bv{bound_kind, 0.0, std::nullopt, std::nullopt, std::nullopt};
      if (bound_kind == "balance") {
        bv.value = balance_bound(seq);
      } else if (bound_kind == "entropy") {
        bv.value = entropy_bound(seq);
      } else if (bound_kind == "wb") {
        bv.value = weighted_balance(seq, weights());
      } else if (bound_kind == "wb-opt") {
        bv = weighted_balance_opt(seq);
      } else if (bound_kind == "sf") {
        if (finger) {
          bv.value = static_finger_at(seq, *finger);
        } else {
          bv = static_finger(seq);
        }
      } else if (bound_kind == "wsf") {
        bv.value = weighted_static_finger_at(seq, weights(), need_finger());
      } else if (bound_kind == "df") {
        bv.value = dynamic_finger(seq);
      } else if (bound_kind == "wdf") {
        bv.value = weighted_dynamic_finger(seq, weights());
      } else if (bound_kind == "ws") {
        bv.value = working_set(seq);
      } else if (bound_kind == "so") {
        if (tree_spec.empty()) {
          bv = static_optimality(seq);
        } else {
          bv.value = static_cast<double>(static_optimality_at(seq, tree()));
        }
      } else if (bound_kind == "ff") {
        bv.value = static_cast<double>(fixed_finger_at(seq, tree(), Key(need_finger())));
      } else if (bound_kind == "ff-opt") {
        const bool exact = seq.universe() <= kMaxFixedFingerKeys;
        bv = exact ? fixed_finger_opt(seq) : fixed_finger_upper(seq);
        params_json["exact"] = exact;
      } else if (bound_kind == "lf") {
        if (tree_spec.empty()) {
          bv = lazy_finger_opt(seq);
        } else {
          bv.value = static_cast<double>(lazy_finger_at(seq, tree()));
        }
      } else if (bound_kind == "lfk") {
        if (k < 1) throw std::invalid_argument("lfk needs --k");
        bv.value = static_cast<double>(k_lazy_finger_at(seq, tree(), k));
      } else if (bound_kind == "ub") {
        bv.value = unified_at(seq, tree(), need_finger());
      } else if (bound_kind == "monotone") {
        if (k < 1) throw std::invalid_argument("monotone needs --k");
        const auto st = kfinger_monotone_strategy(seq, tree(), k);
        bv.value = static_cast<double>(st.cost);
        params_json["increasing_runs"] = st.increasing;
        params_json["fingers_used"] = st.fingers_used;
      }
      bv.kind = bound_kind;
      if (!tree_spec.empty()) params_json["tree"] = tree_spec;
      if (finger) params_json["finger"] = *finger;
      if (bv.finger) params_json["optimal_finger"] = *bv.finger;
      if (k) params_json["k"] = k;
      if (!weights_file.empty()) params_json["weights"] = weights_file;
      if (!witness_file.empty()) {
        if (bv.tree) {
          write_tree_file(witness_file, *bv.tree);
        } else if (bv.weights) {
          write_weights(witness_file, *bv.weights);
        } else {
          throw std::invalid_argument(bound_kind + " has no witness to write");
        }
        params_json["witness"] = witness_file;
      }
      out.add(Json{{"kind", bound_kind}, {"value", bv.value}, {"params", params_json}});
      return 0;
    }

    if (*run) {
      const AccessSequence seq = read_sequence_file(seq_file);
      Json row{{"alg", alg}};
      CostLedger ledger;
      if (alg == "greedy") {
        std::optional<SearchTree> t;
        if (!tree_spec.empty()) t = resolve_tree(tree_spec, seq.universe(), g.seed);
        const auto res = greedy_run(seq, t ? &*t : nullptr);
        ledger = res.ledger;
        if (check) row["arborally_satisfied"] = arborally_satisfied(res.points);
      } else {
        const SearchTree t0 = resolve_tree(tree_spec.empty() ? "balanced" : tree_spec, seq.universe(), g.seed);
        SearchTree t = t0;
        ledger = run_online(parse_algorithm(alg), t, seq);
        if (check || !trace_file.empty()) {
          const auto trace = record_execution(parse_algorithm(alg), t0, seq);
          if (check) row["valid_execution"] = check_execution(trace).empty();
          if (!trace_file.empty()) std::ofstream(trace_file) << format_execution(trace);
        }
      }
      row["total"] = ledger.total;
      if (per_access) row["per_access"] = ledger.per_access;
      out.add(row);
      return 0;
    }

    if (*sim) {
      SearchTree tree;
      Trace trace;
      std::optional<AccessSequence> seq;
      std::optional<std::int64_t> lfk;
      if (source == "optimal") {
        if (seq_file.empty()) throw std::invalid_argument("--source optimal needs --sequence");
        seq = read_sequence_file(seq_file);
      }
      const int keys = seq ? seq->universe() : n;
      if (tree_spec == "tree-grid") {
        if (l < 1 || k < 1) throw std::invalid_argument("tree-grid needs --k and --l");
        tree = build_tilted_grid_reference_tree(k, l);
      } else {
        if (keys < 1 && (tree_spec.empty() || tree_spec == "balanced" || tree_spec == "random" ||
                         tree_spec == "spine" || tree_spec == "chain")) {
          throw std::invalid_argument("built-in trees need --n or --sequence");
        }
        tree = resolve_tree(tree_spec.empty() ? "balanced" : tree_spec, keys, g.seed);
      }
      if (source == "random") {
        trace = random_trace(tree, k, length, g.seed);
      } else if (source == "file") {
        trace = read_trace_file(trace_file);
      } else {
        const auto opt = k_server_on_tree(*seq, tree, k);
        lfk = opt.cost;
        trace = finger_assignment_trace(tree, *seq, k, opt.server_of);
      }
      SimulationOptions opts;
      opts.top = top == "rebuild" ? TopMode::Rebuild : TopMode::Incremental;
      opts.check_each_step = check;
      const auto rep = simulate(tree, k, trace, opts, seq ? &*seq : nullptr);
      Json row{{"k", k}, {"n", tree.size()}, {"source", source}, {"top", top}, {"instructions", trace.size()},
               {"machine_cost", rep.machine_cost}, {"machine_moves", rep.machine_moves},
               {"machine_rotations", rep.machine_rotations}, {"accesses", rep.accesses},
               {"simulated_cost", rep.simulated_cost}, {"update_cost", rep.update_cost},
               {"access_cost", rep.access_cost}, {"ratio", rep.ratio}, {"mean_update_cost", rep.mean_update_cost},
               {"update_limit", rep.update_limit}, {"max_pseudofinger_depth", rep.max_pseudofinger_depth},
               {"depth_limit", rep.depth_limit}, {"max_hand_items", rep.max_items},
               {"top_rebuilds", rep.top_rebuilds}};
      if (lfk) row["lfk"] = *lfk;
      out.add(row);
      return 0;
    }

    if (*comp) {
      const AccessSequence seq = read_sequence_file(seq_file);
      Partition partition;
      if (!blocks.empty()) {
        partition = parse_blocks(blocks);
      } else if (width > 0) {
        partition = uniform_partition(seq.universe(), width);
      } else {
        throw std::invalid_argument("compose-run needs --width or --blocks");
      }
      const auto res = composed_execute(seq, partition, parse_algorithm(sub_alg), parse_algorithm(templ_alg), check);
      std::int64_t parts = 0;
      for (auto c : res.part_costs) parts += c;
      Json row{{"parts", res.part_costs}, {"template", res.template_cost}, {"template_portion", res.template_portion},
               {"total", res.total}, {"bound", parts + 3 * res.template_cost}, {"pass", res.bound_holds}};
      if (eliminate) row["eliminated_total"] = eliminate_auxiliary(res.trace).total_cost();
      if (!trace_file.empty()) std::ofstream(trace_file) << format_execution(res.trace);
      out.add(row);
      return 0;
    }

    if (*ki) {
      const AccessSequence seq = read_sequence_file(seq_file);
      const auto rep = ki_ratio_report(seq, trials, g.seed);
      out.add(Json{{"mean", rep.estimate.mean}, {"stderr", rep.estimate.std_error}, {"trials", rep.estimate.trials},
                   {"ws", rep.ws}, {"f_n", rep.f_n}, {"m", rep.m}, {"ratio", rep.ratio}, {"in_band", rep.in_band}});
      return 0;
    }

    if (*exp) {
      if (exp_name == "list") {
        for (const auto& e : lab::experiments()) out.add(Json{{"name", e.name}, {"summary", e.summary}});
        return 0;
      }
      for (const auto& [key, value] : exp_values) {
        if (exp->get_option(std::string("--") + key)->count()) params[key] = value;
      }
      const auto res = lab::run_experiment(exp_name, params, g.seed);
      for (const auto& row : res.rows) out.add(row);
      out.flush();
      Json summary{{"experiment", res.name}, {"pass", res.pass}, {"seconds", res.seconds}};
      if (!res.failures.empty()) summary["failures"] = res.failures;
      std::cerr << summary.dump() << '\n';
      return res.pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
