// Runs every acceptance experiment with its default parameters and prints
// one PASS/FAIL line per criterion.
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "bstlab/lab/experiments.hpp"

namespace {

struct Criterion {
  int id;
  const char* experiment;
  double time_limit;  // seconds; 0 = none
};

const std::vector<Criterion> kCriteria = {
    {1, "ws-oracle", 30},          {2, "so-oracle", 120},           {3, "lfk-oracle", 0},
    {4, "wb-entropy", 0},          {5, "decomposable-lf", 60},      {6, "monotone-kfinger", 0},
    {7, "kfinger-overhead", 120},  {8, "interleave-grid", 0},       {9, "ki-ratio", 0},
    {10, "greedy-validity", 0},    {11, "splay-amortized", 0},      {12, "hierarchy-separation", 300},
    {13, "phase-separation", 0},
};

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 20240601;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  std::cout << "seed " << seed << "\n";
  int failed = 0;
  for (const Criterion& c : kCriteria) {
    const bstlab::lab::ExperimentResult r = bstlab::lab::run_experiment(c.experiment, {}, seed);
    bool ok = r.pass;
    std::string note;
    if (c.time_limit > 0 && r.seconds > c.time_limit) {
      ok = false;
      note = "; over the " + std::to_string(static_cast<int>(c.time_limit)) + " s limit";
    }
    if (!r.failures.empty()) note += "; " + r.failures.front();
    std::cout << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << " (" << c.experiment << ", "
              << std::fixed << std::setprecision(2) << r.seconds << " s" << note << ")\n";
    failed += !ok;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
