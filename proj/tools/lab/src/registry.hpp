#pragma once

#include <vector>

#include "bstlab/common.hpp"
#include "bstlab/lab/experiments.hpp"
#include "bstlab/sequences.hpp"

namespace bstlab::lab {

void register_core(std::vector<Experiment>& out);
void register_fingers(std::vector<Experiment>& out);
void register_structures(std::vector<Experiment>& out);

std::vector<int> int_list(const Params& params, const std::string& key, std::vector<int> fallback);
int uniform_int(Rng& rng, int lo, int hi);
AccessSequence random_sequence(int n, int m, Rng& rng);

}  // namespace bstlab::lab
