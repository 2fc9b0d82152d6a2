#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace bstlab::lab {

using Params = std::map<std::string, std::int64_t>;
using Row = nlohmann::ordered_json;

struct ExperimentResult {
  std::string name;
  std::vector<Row> rows;
  bool pass = true;
  std::vector<std::string> failures;
  double seconds = 0;

  /// Records a failed assertion (keeps running so every row is reported).
  void expect(bool ok, const std::string& what);
};

struct Experiment {
  std::string name;
  std::string summary;
  std::function<void(const Params&, std::uint64_t, ExperimentResult&)> run;
};

const std::vector<Experiment>& experiments();

/// Runs a registered experiment; throws std::invalid_argument listing the
/// registered names when `name` is unknown. Exceptions thrown by the
/// experiment body are recorded as failures.
ExperimentResult run_experiment(const std::string& name, const Params& params, std::uint64_t seed);

std::int64_t param(const Params& params, const std::string& key, std::int64_t fallback);

}  // namespace bstlab::lab
