#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace witten {

// Declarative config for one experiment run. Parsed from JSON; CLI flags
// override individual fields. Unknown experiment names or unresolvable
// potential keys fail validation with field-level messages.
struct ExperimentConfig {
  std::string experiment;
  nlohmann::json raw;  // the full (defaulted) document, echoed in manifests

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_file(const std::string& path);
  nlohmann::json to_json() const { return raw; }
};

// Runs the named experiment; writes CSV/JSON outputs plus manifest.json into
// the output directory. Deterministic given the seed. Returns 0 on success.
int run_experiment(const ExperimentConfig& config);

}  // namespace witten
