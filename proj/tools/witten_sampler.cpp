// Experiment runner: witten-sampler <experiment> --config <path> [overrides]
// Exit 0 on success; nonzero with the failing stage on stderr.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <nlohmann/json.hpp>

#include "witten/experiments.hpp"
#include "witten/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Witten-Laplacian Gibbs sampling toolkit"};
  std::string experiment, config_path, out_override;
  std::vector<double> beta_override;
  long long seed_override = -1;
  bool resume = false;

  app.add_option("experiment", experiment,
                 "one of gap-scan | mb-compare | lindblad-warmstart | "
                 "filter-design | sample | weak-convergence")
      ->required();
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--beta", beta_override, "override the beta list");
  app.add_option("--seed", seed_override, "override the seed");
  app.add_option("--out", out_override, "override the output directory");
  app.add_flag("--resume", resume, "reuse per-beta checkpoints if present");

  CLI11_PARSE(app, argc, argv);

  if (const char* env = std::getenv("WITTEN_SAMPLER_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) witten::set_max_threads(n);
  }

  try {
    nlohmann::json j;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::invalid_argument("cannot open " + config_path);
      in >> j;
    }
    j["experiment"] = experiment;
    if (!beta_override.empty()) j["beta"] = beta_override;
    if (seed_override >= 0) j["seed"] = seed_override;
    if (!out_override.empty()) j["out"] = out_override;
    if (resume) j["resume"] = true;

    witten::ExperimentConfig cfg = witten::ExperimentConfig::from_json(j);
    return witten::run_experiment(cfg);
  } catch (const std::exception& e) {
    std::cerr << "stage " << experiment << " failed: " << e.what() << "\n";
    return 1;
  }
}
