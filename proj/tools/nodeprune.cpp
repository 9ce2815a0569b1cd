// nodeprune: node-count selection for one-hidden-layer tanh networks.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nodeprune/errors.hpp"
#include "nodeprune/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitAllFailed = 3;

struct Flags {
  std::string config;
  bool full = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> threads;
  std::optional<std::string> data;
  std::optional<std::string> target;
};

std::optional<int> threads_from_env() {
  const char* env = std::getenv("NODEPRUNE_THREADS");
  if (env == nullptr || *env == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const int value = std::stoi(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("NODEPRUNE_THREADS='") + env + "' is not an integer");
  }
}

nodeprune::ExperimentConfig load_config(nodeprune::Mode mode, const Flags& flags) {
  using nodeprune::Mode;
  const nodeprune::json file =
      flags.config.empty() ? nodeprune::json::object() : nodeprune::read_json_file(flags.config);
  nodeprune::ExperimentConfig cfg = nodeprune::config_from_json(file, mode, flags.full);
  if (flags.seed) {
    if (mode == Mode::kSimulate || mode == Mode::kFit) {
      cfg.sim.seed = *flags.seed;
    } else {
      cfg.master_seed = *flags.seed;
    }
  }
  if (flags.out) cfg.output_dir = *flags.out;
  if (flags.data) cfg.data_csv = *flags.data;
  if (flags.target) cfg.target_column = *flags.target;
  if (flags.threads) {
    cfg.threads = *flags.threads;
  } else if (const auto env = threads_from_env()) {
    cfg.threads = *env;
  }
  if (mode != Mode::kReport) cfg.validate();
  return cfg;
}

template <typename Rows>
bool all_failed(const Rows& rows) {
  for (const auto& r : rows) {
    if (r.ok) return false;
  }
  return true;
}

int run(nodeprune::Mode mode, const Flags& flags) {
  using nodeprune::Mode;
  const nodeprune::ExperimentConfig cfg = load_config(mode, flags);
  switch (mode) {
    case Mode::kSimulate:
      nodeprune::write_simulation(cfg);
      std::cout << "wrote " << (cfg.output_dir / "data.csv").string() << '\n';
      return kExitOk;
    case Mode::kFit: {
      const auto result = nodeprune::run_fit(cfg);
      std::cout << "GL zeta=" << result.gl_choice.reg << " nodes=" << result.gl_choice.fit.nonzero_nodes
                << "  AGL lambda=" << result.agl_choice.reg << " nodes=" << result.selected_nodes
                << (result.minimality.minimal ? " (minimal)" : " (not minimal)") << '\n';
      return kExitOk;
    }
    case Mode::kExperimentSim: {
      const auto rows = nodeprune::run_experiment_sim(cfg);
      nodeprune::write_sim_outputs(cfg, rows);
      std::cout << "wrote " << (cfg.output_dir / "results.csv").string() << '\n';
      return all_failed(rows) ? kExitAllFailed : kExitOk;
    }
    case Mode::kExperimentReal: {
      const auto rows = nodeprune::run_experiment_real(cfg);
      nodeprune::write_real_outputs(cfg, rows);
      std::cout << "wrote " << (cfg.output_dir / "results.csv").string() << '\n';
      return all_failed(rows) ? kExitAllFailed : kExitOk;
    }
    case Mode::kReport:
      nodeprune::regenerate_report(cfg.output_dir);
      std::cout << "wrote " << (cfg.output_dir / "summary.json").string() << '\n';
      return kExitOk;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  using nodeprune::Mode;
  CLI::App app{"Select hidden-node counts of tanh networks by Group Lasso / Adaptive Group Lasso pruning"};
  app.require_subcommand(1);
  Flags flags;

  const std::pair<Mode, const char*> commands[] = {
      {Mode::kSimulate, "Draw a synthetic dataset and its teacher network"},
      {Mode::kFit, "Run the two-step fit on one dataset"},
      {Mode::kExperimentSim, "Repeated simulation study"},
      {Mode::kExperimentReal, "Repeated train/test splits of a CSV dataset"},
      {Mode::kReport, "Recompute summary.json and charts from results.csv"},
  };
  std::vector<std::pair<Mode, CLI::App*>> subcommands;
  for (const auto& [mode, help] : commands) {
    CLI::App* sub = app.add_subcommand(nodeprune::to_string(mode), help);
    sub->add_option("--config", flags.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_flag("--full", flags.full, "Start from the full-scale preset");
    sub->add_option("--seed", flags.seed, "Master seed (dataset seed for simulate/fit)");
    sub->add_option("--out", flags.out, "Output directory");
    sub->add_option("--threads", flags.threads, "Worker threads (default: NODEPRUNE_THREADS, then config)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--data", flags.data, "CSV dataset");
    sub->add_option("--target", flags.target, "Target column of the CSV dataset");
    subcommands.emplace_back(mode, sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Mode mode = Mode::kExperimentSim;
  for (const auto& [m, sub] : subcommands) {
    if (sub->parsed()) mode = m;
  }

  try {
    return run(mode, flags);
  } catch (const nodeprune::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const nodeprune::PipelineError& e) {
    std::cerr << "fit failed: " << e.what() << '\n';
    return kExitAllFailed;
  } catch (const nodeprune::json::exception& e) {
    std::cerr << "bad config: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
}
