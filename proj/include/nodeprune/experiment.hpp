#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "nodeprune/data.hpp"
#include "nodeprune/optimizer.hpp"
#include "nodeprune/selection.hpp"
#include "nodeprune/serialize.hpp"

namespace nodeprune {

enum class Mode { kSimulate, kFit, kExperimentSim, kExperimentReal, kReport };

const char* to_string(Mode mode);
Mode mode_from_string(const std::string& name);

struct ExperimentConfig {
  Mode mode = Mode::kExperimentSim;
  int replicates = 20;
  SimSpec sim;
  GridSpec grids;
  TrainConfig train;
  SplitSpec split;
  Index H = 8;
  std::filesystem::path output_dir = "out";
  bool include_erm = false;
  std::uint64_t master_seed = 2024;
  int threads = 1;
  bool full = false;
  std::filesystem::path data_csv;
  std::string target_column = "MEDV";

  void validate() const;
};

/**
 * Built-in presets. Desk scale: d=5, H*=3, H=8, n=2000 for simulations and
 * H=20 over 5 splits for real data. Full scale: 100 replicates of n=5000 with
 * H*=10, H=20, and H=50 over 50 splits with the {0.1, ..., 1} grid and ERM.
 */
ExperimentConfig desk_config(Mode mode);
ExperimentConfig full_config(Mode mode);

/// Preset for `mode` (full when `j["full"]` is true or `full` is set), overlaid with the fields of `j`.
ExperimentConfig config_from_json(const json& j, Mode mode, bool full);
json to_json(const ExperimentConfig& cfg);

/// Seed of replicate r: first output of Philox(master, stream r).
std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t replicate);
/// Initialization seed used by a replicate's fits.
std::uint64_t train_seed(std::uint64_t replicate_seed);

/// Runs job(0..count-1) on `threads` workers; the first exception is rethrown after all workers stop.
void parallel_for(int count, int threads, const std::function<void(int)>& job);

struct SimRow {
  int replicate = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double gl_zeta = 0.0;
  int gl_nodes = 0;
  double gl_aic = 0.0;
  double gl_risk = 0.0;
  double gl_distance = 0.0;
  double agl_lambda = 0.0;
  int agl_nodes = 0;
  double agl_aic = 0.0;
  double agl_risk = 0.0;
  double agl_distance = 0.0;
  bool agl_minimal = false;
};

struct RealRow {
  int split = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double initial_train_err = 0.0;
  double gl_zeta = 0.0;
  int gl_nodes = 0;
  double gl_train_err = 0.0;
  double gl_test_err = 0.0;
  double agl_lambda = 0.0;
  int agl_nodes = 0;
  double agl_train_err = 0.0;
  double agl_test_err = 0.0;
  bool has_erm = false;
  double erm_train_err = 0.0;
  double erm_test_err = 0.0;
};

/// One simulation replicate from its seed; failures land in the row.
SimRow run_sim_replicate(const ExperimentConfig& cfg, int replicate, std::uint64_t seed);
RealRow run_real_split(const ExperimentConfig& cfg, const Dataset& data, int split, std::uint64_t seed);

std::vector<SimRow> run_experiment_sim(const ExperimentConfig& cfg);
std::vector<RealRow> run_experiment_real(const ExperimentConfig& cfg);

void write_sim_csv(const std::filesystem::path& path, const std::vector<SimRow>& rows);
std::vector<SimRow> read_sim_csv(const std::filesystem::path& path);
void write_real_csv(const std::filesystem::path& path, const std::vector<RealRow>& rows);
std::vector<RealRow> read_real_csv(const std::filesystem::path& path);

/// Medians average the two middle values; failed rows are skipped.
double median(std::vector<double> values);
json summarize_sim(const std::vector<SimRow>& rows, Index H_star);
json summarize_real(const std::vector<RealRow>& rows);

/// results.csv, summary.json, config.json and the SVG charts under cfg.output_dir.
void write_sim_outputs(const ExperimentConfig& cfg, const std::vector<SimRow>& rows);
void write_real_outputs(const ExperimentConfig& cfg, const std::vector<RealRow>& rows);

/// Rebuilds summary.json and the charts from an existing output directory.
void regenerate_report(const std::filesystem::path& dir);

/// Dataset written by `simulate` (data.csv, true_params.json).
void write_simulation(const ExperimentConfig& cfg);

/// Two-step fit on `data_csv`, or on the simulated dataset of cfg.sim when no CSV is set.
SelectionResult run_fit(const ExperimentConfig& cfg);

}  // namespace nodeprune
