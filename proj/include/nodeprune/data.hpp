#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nodeprune/network.hpp"
#include "nodeprune/random.hpp"

namespace nodeprune {

/// Teacher-network simulation: Y = f_true(X) + N(0, sigma2) noise.
struct SimSpec {
  Index d = 5;
  Index H_star = 10;
  Index n = 5000;
  double sigma2 = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SimulatedData {
  Dataset data;
  NetworkParams true_params;
  int rejected_draws = 0;  // teacher draws discarded as non-minimal
};

/**
 * Teacher parameters come from stream 0 of `seed` (redrawn until minimal),
 * inputs from stream 1, noise from stream 2. All draws are standard normal;
 * X is filled row by row.
 */
SimulatedData simulate_dataset(const SimSpec& spec);

struct LabeledDataset {
  Dataset data;
  std::vector<std::string> feature_names;
  std::string target_name;
};

/// Numeric CSV with a header row; every non-target column becomes a feature, in file order.
LabeledDataset load_csv(const std::filesystem::path& path, const std::string& target_column);

/// Writes features then target with a header row, full round-trip precision.
void write_csv(const std::filesystem::path& path, const Dataset& data, const std::vector<std::string>& feature_names,
               const std::string& target_name);

struct SplitSpec {
  double test_fraction = 0.25;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Affine maps fitted on the training split.
struct StandardizeTransform {
  Eigen::VectorXd feature_mean;
  Eigen::VectorXd feature_scale;
  double target_mean = 0.0;
  double target_scale = 1.0;

  Eigen::MatrixXd features(const Eigen::MatrixXd& x) const;
  Eigen::VectorXd target(const Eigen::VectorXd& y) const;
  Eigen::VectorXd restore_target(const Eigen::VectorXd& y_std) const;
};

struct SplitResult {
  Dataset train;
  Dataset test;
  StandardizeTransform transform;
  std::vector<Index> train_rows;
  std::vector<Index> test_rows;
  std::vector<std::string> warnings;
};

/**
 * Random split with floor(test_fraction * n) test rows, then standardization
 * of features and target with training-split mean and population standard
 * deviation. A constant training column keeps scale 1 and adds a warning.
 */
SplitResult split_standardize(const Dataset& data, const SplitSpec& spec);

/// Unbiased integer in [0, bound).
std::uint64_t uniform_index(Philox4x32& rng, std::uint64_t bound);

}  // namespace nodeprune
