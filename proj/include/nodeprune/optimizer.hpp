#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nodeprune/network.hpp"
#include "nodeprune/penalty.hpp"

namespace nodeprune {

struct TrainConfig {
  int epochs = 10000;
  double learning_rate = 0.01;
  std::optional<double> box_W;  // l-infinity clip radius
  double rel_tol = 0.0;         // 0 runs every epoch
  std::uint64_t seed = 0;

  void validate() const;
};

/// Consecutive epochs below rel_tol required before stopping early.
inline constexpr int kEarlyStopPatience = 10;

struct FitReport {
  NetworkParams params;
  std::vector<double> objective_trace;  // penalized objective after each epoch
  std::vector<double> risk_trace;
  std::vector<double> penalty_trace;
  double initial_risk = 0.0;
  double final_risk = 0.0;
  double final_penalty = 0.0;
  int nonzero_nodes = 0;
  int epochs_run = 0;
  bool diverged = false;
};

/// Entries i.i.d. N(0, 1/sqrt(d)), i.e. standard deviation d^(-1/4), from stream 0 of `seed`.
NetworkParams random_init(Index hidden, Index input_dim, std::uint64_t seed);

/// Clips every coordinate to [-W, W].
NetworkParams project_linf(const NetworkParams& params, double W);

/**
 * Full-batch proximal gradient descent on R_n(alpha) + penalty(alpha).
 *
 * Each epoch takes a gradient step of size learning_rate, block
 * soft-thresholds every non-frozen group with threshold
 * learning_rate * reg * weights[i], zeroes frozen groups and, when box_W is
 * set, clips onto the l-infinity ball. A non-finite objective stops the run
 * with diverged = true; the report then holds the last finite iterate.
 */
FitReport prox_gradient_fit(const Dataset& data, const NetworkParams& init, const PenaltySpec& spec,
                            const TrainConfig& cfg);

}  // namespace nodeprune
