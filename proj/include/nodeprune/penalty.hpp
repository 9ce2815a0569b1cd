#pragma once

#include <Eigen/Dense>

#include <string_view>
#include <vector>

#include "nodeprune/network.hpp"

namespace nodeprune {

/// Groups with norm at or below this are treated as zero nodes.
inline constexpr double kDefaultZeroTol = 1e-8;

enum class PenaltyKind { kNone, kGroupLasso, kAdaptiveGroupLasso };

std::string_view to_string(PenaltyKind kind);
PenaltyKind penalty_kind_from_string(std::string_view name);

/**
 * reg * sum_i weights[i] * ||w_i|| over non-frozen groups.
 *
 * Frozen groups are pinned at zero: their adaptive weight would be
 * 1/0^gamma, and the 0/0 = 0 convention makes them contribute nothing.
 */
struct PenaltySpec {
  PenaltyKind kind = PenaltyKind::kNone;
  double reg = 0.0;
  Eigen::VectorXd weights;
  std::vector<bool> frozen;
  double gamma = 2.0;

  static PenaltySpec none(Index hidden);
  static PenaltySpec group_lasso(Index hidden, double reg);
  static PenaltySpec adaptive(double reg, Eigen::VectorXd weights, std::vector<bool> frozen, double gamma);

  Index hidden() const { return weights.size(); }
  /// Throws std::invalid_argument if the invariants do not hold.
  void validate() const;
};

/// ||w_i|| for every node; b2 never contributes.
Eigen::VectorXd group_norms(const NetworkParams& params);

/// Throws std::invalid_argument if a frozen group is nonzero.
double penalty_value(const NetworkParams& params, const PenaltySpec& spec);

struct AdaptiveWeights {
  Eigen::VectorXd weights;
  std::vector<bool> frozen;
};

/// weights[i] = ||w_i^GL||^(-gamma); groups at or below zero_tol are frozen with weight 0.
AdaptiveWeights adaptive_weights(const NetworkParams& gl_params, double gamma, double zero_tol = kDefaultZeroTol);

/// prox of threshold*||.||: shrinks the group toward zero, exactly zero when ||group|| <= threshold.
NodeGroup block_soft_threshold(const NodeGroup& group, double threshold);

/// In-place variant used by the optimizer.
void block_soft_threshold_inplace(Eigen::Ref<Eigen::VectorXd> group, double threshold);

}  // namespace nodeprune
