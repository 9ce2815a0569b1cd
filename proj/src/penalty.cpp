#include "nodeprune/penalty.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nodeprune/errors.hpp"

namespace nodeprune {

std::string_view to_string(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::kNone:
      return "none";
    case PenaltyKind::kGroupLasso:
      return "group_lasso";
    case PenaltyKind::kAdaptiveGroupLasso:
      return "adaptive_group_lasso";
  }
  return "none";
}

PenaltyKind penalty_kind_from_string(std::string_view name) {
  if (name == "none") return PenaltyKind::kNone;
  if (name == "group_lasso") return PenaltyKind::kGroupLasso;
  if (name == "adaptive_group_lasso") return PenaltyKind::kAdaptiveGroupLasso;
  throw std::invalid_argument("unknown penalty kind '" + std::string(name) + "'");
}

PenaltySpec PenaltySpec::none(Index hidden) {
  return PenaltySpec{PenaltyKind::kNone, 0.0, Eigen::VectorXd::Ones(hidden),
                     std::vector<bool>(static_cast<std::size_t>(hidden), false), 2.0};
}

PenaltySpec PenaltySpec::group_lasso(Index hidden, double reg) {
  PenaltySpec spec = none(hidden);
  spec.kind = PenaltyKind::kGroupLasso;
  spec.reg = reg;
  spec.validate();
  return spec;
}

PenaltySpec PenaltySpec::adaptive(double reg, Eigen::VectorXd weights, std::vector<bool> frozen, double gamma) {
  PenaltySpec spec{PenaltyKind::kAdaptiveGroupLasso, reg, std::move(weights), std::move(frozen), gamma};
  spec.validate();
  return spec;
}

void PenaltySpec::validate() const {
  if (!(reg >= 0.0) || !std::isfinite(reg)) {
    throw std::invalid_argument("penalty reg must be finite and >= 0");
  }
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("penalty gamma must be > 0");
  }
  if (static_cast<Index>(frozen.size()) != weights.size()) {
    throw ShapeError("penalty weights and frozen mask differ in length");
  }
  if (!weights.allFinite() || (weights.array() < 0.0).any()) {
    throw std::invalid_argument("penalty weights must be finite and >= 0");
  }
  if (kind == PenaltyKind::kGroupLasso) {
    for (Index i = 0; i < weights.size(); ++i) {
      if (weights[i] != 1.0 || frozen[static_cast<std::size_t>(i)]) {
        throw std::invalid_argument("group lasso spec must have unit weights and no frozen groups");
      }
    }
  }
}

Eigen::VectorXd group_norms(const NetworkParams& params) {
  Eigen::VectorXd norms(params.hidden());
  for (Index i = 0; i < params.hidden(); ++i) {
    norms[i] = params.group(i).norm();
  }
  return norms;
}

double penalty_value(const NetworkParams& params, const PenaltySpec& spec) {
  if (spec.hidden() != params.hidden()) {
    throw ShapeError("penalty spec covers " + std::to_string(spec.hidden()) + " groups, network has " +
                     std::to_string(params.hidden()));
  }
  const Eigen::VectorXd norms = group_norms(params);
  double total = 0.0;
  for (Index i = 0; i < norms.size(); ++i) {
    if (spec.frozen[static_cast<std::size_t>(i)]) {
      if (norms[i] > 0.0) {
        throw std::invalid_argument("frozen group " + std::to_string(i) + " has nonzero norm");
      }
      continue;
    }
    total += spec.weights[i] * norms[i];
  }
  if (spec.kind == PenaltyKind::kNone) return 0.0;
  return spec.reg * total;
}

AdaptiveWeights adaptive_weights(const NetworkParams& gl_params, double gamma, double zero_tol) {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("adaptive weights need gamma > 0");
  }
  if (!(zero_tol >= 0.0)) {
    throw std::invalid_argument("zero_tol must be >= 0");
  }
  const Eigen::VectorXd norms = group_norms(gl_params);
  AdaptiveWeights out{Eigen::VectorXd::Zero(norms.size()),
                      std::vector<bool>(static_cast<std::size_t>(norms.size()), false)};
  for (Index i = 0; i < norms.size(); ++i) {
    if (norms[i] > zero_tol) {
      out.weights[i] = std::pow(norms[i], -gamma);
    } else {
      out.frozen[static_cast<std::size_t>(i)] = true;
    }
  }
  return out;
}

void block_soft_threshold_inplace(Eigen::Ref<Eigen::VectorXd> group, double threshold) {
  if (!(threshold >= 0.0)) {
    throw std::invalid_argument("soft threshold must be >= 0");
  }
  if (threshold == 0.0) return;
  const double norm = group.norm();
  if (norm <= threshold) {
    group.setZero();
  } else {
    group *= 1.0 - threshold / norm;
  }
}

NodeGroup block_soft_threshold(const NodeGroup& group, double threshold) {
  NodeGroup out = group;
  block_soft_threshold_inplace(out.values, threshold);
  return out;
}

}  // namespace nodeprune
