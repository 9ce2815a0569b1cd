#include "nodeprune/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nodeprune/errors.hpp"
#include "nodeprune/random.hpp"

namespace nodeprune {

void TrainConfig::validate() const {
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
  if (box_W && !(*box_W > 0.0)) throw std::invalid_argument("box_W must be > 0");
  if (!(rel_tol >= 0.0)) throw std::invalid_argument("rel_tol must be >= 0");
}

NetworkParams random_init(Index hidden, Index input_dim, std::uint64_t seed) {
  NetworkParams params(hidden, input_dim);
  Philox4x32 rng(seed);
  NormalSampler normal;
  const double sd = std::pow(static_cast<double>(input_dim), -0.25);
  for (double& x : params.packed()) x = sd * normal(rng);
  return params;
}

NetworkParams project_linf(const NetworkParams& params, double W) {
  if (!(W > 0.0)) throw std::invalid_argument("projection radius must be > 0");
  NetworkParams out = params;
  out.packed() = out.packed().cwiseMax(-W).cwiseMin(W);
  return out;
}

namespace {

int count_nonzero_groups(const NetworkParams& params) {
  int count = 0;
  for (Index i = 0; i < params.hidden(); ++i) {
    if (params.group(i).norm() > kDefaultZeroTol) ++count;
  }
  return count;
}

}  // namespace

FitReport prox_gradient_fit(const Dataset& data, const NetworkParams& init, const PenaltySpec& spec,
                            const TrainConfig& cfg) {
  cfg.validate();
  spec.validate();
  if (spec.hidden() != init.hidden()) {
    throw ShapeError("penalty spec covers " + std::to_string(spec.hidden()) + " groups, network has " +
                     std::to_string(init.hidden()));
  }
  init.require_finite();
  for (Index i = 0; i < init.hidden(); ++i) {
    if (spec.frozen[static_cast<std::size_t>(i)] && !init.group(i).isZero(0.0)) {
      throw std::invalid_argument("initial point has nonzero frozen group " + std::to_string(i));
    }
  }

  const double lr = cfg.learning_rate;
  const bool penalized = spec.kind != PenaltyKind::kNone && spec.reg > 0.0;

  FitReport report;
  report.objective_trace.reserve(static_cast<std::size_t>(cfg.epochs));
  report.risk_trace.reserve(static_cast<std::size_t>(cfg.epochs));
  report.penalty_trace.reserve(static_cast<std::size_t>(cfg.epochs));

  RiskEvaluator evaluator(data);
  NetworkParams current = init;
  NetworkParams gradient;
  NetworkParams next_gradient;
  double risk = evaluator.risk_and_gradient(current, gradient);
  double penalty = penalty_value(current, spec);
  double objective = risk + penalty;
  report.initial_risk = risk;

  NetworkParams next = current;
  int quiet_epochs = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    next.packed() = current.packed() - lr * gradient.packed();
    for (Index i = 0; i < next.hidden(); ++i) {
      if (spec.frozen[static_cast<std::size_t>(i)]) {
        next.group(i).setZero();
      } else if (penalized) {
        block_soft_threshold_inplace(next.group(i), lr * spec.reg * spec.weights[i]);
      }
    }
    if (cfg.box_W) next.packed() = next.packed().cwiseMax(-*cfg.box_W).cwiseMin(*cfg.box_W);

    const double next_risk = evaluator.risk_and_gradient(next, next_gradient);
    const double next_penalty = penalty_value(next, spec);
    const double next_objective = next_risk + next_penalty;
    if (!std::isfinite(next_objective) || !next.all_finite()) {
      report.diverged = true;
      break;
    }

    const double change = std::abs(next_objective - objective) / std::max(std::abs(objective), 1e-300);
    std::swap(current, next);
    std::swap(gradient, next_gradient);
    risk = next_risk;
    penalty = next_penalty;
    objective = next_objective;
    report.objective_trace.push_back(objective);
    report.risk_trace.push_back(risk);
    report.penalty_trace.push_back(penalty);
    ++report.epochs_run;

    quiet_epochs = change < cfg.rel_tol ? quiet_epochs + 1 : 0;
    if (quiet_epochs >= kEarlyStopPatience) break;
  }

  report.final_risk = risk;
  report.final_penalty = penalty;
  report.nonzero_nodes = count_nonzero_groups(current);
  report.params = std::move(current);
  return report;
}

}  // namespace nodeprune
