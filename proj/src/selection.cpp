#include "nodeprune/selection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nodeprune/errors.hpp"

namespace nodeprune {

void GridSpec::validate() const {
  if (gl_grid.empty() || agl_grid.empty()) throw std::invalid_argument("regularizer grids must be nonempty");
  const auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
  if (!std::all_of(gl_grid.begin(), gl_grid.end(), positive) ||
      !std::all_of(agl_grid.begin(), agl_grid.end(), positive)) {
    throw std::invalid_argument("regularizer grid entries must be finite and > 0");
  }
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
}

double aic(const FitReport& fit, Index n) {
  const double k = static_cast<double>((fit.params.input_dim() + 2) * fit.nonzero_nodes + 1);
  return static_cast<double>(n) * std::log(std::max(fit.final_risk, 1e-12)) + 2.0 * k;
}

GridSelection select_on_grid(const Dataset& data, const NetworkParams& init, const std::vector<double>& grid,
                             const TrainConfig& cfg, const std::function<PenaltySpec(double)>& make_spec) {
  GridSelection out;
  bool have_choice = false;
  for (const double reg : grid) {
    PenaltySpec spec = make_spec(reg);
    FitReport fit = prox_gradient_fit(data, init, spec, cfg);
    if (fit.diverged) {
      std::ostringstream msg;
      msg << "fit diverged at reg=" << reg << " after " << fit.epochs_run << " epochs; excluded from AIC";
      out.warnings.push_back(msg.str());
      continue;
    }
    const double score = aic(fit, data.n());
    out.trace.push_back({reg, score, fit.nonzero_nodes, fit.final_risk});
    const bool better = !have_choice || score < out.choice.aic || (score == out.choice.aic && reg > out.choice.reg);
    if (better) {
      out.choice = RegChoice{reg, std::move(fit), score};
      out.spec = std::move(spec);
      have_choice = true;
    }
  }
  if (!have_choice) {
    throw PipelineError("every fit on the regularizer grid diverged");
  }
  return out;
}

GridSelection group_lasso_selection(const Dataset& data, Index hidden, const GridSpec& grids, const TrainConfig& cfg) {
  grids.validate();
  if (hidden < 1) throw std::invalid_argument("need at least one hidden node");
  const NetworkParams init = random_init(hidden, data.input_dim(), cfg.seed);
  return select_on_grid(data, init, grids.gl_grid, cfg,
                        [hidden](double reg) { return PenaltySpec::group_lasso(hidden, reg); });
}

GridSelection adaptive_selection(const Dataset& data, const NetworkParams& gl_params, const GridSpec& grids,
                                 const TrainConfig& cfg) {
  grids.validate();
  AdaptiveWeights adaptive = adaptive_weights(gl_params, grids.gamma);
  NetworkParams warm = gl_params;
  for (Index i = 0; i < warm.hidden(); ++i) {
    if (adaptive.frozen[static_cast<std::size_t>(i)]) warm.group(i).setZero();
  }
  return select_on_grid(data, warm, grids.agl_grid, cfg, [&](double reg) {
    return PenaltySpec::adaptive(reg, adaptive.weights, adaptive.frozen, grids.gamma);
  });
}

SelectionResult two_step_fit(const Dataset& data, Index hidden, const GridSpec& grids, const TrainConfig& cfg) {
  GridSelection gl = group_lasso_selection(data, hidden, grids, cfg);
  GridSelection agl = adaptive_selection(data, gl.choice.fit.params, grids, cfg);

  SelectionResult result;
  result.warnings = std::move(gl.warnings);
  result.warnings.insert(result.warnings.end(), agl.warnings.begin(), agl.warnings.end());
  result.gl_choice = std::move(gl.choice);
  result.gl_aic_trace = std::move(gl.trace);
  result.agl_choice = std::move(agl.choice);
  result.agl_aic_trace = std::move(agl.trace);
  result.agl_spec = std::move(agl.spec);
  result.selected_nodes = result.agl_choice.fit.nonzero_nodes;
  result.minimality = check_minimal(restrict_to_nonzero(result.agl_choice.fit.params));
  return result;
}

}  // namespace nodeprune
