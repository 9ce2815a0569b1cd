#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nodeprune/network.hpp"
#include "nodeprune/optimizer.hpp"
#include "nodeprune/penalty.hpp"
#include "nodeprune/structure.hpp"

namespace nodeprune {

struct GridSpec {
  std::vector<double> gl_grid{0.001, 0.005, 0.01, 0.025, 0.05, 0.075, 0.1};
  std::vector<double> agl_grid{0.001, 0.005, 0.01, 0.025, 0.05, 0.075, 0.1};
  double gamma = 2.0;

  void validate() const;
};

/// n ln(max(risk, 1e-12)) + 2k, k = (d + 2) * nonzero_nodes + 1.
double aic(const FitReport& fit, Index n);

struct RegChoice {
  double reg = 0.0;
  FitReport fit;
  double aic = 0.0;
};

struct AicPoint {
  double reg = 0.0;
  double aic = 0.0;
  int nonzero_nodes = 0;
  double risk = 0.0;
};

/// Best fit along one regularizer grid plus the per-point AIC record.
struct GridSelection {
  RegChoice choice;
  PenaltySpec spec;  // penalty used by the chosen fit
  std::vector<AicPoint> trace;
  std::vector<std::string> warnings;
};

/**
 * Fits `init` once per grid value with `make_spec(reg)` and keeps the
 * minimum-AIC fit; ties go to the larger regularizer. Diverged fits are left
 * out of the trace with a warning. Throws PipelineError when every fit
 * diverges.
 */
GridSelection select_on_grid(const Dataset& data, const NetworkParams& init, const std::vector<double>& grid,
                             const TrainConfig& cfg, const std::function<PenaltySpec(double)>& make_spec);

struct SelectionResult {
  RegChoice gl_choice;
  RegChoice agl_choice;
  std::vector<AicPoint> gl_aic_trace;
  std::vector<AicPoint> agl_aic_trace;
  PenaltySpec agl_spec;  // weights/frozen mask of Step 2 (reg = chosen lambda)
  int selected_nodes = 0;
  MinimalityReport minimality;  // of the AGL fit restricted to its nonzero nodes
  std::vector<std::string> warnings;
};

/// Group Lasso only: Step 1 with AIC over gl_grid from random_init(H, d, cfg.seed).
GridSelection group_lasso_selection(const Dataset& data, Index hidden, const GridSpec& grids,
                                    const TrainConfig& cfg);

/**
 * Two-step estimator. Step 1 runs Group Lasso over gl_grid from a shared
 * random initialization; Step 2 builds adaptive weights from the chosen GL
 * network and runs Adaptive Group Lasso over agl_grid, warm-started at that
 * network with its zero groups frozen. AIC picks each regularizer.
 */
SelectionResult two_step_fit(const Dataset& data, Index hidden, const GridSpec& grids, const TrainConfig& cfg);

/// Step 2 alone, given a Step-1 network.
GridSelection adaptive_selection(const Dataset& data, const NetworkParams& gl_params, const GridSpec& grids,
                                 const TrainConfig& cfg);

}  // namespace nodeprune
