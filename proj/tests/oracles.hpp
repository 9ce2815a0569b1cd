// Independent reference computations for the tests. Nothing here calls the
// library code it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "nodeprune/network.hpp"

namespace oracle {

using nodeprune::Index;
using nodeprune::NetworkParams;

inline NetworkParams random_network(std::mt19937_64& rng, Index hidden, Index d, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  NetworkParams p(hidden, d);
  for (Index k = 0; k < p.packed().size(); ++k) p.packed()[k] = normal(rng);
  return p;
}

inline nodeprune::Dataset random_dataset(std::mt19937_64& rng, Index n, Index d) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd x(n, d);
  Eigen::VectorXd y(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) x(i, j) = normal(rng);
    y[i] = normal(rng);
  }
  return nodeprune::Dataset(x, y);
}

/// f(x) in extended precision with explicit loops.
inline long double forward_ld(const NetworkParams& p, const Eigen::VectorXd& x) {
  long double out = p.b2();
  for (Index i = 0; i < p.hidden(); ++i) {
    long double pre = p.b1()[i];
    for (Index j = 0; j < p.input_dim(); ++j) pre += static_cast<long double>(p.u()(i, j)) * x[j];
    out += static_cast<long double>(p.v()[i]) * std::tanh(pre);
  }
  return out;
}

inline long double risk_ld(const NetworkParams& p, const nodeprune::Dataset& data) {
  long double sum = 0.0L;
  for (Index k = 0; k < data.n(); ++k) {
    const long double r = data.y()[k] - forward_ld(p, data.x().row(k).transpose());
    sum += r * r;
  }
  return sum / data.n();
}

/// Central finite differences of `f` in every packed coordinate.
inline Eigen::VectorXd central_difference(const std::function<double(const NetworkParams&)>& f,
                                          const NetworkParams& at, double step) {
  Eigen::VectorXd out(at.packed().size());
  for (Index k = 0; k < out.size(); ++k) {
    NetworkParams plus = at;
    NetworkParams minus = at;
    plus.packed()[k] += step;
    minus.packed()[k] -= step;
    out[k] = (f(plus) - f(minus)) / (2.0 * step);
  }
  return out;
}

inline double prox_objective(const Eigen::VectorXd& x, const Eigen::VectorXd& w, double t) {
  return 0.5 * (x - w).squaredNorm() + t * x.norm();
}

/**
 * Minimum over all injections of reference nodes into candidate slots and
 * all sign patterns. Per-slot costs are accumulated in slot order, then the
 * b2 term is added, so the arithmetic matches the assignment-based version.
 */
inline double brute_force_distance(const NetworkParams& cand, const NetworkParams& ref) {
  const Index H = cand.hidden();
  const Index Hs = ref.hidden();
  std::vector<Index> slots(static_cast<std::size_t>(H));
  std::iota(slots.begin(), slots.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  // Enumerate injections as the first Hs entries of every permutation; repeats are harmless.
  do {
    for (unsigned signs = 0; signs < (1u << Hs); ++signs) {
      std::vector<double> slot_cost(static_cast<std::size_t>(H));
      for (Index j = 0; j < H; ++j) slot_cost[static_cast<std::size_t>(j)] = cand.group(j).squaredNorm();
      for (Index i = 0; i < Hs; ++i) {
        const Index j = slots[static_cast<std::size_t>(i)];
        const double s = (signs >> i) & 1u ? -1.0 : 1.0;
        slot_cost[static_cast<std::size_t>(j)] = (cand.group(j) - s * ref.group(i)).squaredNorm();
      }
      double total = 0.0;
      for (const double c : slot_cost) total += c;
      const double db2 = cand.b2() - ref.b2();
      best = std::min(best, total + db2 * db2);
    }
  } while (std::next_permutation(slots.begin(), slots.end()));
  return std::sqrt(best);
}

/// Sum of group norms, written out by hand.
inline double group_lasso_sum(const NetworkParams& p) {
  double total = 0.0;
  for (Index i = 0; i < p.hidden(); ++i) {
    double sq = p.v()[i] * p.v()[i] + p.b1()[i] * p.b1()[i];
    for (Index j = 0; j < p.input_dim(); ++j) sq += p.u()(i, j) * p.u()(i, j);
    total += std::sqrt(sq);
  }
  return total;
}

}  // namespace oracle
