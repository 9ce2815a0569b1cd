#include "nodeprune/structure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nodeprune/assignment.hpp"
#include "nodeprune/errors.hpp"

namespace nodeprune {

void StructureTolerances::validate() const {
  if (!(zero_tol >= 0.0) || !(dup_tol >= 0.0)) {
    throw std::invalid_argument("structure tolerances must be >= 0");
  }
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kZeroUColumn:
      return "zero_u_column";
    case ViolationKind::kZeroVEntry:
      return "zero_v_entry";
    case ViolationKind::kSignDuplicatePair:
      return "sign_duplicate_pair";
  }
  return "";
}

namespace {

bool u_is_zero(const NetworkParams& params, Index i, double tol) { return params.u().row(i).norm() <= tol; }

bool v_is_zero(const NetworkParams& params, Index i, double tol) { return std::abs(params.v()[i]) <= tol; }

// +1 if keys match, -1 if they match after negation, 0 otherwise.
int sign_match(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol) {
  if ((a - b).norm() <= tol) return 1;
  if ((a + b).norm() <= tol) return -1;
  return 0;
}

}  // namespace

MinimalityReport check_minimal(const NetworkParams& params, const StructureTolerances& tol) {
  tol.validate();
  MinimalityReport report;
  const Index hidden = params.hidden();
  for (Index i = 0; i < hidden; ++i) {
    if (u_is_zero(params, i, tol.zero_tol)) {
      report.violations.push_back({ViolationKind::kZeroUColumn, {i}});
    }
    if (v_is_zero(params, i, tol.zero_tol)) {
      report.violations.push_back({ViolationKind::kZeroVEntry, {i}});
    }
  }
  std::vector<Eigen::VectorXd> keys;
  keys.reserve(static_cast<std::size_t>(hidden));
  for (Index i = 0; i < hidden; ++i) keys.push_back(params.activation_key(i));
  for (Index i = 0; i < hidden; ++i) {
    for (Index j = i + 1; j < hidden; ++j) {
      if (sign_match(keys[static_cast<std::size_t>(i)], keys[static_cast<std::size_t>(j)], tol.dup_tol) != 0) {
        report.violations.push_back({ViolationKind::kSignDuplicatePair, {i, j}});
      }
    }
  }
  report.minimal = report.violations.empty();
  return report;
}

NodeCounts count_nodes(const NetworkParams& params, const StructureTolerances& tol) {
  tol.validate();
  NodeCounts counts;
  for (Index i = 0; i < params.hidden(); ++i) {
    if (params.group(i).norm() <= tol.zero_tol) ++counts.zero;
    if (u_is_zero(params, i, tol.zero_tol) || v_is_zero(params, i, tol.zero_tol)) ++counts.non_significant;
  }
  counts.nonzero = static_cast<int>(params.hidden()) - counts.zero;
  return counts;
}

NetworkParams restrict_to_nonzero(const NetworkParams& params, double zero_tol) {
  std::vector<Index> keep;
  for (Index i = 0; i < params.hidden(); ++i) {
    if (params.group(i).norm() > zero_tol) keep.push_back(i);
  }
  NetworkParams out(static_cast<Index>(keep.size()), params.input_dim());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    out.group(static_cast<Index>(k)) = params.group(keep[k]);
  }
  out.b2() = params.b2();
  return out;
}

NetworkParams canonical_reduce(const NetworkParams& params, const StructureTolerances& tol) {
  tol.validate();
  NetworkParams out = params;
  const Index hidden = params.hidden();

  std::vector<bool> live(static_cast<std::size_t>(hidden), true);
  for (Index i = 0; i < hidden; ++i) {
    const bool no_u = u_is_zero(params, i, tol.zero_tol);
    const bool no_v = v_is_zero(params, i, tol.zero_tol);
    if (!no_u && !no_v) continue;
    if (no_u && !no_v) {
      out.b2() += params.v()[i] * std::tanh(params.b1()[i]);
    }
    out.group(i).setZero();
    live[static_cast<std::size_t>(i)] = false;
  }

  std::vector<Eigen::VectorXd> keys;
  keys.reserve(static_cast<std::size_t>(hidden));
  for (Index i = 0; i < hidden; ++i) keys.push_back(params.activation_key(i));

  for (Index rep = 0; rep < hidden; ++rep) {
    if (!live[static_cast<std::size_t>(rep)]) continue;
    live[static_cast<std::size_t>(rep)] = false;
    double merged_v = params.v()[rep];
    bool merged_any = false;
    for (Index j = rep + 1; j < hidden; ++j) {
      if (!live[static_cast<std::size_t>(j)]) continue;
      const int sign = sign_match(keys[static_cast<std::size_t>(rep)], keys[static_cast<std::size_t>(j)], tol.dup_tol);
      if (sign == 0) continue;
      merged_v += sign * params.v()[j];
      out.group(j).setZero();
      live[static_cast<std::size_t>(j)] = false;
      merged_any = true;
    }
    if (!merged_any) continue;
    if (std::abs(merged_v) <= tol.zero_tol) {
      out.group(rep).setZero();
    } else {
      out.v()[rep] = merged_v;
    }
  }
  return out;
}

double distance_to_embedded_reference(const NetworkParams& candidate, const NetworkParams& reference,
                                      const StructureTolerances& tol) {
  if (candidate.input_dim() != reference.input_dim()) {
    throw ShapeError("candidate and reference differ in input dimension");
  }
  if (candidate.hidden() < reference.hidden()) {
    throw std::invalid_argument("reference has more nodes (" + std::to_string(reference.hidden()) +
                                ") than the candidate (" + std::to_string(candidate.hidden()) + ")");
  }
  if (!check_minimal(reference, tol).minimal) {
    throw std::invalid_argument("reference network is not minimal");
  }

  const Index slots = candidate.hidden();
  const Index matched = reference.hidden();
  Eigen::MatrixXd cost(slots, slots);
  for (Index j = 0; j < slots; ++j) {
    const auto slot = candidate.group(j);
    for (Index i = 0; i < matched; ++i) {
      const auto ref = reference.group(i);
      cost(i, j) = std::min((slot - ref).squaredNorm(), (slot + ref).squaredNorm());
    }
    const double unmatched = slot.squaredNorm();
    for (Index i = matched; i < slots; ++i) cost(i, j) = unmatched;
  }

  const std::vector<Index> row_to_col = solve_assignment(cost);
  std::vector<Index> col_to_row(static_cast<std::size_t>(slots));
  for (Index r = 0; r < slots; ++r) col_to_row[static_cast<std::size_t>(row_to_col[static_cast<std::size_t>(r)])] = r;

  // Accumulate in slot order so equal assignments give bitwise-equal sums.
  double total = 0.0;
  for (Index j = 0; j < slots; ++j) total += cost(col_to_row[static_cast<std::size_t>(j)], j);
  const double bias_gap = candidate.b2() - reference.b2();
  total += bias_gap * bias_gap;
  return std::sqrt(total);
}

}  // namespace nodeprune
