#pragma once

#include <string_view>
#include <vector>

#include "nodeprune/network.hpp"
#include "nodeprune/penalty.hpp"

namespace nodeprune {

/// Exact-equality tests of the theory become threshold tests here.
struct StructureTolerances {
  double zero_tol = kDefaultZeroTol;
  double dup_tol = 1e-6;

  void validate() const;
};

enum class ViolationKind { kZeroUColumn, kZeroVEntry, kSignDuplicatePair };

std::string_view to_string(ViolationKind kind);

struct MinimalityViolation {
  ViolationKind kind;
  std::vector<Index> nodes;  // one node, or the pair (i, j) with i < j

  bool operator==(const MinimalityViolation&) const = default;
};

struct MinimalityReport {
  bool minimal = true;
  std::vector<MinimalityViolation> violations;
};

/**
 * A tanh network is minimal iff every node has a nonzero u row, a nonzero v
 * entry, and no two nodes share (u row, b1) up to sign. Every violation is
 * reported; the pair test runs over all unordered pairs and both signs.
 */
MinimalityReport check_minimal(const NetworkParams& params, const StructureTolerances& tol = {});

struct NodeCounts {
  int zero = 0;
  int non_significant = 0;  // includes zero nodes
  int nonzero = 0;
};

NodeCounts count_nodes(const NetworkParams& params, const StructureTolerances& tol = {});

/// Drops zero nodes (||w_i|| <= zero_tol); the remaining nodes keep their order.
NetworkParams restrict_to_nonzero(const NetworkParams& params, double zero_tol = kDefaultZeroTol);

/**
 * Merges nodes that compute the same hidden unit up to sign.
 *
 * Non-significant nodes are removed first: a node with v = 0 contributes
 * nothing, and a node with u = 0 contributes the constant v*tanh(b1), which
 * is folded into b2. The rest are grouped greedily in index order; the
 * lowest index in a class keeps its (u row, b1) and receives
 * v = sum of (+v_j for same orientation, -v_j for flipped members). Freed
 * slots become exact zero nodes, as does a representative whose merged v
 * cancels to within zero_tol.
 */
NetworkParams canonical_reduce(const NetworkParams& params, const StructureTolerances& tol = {});

/**
 * Distance from `candidate` (H nodes) to the set of H-node embeddings of the
 * minimal network `reference` (H* <= H nodes) under node permutation and
 * per-node sign flip of the whole group (u row, v, b1).
 *
 * Solved exactly as an H x H assignment: reference node i vs. slot j costs
 * min_s ||w_j - s w_i||^2; the H - H* padding rows cost ||w_j||^2. The b2
 * difference is added once. Throws std::invalid_argument if the reference is
 * not minimal under `tol`.
 */
double distance_to_embedded_reference(const NetworkParams& candidate, const NetworkParams& reference,
                                      const StructureTolerances& tol = {});

}  // namespace nodeprune
