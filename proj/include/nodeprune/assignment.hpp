#pragma once

#include <Eigen/Dense>

#include <vector>

namespace nodeprune {

/// Minimum-cost perfect matching on a square cost matrix (Hungarian method
/// with row/column potentials, O(n^3)). Returns the column assigned to each row.
std::vector<Eigen::Index> solve_assignment(const Eigen::MatrixXd& cost);

}  // namespace nodeprune
