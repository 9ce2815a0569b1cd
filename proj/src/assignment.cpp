#include "nodeprune/assignment.hpp"

#include <limits>
#include <stdexcept>

namespace nodeprune {

std::vector<Eigen::Index> solve_assignment(const Eigen::MatrixXd& cost) {
  using Eigen::Index;
  if (cost.rows() != cost.cols()) {
    throw std::invalid_argument("assignment needs a square cost matrix");
  }
  if (!cost.allFinite()) {
    throw std::invalid_argument("assignment costs must be finite");
  }
  const Index n = cost.rows();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // 1-based arrays; index 0 is the virtual source column.
  std::vector<double> row_pot(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<double> col_pot(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<Index> col_owner(static_cast<std::size_t>(n + 1), 0);
  std::vector<Index> back(static_cast<std::size_t>(n + 1), 0);

  for (Index row = 1; row <= n; ++row) {
    col_owner[0] = row;
    Index col0 = 0;
    std::vector<double> slack(static_cast<std::size_t>(n + 1), kInf);
    std::vector<bool> used(static_cast<std::size_t>(n + 1), false);
    do {
      used[static_cast<std::size_t>(col0)] = true;
      const Index r0 = col_owner[static_cast<std::size_t>(col0)];
      double delta = kInf;
      Index col1 = 0;
      for (Index c = 1; c <= n; ++c) {
        const auto cu = static_cast<std::size_t>(c);
        if (used[cu]) continue;
        const double reduced = cost(r0 - 1, c - 1) - row_pot[static_cast<std::size_t>(r0)] - col_pot[cu];
        if (reduced < slack[cu]) {
          slack[cu] = reduced;
          back[cu] = col0;
        }
        if (slack[cu] < delta) {
          delta = slack[cu];
          col1 = c;
        }
      }
      for (Index c = 0; c <= n; ++c) {
        const auto cu = static_cast<std::size_t>(c);
        if (used[cu]) {
          row_pot[static_cast<std::size_t>(col_owner[cu])] += delta;
          col_pot[cu] -= delta;
        } else {
          slack[cu] -= delta;
        }
      }
      col0 = col1;
    } while (col_owner[static_cast<std::size_t>(col0)] != 0);
    do {
      const Index col1 = back[static_cast<std::size_t>(col0)];
      col_owner[static_cast<std::size_t>(col0)] = col_owner[static_cast<std::size_t>(col1)];
      col0 = col1;
    } while (col0 != 0);
  }

  std::vector<Index> row_to_col(static_cast<std::size_t>(n), 0);
  for (Index c = 1; c <= n; ++c) {
    row_to_col[static_cast<std::size_t>(col_owner[static_cast<std::size_t>(c)] - 1)] = c - 1;
  }
  return row_to_col;
}

}  // namespace nodeprune
