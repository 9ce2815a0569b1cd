#include "nodeprune/activation.hpp"

#include <cmath>

namespace nodeprune {

void tanh_into(const Eigen::Ref<const Eigen::ArrayXd>& z, Eigen::Ref<Eigen::ArrayXd> out) {
  out = 1.0 - 2.0 / ((2.0 * z).exp() + 1.0);
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (std::abs(z[i]) < kTanhExpCutoff) out[i] = std::tanh(z[i]);
  }
}

}  // namespace nodeprune
