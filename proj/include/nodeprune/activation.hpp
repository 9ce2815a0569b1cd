#pragma once

#include <Eigen/Dense>

namespace nodeprune {

/// Below this magnitude tanh is taken from std::tanh; above it from the
/// vectorized identity tanh(z) = 1 - 2 / (exp(2z) + 1), which has no
/// cancellation there.
inline constexpr double kTanhExpCutoff = 0.125;

/// out = tanh(z) elementwise. `out` must not alias `z`.
void tanh_into(const Eigen::Ref<const Eigen::ArrayXd>& z, Eigen::Ref<Eigen::ArrayXd> out);

}  // namespace nodeprune
