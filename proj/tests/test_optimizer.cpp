#include <cmath>
#include <random>

#include "doctest.h"
#include "nodeprune/data.hpp"
#include "nodeprune/optimizer.hpp"
#include "nodeprune/serialize.hpp"
#include "oracles.hpp"

using namespace nodeprune;

namespace {

TrainConfig epochs(int count, double lr = 0.01) {
  TrainConfig cfg;
  cfg.epochs = count;
  cfg.learning_rate = lr;
  return cfg;
}

}  // namespace

TEST_CASE("train config validation") {
  CHECK_THROWS_AS(epochs(0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(epochs(10, 0.0).validate(), std::invalid_argument);
  TrainConfig cfg;
  cfg.box_W = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.box_W.reset();
  cfg.rel_tol = -1e-3;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  TrainConfig merged;
  merge_from_json(json{{"epochs", 50}, {"box_W", 2.0}}, merged);
  CHECK(merged.epochs == 50);
  CHECK(merged.learning_rate == 0.01);
  CHECK(*merged.box_W == 2.0);
}

TEST_CASE("random init scale and determinism") {
  const NetworkParams a = random_init(200, 4, 5);
  CHECK(a == random_init(200, 4, 5));
  CHECK_FALSE(a == random_init(200, 4, 6));
  const double var = a.packed().squaredNorm() / static_cast<double>(a.packed().size());
  CHECK(var == doctest::Approx(0.5).epsilon(0.08));  // 1/sqrt(4)
}

TEST_CASE("projection onto the box") {
  std::mt19937_64 rng(2);
  const NetworkParams p = oracle::random_network(rng, 3, 2, 0.1);
  CHECK(project_linf(p, 1.0) == p);
  NetworkParams q(1, 1);
  q.group(0) << 2.0, -3.0, 0.5;
  q.b2() = 7.0;
  const NetworkParams clipped = project_linf(q, 1.0);
  CHECK(clipped.group(0) == Eigen::Vector3d(1.0, -1.0, 0.5));
  CHECK(clipped.b2() == 1.0);
  const NetworkParams big = oracle::random_network(rng, 4, 3, 5.0);
  CHECK(project_linf(project_linf(big, 2.0), 2.0) == project_linf(big, 2.0));
  CHECK_THROWS_AS(project_linf(q, 0.0), std::invalid_argument);
}

TEST_CASE("unpenalized descent") {
  std::mt19937_64 rng(3);
  const Dataset data = oracle::random_dataset(rng, 100, 3);
  const NetworkParams init = random_init(4, 3, 1);
  const FitReport fit = prox_gradient_fit(data, init, PenaltySpec::none(4), epochs(200));
  CHECK_FALSE(fit.diverged);
  CHECK(fit.epochs_run == 200);
  CHECK(fit.objective_trace.size() == 200);
  CHECK(fit.final_risk <= fit.initial_risk);
  CHECK(fit.initial_risk == empirical_risk(init, data));
  CHECK(fit.final_risk == doctest::Approx(empirical_risk(fit.params, data)).epsilon(1e-14));
  CHECK(fit.final_penalty == 0.0);
}

TEST_CASE("heavy group lasso zeroes every group and fits the mean") {
  std::mt19937_64 rng(4);
  Dataset raw = oracle::random_dataset(rng, 80, 2);
  const Dataset data(raw.x(), (raw.y().array() + 3.0).matrix());
  const FitReport fit = prox_gradient_fit(data, random_init(5, 2, 9), PenaltySpec::group_lasso(5, 1e3), epochs(2000));
  CHECK(fit.nonzero_nodes == 0);
  for (Index i = 0; i < 5; ++i) CHECK(fit.params.group(i).isZero(0.0));
  CHECK(std::abs(fit.params.b2() - data.y().mean()) <= 1e-4);
}

TEST_CASE("support identification and frozen groups") {
  std::mt19937_64 rng(5);
  const Dataset data = oracle::random_dataset(rng, 60, 2);
  NetworkParams init = random_init(6, 2, 2);
  init.group(1).setZero();
  init.group(4).setZero();
  std::vector<bool> frozen{false, true, false, false, true, false};
  const PenaltySpec spec = PenaltySpec::adaptive(0.05, Eigen::VectorXd::Ones(6), frozen, 2.0);
  const FitReport fit = prox_gradient_fit(data, init, spec, epochs(500));
  CHECK(fit.params.group(1).isZero(0.0));
  CHECK(fit.params.group(4).isZero(0.0));
  for (Index i = 0; i < 6; ++i) {
    const double norm = fit.params.group(i).norm();
    CHECK((norm == 0.0 || norm > kDefaultZeroTol));
  }

  NetworkParams bad = init;
  bad.group(1).setConstant(0.1);
  CHECK_THROWS_AS(prox_gradient_fit(data, bad, spec, epochs(5)), std::invalid_argument);
  CHECK_THROWS_AS(prox_gradient_fit(data, init, PenaltySpec::none(5), epochs(5)), std::invalid_argument);
}

TEST_CASE("objective is monotone at a step below 1/L") {
  std::mt19937_64 rng(6);
  const Dataset data = oracle::random_dataset(rng, 40, 2);
  const NetworkParams init = random_init(3, 2, 4);
  // Crude Lipschitz estimate of the risk gradient from random nearby pairs.
  double lipschitz = 0.0;
  for (int k = 0; k < 200; ++k) {
    const NetworkParams a = oracle::random_network(rng, 3, 2, 1.5);
    NetworkParams b = a;
    b.packed() += 1e-3 * oracle::random_network(rng, 3, 2).packed();
    lipschitz = std::max(lipschitz, (risk_gradient(a, data).packed() - risk_gradient(b, data).packed()).norm() /
                                        param_distance(a, b));
  }
  const TrainConfig cfg = epochs(1000, 0.5 / lipschitz);
  const FitReport fit = prox_gradient_fit(data, init, PenaltySpec::group_lasso(3, 0.05), cfg);
  for (std::size_t e = 1; e < fit.objective_trace.size(); ++e) {
    CHECK(fit.objective_trace[e] <= fit.objective_trace[e - 1] + 1e-10);
  }
}

TEST_CASE("identical inputs give identical reports") {
  std::mt19937_64 rng(7);
  const Dataset data = oracle::random_dataset(rng, 50, 3);
  const auto run = [&] { return prox_gradient_fit(data, random_init(4, 3, 1), PenaltySpec::group_lasso(4, 0.02), epochs(300)); };
  const FitReport a = run(), b = run();
  CHECK(a.params == b.params);
  CHECK(a.objective_trace == b.objective_trace);
}

TEST_CASE("box projection keeps every iterate inside") {
  std::mt19937_64 rng(8);
  const Dataset data = oracle::random_dataset(rng, 50, 2);
  TrainConfig cfg = epochs(300, 0.1);
  cfg.box_W = 0.3;
  const FitReport fit = prox_gradient_fit(data, random_init(3, 2, 2), PenaltySpec::none(3), cfg);
  CHECK(fit.params.packed().cwiseAbs().maxCoeff() <= 0.3);
}

TEST_CASE("early stopping") {
  std::mt19937_64 rng(9);
  const Dataset data = oracle::random_dataset(rng, 50, 2);
  TrainConfig cfg = epochs(5000);
  cfg.rel_tol = 1e-6;
  const FitReport fit = prox_gradient_fit(data, random_init(3, 2, 3), PenaltySpec::group_lasso(3, 0.5), cfg);
  CHECK(fit.epochs_run < 5000);
  CHECK(fit.objective_trace.size() == static_cast<std::size_t>(fit.epochs_run));
}

TEST_CASE("divergence keeps the last finite iterate") {
  std::mt19937_64 rng(10);
  Dataset raw = oracle::random_dataset(rng, 20, 2);
  const Dataset data(raw.x(), raw.y() * 1e150);
  const FitReport fit = prox_gradient_fit(data, random_init(3, 2, 1), PenaltySpec::none(3), epochs(100, 10.0));
  CHECK(fit.diverged);
  CHECK(fit.epochs_run < 100);
  CHECK(fit.params.all_finite());
  for (const double v : fit.objective_trace) CHECK(std::isfinite(v));
}

TEST_CASE("one strong node survives a moderate group lasso") {
  // y = 3 tanh(2 x1 - x2 + 0.3) + noise, fitted with H = 3.
  int single = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Philox4x32 rng(seed);
    NormalSampler normal;
    Eigen::MatrixXd x(400, 2);
    Eigen::VectorXd y(400);
    for (Index k = 0; k < 400; ++k) {
      x(k, 0) = normal(rng);
      x(k, 1) = normal(rng);
      y[k] = 3.0 * std::tanh(2.0 * x(k, 0) - x(k, 1) + 0.3) + 0.3 * normal(rng);
    }
    const FitReport fit =
        prox_gradient_fit(Dataset(x, y), random_init(3, 2, seed), PenaltySpec::group_lasso(3, 0.1), epochs(3000, 0.05));
    single += fit.nonzero_nodes == 1 ? 1 : 0;
  }
  CHECK(single >= 9);
}
