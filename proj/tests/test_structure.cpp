#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "nodeprune/assignment.hpp"
#include "nodeprune/serialize.hpp"
#include "nodeprune/structure.hpp"
#include "oracles.hpp"

using namespace nodeprune;

namespace {

double max_io_gap(const NetworkParams& a, const NetworkParams& b, std::mt19937_64& rng, int points) {
  std::normal_distribution<double> normal(0.0, 2.0);
  double gap = 0.0;
  Eigen::VectorXd x(a.input_dim());
  for (int k = 0; k < points; ++k) {
    for (Index j = 0; j < x.size(); ++j) x[j] = normal(rng);
    gap = std::max(gap, std::abs(forward(a, x) - forward(b, x)));
  }
  return gap;
}

}  // namespace

TEST_CASE("check_minimal reports each violation") {
  std::mt19937_64 rng(1);
  const NetworkParams generic = oracle::random_network(rng, 5, 3);
  const MinimalityReport ok = check_minimal(generic);
  CHECK(ok.minimal);
  CHECK(ok.violations.empty());

  NetworkParams zero_v = generic;
  zero_v.v()[1] = 0.0;
  const MinimalityReport r1 = check_minimal(zero_v);
  CHECK_FALSE(r1.minimal);
  REQUIRE(r1.violations.size() == 1);
  CHECK(r1.violations[0] == MinimalityViolation{ViolationKind::kZeroVEntry, {1}});

  NetworkParams flipped = generic;
  flipped.u().row(1) = -flipped.u().row(0);
  flipped.b1()[1] = -flipped.b1()[0];
  const MinimalityReport r2 = check_minimal(flipped);
  REQUIRE(r2.violations.size() == 1);
  CHECK(r2.violations[0] == MinimalityViolation{ViolationKind::kSignDuplicatePair, {0, 1}});

  NetworkParams several = generic;
  several.u().row(4).setZero();
  several.v()[2] = 0.0;
  several.u().row(3) = several.u().row(0);
  several.b1()[3] = several.b1()[0];
  const MinimalityReport r3 = check_minimal(several);
  CHECK(r3.violations.size() == 3);
  CHECK(std::count(r3.violations.begin(), r3.violations.end(),
                   MinimalityViolation{ViolationKind::kZeroUColumn, {4}}) == 1);
  CHECK(std::count(r3.violations.begin(), r3.violations.end(),
                   MinimalityViolation{ViolationKind::kSignDuplicatePair, {0, 3}}) == 1);

  const json j = to_json(r2);
  CHECK(j.at("minimal") == false);
  CHECK(j.at("violations")[0].at("kind") == "sign_duplicate_pair");
}

TEST_CASE("count_nodes") {
  const NodeCounts empty = count_nodes(NetworkParams(5, 2));
  CHECK(empty.zero == 5);
  CHECK(empty.non_significant == 5);
  CHECK(empty.nonzero == 0);

  NetworkParams p(2, 2);
  p.v()[0] = 1.0;
  p.group(1) << 0.5, -0.5, 1.0, 0.1;
  const NodeCounts c = count_nodes(p);
  CHECK(c.zero == 0);
  CHECK(c.non_significant == 1);
  CHECK(c.nonzero == 2);

  std::mt19937_64 rng(2);
  const NodeCounts generic = count_nodes(oracle::random_network(rng, 6, 3));
  CHECK(generic.zero == 0);
  CHECK(generic.non_significant == 0);
  CHECK(generic.nonzero == 6);
}

TEST_CASE("restrict_to_nonzero keeps order") {
  std::mt19937_64 rng(3);
  NetworkParams p = oracle::random_network(rng, 4, 2);
  p.group(1).setZero();
  const NetworkParams r = restrict_to_nonzero(p);
  REQUIRE(r.hidden() == 3);
  CHECK(r.group(0) == p.group(0));
  CHECK(r.group(1) == p.group(2));
  CHECK(r.group(2) == p.group(3));
  CHECK(r.b2() == p.b2());
}

TEST_CASE("canonical_reduce examples") {
  std::mt19937_64 rng(4);
  SUBCASE("identical twins merge") {
    NetworkParams p = oracle::random_network(rng, 2, 3);
    p.u().row(1) = p.u().row(0);
    p.b1()[1] = p.b1()[0];
    p.v()[0] = 0.5;
    p.v()[1] = 0.5;
    const NetworkParams r = canonical_reduce(p);
    CHECK(r.v()[0] == 1.0);
    CHECK(r.group(1).isZero(0.0));
    CHECK(max_io_gap(p, r, rng, 100) <= 1e-10);
  }
  SUBCASE("sign-flipped twins merge with a difference") {
    NetworkParams p = oracle::random_network(rng, 2, 3);
    p.u().row(1) = -p.u().row(0);
    p.b1()[1] = -p.b1()[0];
    const double a = p.v()[0], b = p.v()[1];
    const NetworkParams r = canonical_reduce(p);
    CHECK(r.v()[0] == a - b);
    CHECK(r.group(1).isZero(0.0));
    CHECK(max_io_gap(p, r, rng, 100) <= 1e-10);
  }
  SUBCASE("constant nodes fold into the output bias") {
    NetworkParams p = oracle::random_network(rng, 3, 2);
    p.u().row(2).setZero();
    const NetworkParams r = canonical_reduce(p);
    CHECK(r.group(2).isZero(0.0));
    CHECK(r.b2() == doctest::Approx(p.b2() + p.v()[2] * std::tanh(p.b1()[2])).epsilon(1e-15));
    CHECK(max_io_gap(p, r, rng, 100) <= 1e-12);
  }
  SUBCASE("minimal networks are fixed points") {
    const NetworkParams p = oracle::random_network(rng, 5, 3);
    CHECK(canonical_reduce(p) == p);
  }
}

TEST_CASE("canonical_reduce properties on planted duplicates") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, 2);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    const NetworkParams base = oracle::random_network(rng, 3, 2);
    NetworkParams p(7, 2);
    for (Index i = 0; i < 3; ++i) p.group(i) = base.group(i);
    for (Index i = 3; i < 7; ++i) {
      const Index src = pick(rng);
      p.group(i) = (i % 2 ? -1.0 : 1.0) * base.group(src);
      p.v()[i] = normal(rng);
    }
    p.b2() = base.b2();
    StructureTolerances exact;
    exact.dup_tol = 0.0;
    const NetworkParams r = canonical_reduce(p, exact);
    const auto unit = PenaltySpec::group_lasso(7, 1.0);
    CHECK(penalty_value(r, unit) <= penalty_value(p, unit));
    CHECK(max_io_gap(p, r, rng, 1000) <= 1e-9);
    CHECK(check_minimal(restrict_to_nonzero(r)).minimal);
  }
}

TEST_CASE("assignment matches brute force") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> unif(0.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 1 + trial % 6;
    Eigen::MatrixXd cost(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) cost(i, j) = trial % 3 == 0 ? std::floor(unif(rng)) : unif(rng);
    const auto assignment = solve_assignment(cost);
    std::vector<Index> seen(assignment);
    std::sort(seen.begin(), seen.end());
    for (Index i = 0; i < n; ++i) REQUIRE(seen[static_cast<std::size_t>(i)] == i);
    double got = 0.0;
    for (Index i = 0; i < n; ++i) got += cost(i, assignment[static_cast<std::size_t>(i)]);

    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
      double total = 0.0;
      for (Index i = 0; i < n; ++i) total += cost(i, perm[static_cast<std::size_t>(i)]);
      best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(got == doctest::Approx(best).epsilon(1e-12));
  }
  CHECK(solve_assignment(Eigen::MatrixXd(0, 0)).empty());
}

TEST_CASE("distance to the embedded reference") {
  std::mt19937_64 rng(7);
  const NetworkParams ref = oracle::random_network(rng, 3, 2);
  NetworkParams embedded(5, 2);
  for (Index i = 0; i < 3; ++i) embedded.group(i) = ref.group(i);
  embedded.b2() = ref.b2();
  CHECK(distance_to_embedded_reference(embedded, ref) == 0.0);

  NetworkParams moved(5, 2);
  moved.group(4) = -ref.group(0);
  moved.group(1) = ref.group(1);
  moved.group(2) = -ref.group(2);
  moved.b2() = ref.b2();
  CHECK(distance_to_embedded_reference(moved, ref) == 0.0);

  NetworkParams off = moved;
  off.group(3).setConstant(0.1);
  CHECK(distance_to_embedded_reference(off, ref) == doctest::Approx(0.2).epsilon(1e-14));
  off.b2() += 0.3;
  CHECK(distance_to_embedded_reference(off, ref) > 0.2);

  NetworkParams not_minimal = ref;
  not_minimal.v()[0] = 0.0;
  CHECK_THROWS_AS(distance_to_embedded_reference(embedded, not_minimal), std::invalid_argument);
  CHECK_THROWS_AS(distance_to_embedded_reference(NetworkParams(2, 2), ref), std::invalid_argument);
}

TEST_CASE("distance equals brute force and bounds explicit embeddings") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const Index H = 1 + trial % 4;
    const Index Hs = 1 + trial % std::min<Index>(H, 3);
    const NetworkParams ref = oracle::random_network(rng, Hs, 2);
    const NetworkParams cand = oracle::random_network(rng, H, 2);
    const double got = distance_to_embedded_reference(cand, ref);
    CHECK(std::abs(got - oracle::brute_force_distance(cand, ref)) <= 1e-12);

    // One explicit embedding: reference nodes in the first slots, signs as drawn.
    NetworkParams e(H, 2);
    for (Index i = 0; i < Hs; ++i) e.group(i) = (i % 2 ? -1.0 : 1.0) * ref.group(i);
    e.b2() = ref.b2();
    CHECK(got <= param_distance(cand, e) * (1.0 + 1e-12));
  }
}
