#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace nodeprune {

using Index = Eigen::Index;

/**
 * Parameters (u, v, b1, b2) of a one-hidden-layer tanh network
 *
 *   f(x) = v^T tanh(u x + b1) + b2,   u: H x d,  v, b1: length H.
 *
 * Storage is node-major: the packed vector is (w_0, ..., w_{H-1}, b2) with
 * w_i = (u[i, 0..d-1], v[i], b1[i]). Each node group is a contiguous block of
 * d + 2 doubles, so prox steps and group norms never stride. The u, v and b1
 * accessors are strided Eigen maps onto the same storage.
 */
class NetworkParams {
 public:
  using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using WeightMap = Eigen::Map<RowMajorMatrix, 0, Eigen::OuterStride<>>;
  using ConstWeightMap = Eigen::Map<const RowMajorMatrix, 0, Eigen::OuterStride<>>;
  using NodeVectorMap = Eigen::Map<Eigen::VectorXd, 0, Eigen::InnerStride<>>;
  using ConstNodeVectorMap = Eigen::Map<const Eigen::VectorXd, 0, Eigen::InnerStride<>>;

  NetworkParams() = default;

  /// All-zero network with `hidden` nodes on `input_dim` inputs.
  NetworkParams(Index hidden, Index input_dim);

  static NetworkParams from_parts(const Eigen::Ref<const Eigen::MatrixXd>& u,
                                  const Eigen::Ref<const Eigen::VectorXd>& v,
                                  const Eigen::Ref<const Eigen::VectorXd>& b1, double b2);

  /// Wraps an already packed node-major vector of length H*(d+2)+1.
  static NetworkParams from_packed(Index hidden, Index input_dim, Eigen::VectorXd packed);

  Index hidden() const { return hidden_; }
  Index input_dim() const { return input_dim_; }
  Index group_size() const { return input_dim_ + 2; }

  ConstWeightMap u() const;
  WeightMap u();
  ConstNodeVectorMap v() const;
  NodeVectorMap v();
  ConstNodeVectorMap b1() const;
  NodeVectorMap b1();
  double b2() const { return packed_[packed_.size() - 1]; }
  double& b2() { return packed_[packed_.size() - 1]; }

  /// w_i as a contiguous view.
  auto group(Index i) const { return packed_.segment(i * group_size(), group_size()); }
  auto group(Index i) { return packed_.segment(i * group_size(), group_size()); }

  /// (u[i, :], b1[i]): the part of a node that determines its activation.
  Eigen::VectorXd activation_key(Index i) const;

  const Eigen::VectorXd& packed() const { return packed_; }
  Eigen::VectorXd& packed() { return packed_; }

  /// True when every coordinate is finite.
  bool all_finite() const { return packed_.allFinite(); }
  /// Throws std::invalid_argument when some coordinate is NaN/Inf.
  void require_finite() const;

  bool operator==(const NetworkParams& other) const;

 private:
  Index hidden_ = 0;
  Index input_dim_ = 0;
  Eigen::VectorXd packed_ = Eigen::VectorXd::Zero(1);
};

/// The d+2 parameters owned by one hidden node, laid out as (u row, v, b1).
struct NodeGroup {
  Index node_index = 0;
  Eigen::VectorXd values;
};

NodeGroup node_group(const NetworkParams& params, Index i);

/// Paired regression sample: X is n x d, Y has length n.
class Dataset {
 public:
  Dataset() = default;
  /// Validates row agreement and finiteness.
  Dataset(Eigen::MatrixXd x, Eigen::VectorXd y);

  const Eigen::MatrixXd& x() const { return x_; }
  const Eigen::VectorXd& y() const { return y_; }
  Index n() const { return y_.size(); }
  Index input_dim() const { return x_.cols(); }

 private:
  Eigen::MatrixXd x_;
  Eigen::VectorXd y_;
};

double forward(const NetworkParams& params, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Network outputs for every row of `x`.
Eigen::VectorXd predict(const NetworkParams& params, const Eigen::Ref<const Eigen::MatrixXd>& x);

/// R_n = (1/n) sum_k (Y_k - f(X_k))^2.
double empirical_risk(const NetworkParams& params, const Dataset& data);

struct RiskAndGradient {
  double risk = 0.0;
  NetworkParams gradient;
};

/// Empirical risk and its analytic gradient in one pass over the data.
RiskAndGradient risk_and_gradient(const NetworkParams& params, const Dataset& data);

/// dR_n/d(alpha), shaped like `params`.
NetworkParams risk_gradient(const NetworkParams& params, const Dataset& data);

/**
 * Repeated risk/gradient evaluation on one dataset with reusable n x H
 * buffers. The dataset must outlive the evaluator. Not thread-safe; use one
 * evaluator per fit.
 */
class RiskEvaluator {
 public:
  explicit RiskEvaluator(const Dataset& data);

  double risk(const NetworkParams& params);
  /// Writes dR_n/d(alpha) into `gradient` (resized if needed) and returns R_n.
  double risk_and_gradient(const NetworkParams& params, NetworkParams& gradient);

 private:
  void activate(const NetworkParams& params);

  const Dataset* data_;
  Eigen::MatrixXd pre_;
  Eigen::MatrixXd act_;
  Eigen::MatrixXd signal_;
  Eigen::VectorXd residual_;
};

/// Euclidean distance between packed vectors (b2 included).
double param_distance(const NetworkParams& a, const NetworkParams& b);

}  // namespace nodeprune
