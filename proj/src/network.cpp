#include "nodeprune/network.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nodeprune/activation.hpp"
#include "nodeprune/errors.hpp"

namespace nodeprune {

NetworkParams::NetworkParams(Index hidden, Index input_dim)
    : hidden_(hidden), input_dim_(input_dim) {
  if (hidden < 0 || input_dim < 1) {
    throw ShapeError("network needs H >= 0 and d >= 1, got H=" + std::to_string(hidden) +
                     " d=" + std::to_string(input_dim));
  }
  packed_ = Eigen::VectorXd::Zero(hidden * (input_dim + 2) + 1);
}

NetworkParams NetworkParams::from_parts(const Eigen::Ref<const Eigen::MatrixXd>& u,
                                        const Eigen::Ref<const Eigen::VectorXd>& v,
                                        const Eigen::Ref<const Eigen::VectorXd>& b1, double b2) {
  if (v.size() != u.rows() || b1.size() != u.rows()) {
    throw ShapeError("u has " + std::to_string(u.rows()) + " rows but v has " + std::to_string(v.size()) +
                     " and b1 has " + std::to_string(b1.size()) + " entries");
  }
  NetworkParams params(u.rows(), u.cols());
  params.u() = u;
  params.v() = v;
  params.b1() = b1;
  params.b2() = b2;
  return params;
}

NetworkParams NetworkParams::from_packed(Index hidden, Index input_dim, Eigen::VectorXd packed) {
  NetworkParams params(hidden, input_dim);
  if (packed.size() != params.packed_.size()) {
    throw ShapeError("packed vector has length " + std::to_string(packed.size()) + ", expected " +
                     std::to_string(params.packed_.size()));
  }
  params.packed_ = std::move(packed);
  return params;
}

NetworkParams::ConstWeightMap NetworkParams::u() const {
  return ConstWeightMap(packed_.data(), hidden_, input_dim_, Eigen::OuterStride<>(group_size()));
}

NetworkParams::WeightMap NetworkParams::u() {
  return WeightMap(packed_.data(), hidden_, input_dim_, Eigen::OuterStride<>(group_size()));
}

NetworkParams::ConstNodeVectorMap NetworkParams::v() const {
  return ConstNodeVectorMap(packed_.data() + input_dim_, hidden_, Eigen::InnerStride<>(group_size()));
}

NetworkParams::NodeVectorMap NetworkParams::v() {
  return NodeVectorMap(packed_.data() + input_dim_, hidden_, Eigen::InnerStride<>(group_size()));
}

NetworkParams::ConstNodeVectorMap NetworkParams::b1() const {
  return ConstNodeVectorMap(packed_.data() + input_dim_ + 1, hidden_, Eigen::InnerStride<>(group_size()));
}

NetworkParams::NodeVectorMap NetworkParams::b1() {
  return NodeVectorMap(packed_.data() + input_dim_ + 1, hidden_, Eigen::InnerStride<>(group_size()));
}

Eigen::VectorXd NetworkParams::activation_key(Index i) const {
  Eigen::VectorXd key(input_dim_ + 1);
  key.head(input_dim_) = u().row(i).transpose();
  key[input_dim_] = b1()[i];
  return key;
}

void NetworkParams::require_finite() const {
  if (!all_finite()) {
    throw std::invalid_argument("network parameters contain NaN or Inf");
  }
}

bool NetworkParams::operator==(const NetworkParams& other) const {
  return hidden_ == other.hidden_ && input_dim_ == other.input_dim_ && packed_ == other.packed_;
}

NodeGroup node_group(const NetworkParams& params, Index i) {
  if (i < 0 || i >= params.hidden()) {
    throw std::out_of_range("node index " + std::to_string(i) + " outside [0, " +
                            std::to_string(params.hidden()) + ")");
  }
  return NodeGroup{i, params.group(i)};
}

Dataset::Dataset(Eigen::MatrixXd x, Eigen::VectorXd y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.rows() != y_.size()) {
    throw ShapeError("X has " + std::to_string(x_.rows()) + " rows but Y has " + std::to_string(y_.size()));
  }
  if (!x_.allFinite() || !y_.allFinite()) {
    throw std::invalid_argument("dataset contains NaN or Inf");
  }
}

namespace {

void check_input_dim(const NetworkParams& params, Index d) {
  if (params.input_dim() != d) {
    throw ShapeError("network expects d=" + std::to_string(params.input_dim()) + " inputs, got " +
                     std::to_string(d));
  }
}

void check_data(const NetworkParams& params, const Dataset& data) {
  if (data.n() == 0) {
    throw std::invalid_argument("empty dataset");
  }
  check_input_dim(params, data.input_dim());
}

Eigen::MatrixXd hidden_activations(const NetworkParams& params, const Eigen::Ref<const Eigen::MatrixXd>& x) {
  Eigen::MatrixXd pre = x * params.u().transpose();
  pre.rowwise() += params.b1().transpose();
  Eigen::MatrixXd act(pre.rows(), pre.cols());
  tanh_into(pre.reshaped().array(), act.reshaped().array());
  return act;
}

}  // namespace

double forward(const NetworkParams& params, const Eigen::Ref<const Eigen::VectorXd>& x) {
  check_input_dim(params, x.size());
  const Eigen::VectorXd pre = params.u() * x + params.b1();
  return params.v().dot(pre.unaryExpr([](double z) { return std::tanh(z); })) + params.b2();
}

Eigen::VectorXd predict(const NetworkParams& params, const Eigen::Ref<const Eigen::MatrixXd>& x) {
  check_input_dim(params, x.cols());
  Eigen::VectorXd out = hidden_activations(params, x) * params.v();
  out.array() += params.b2();
  return out;
}

double empirical_risk(const NetworkParams& params, const Dataset& data) {
  return RiskEvaluator(data).risk(params);
}

RiskAndGradient risk_and_gradient(const NetworkParams& params, const Dataset& data) {
  RiskAndGradient out;
  out.risk = RiskEvaluator(data).risk_and_gradient(params, out.gradient);
  return out;
}

NetworkParams risk_gradient(const NetworkParams& params, const Dataset& data) {
  return risk_and_gradient(params, data).gradient;
}

RiskEvaluator::RiskEvaluator(const Dataset& data) : data_(&data) {}

void RiskEvaluator::activate(const NetworkParams& params) {
  check_data(params, *data_);
  const Index n = data_->n();
  const Index hidden = params.hidden();
  pre_.resize(n, hidden);
  act_.resize(n, hidden);
  pre_.noalias() = data_->x() * params.u().transpose();
  pre_.rowwise() += params.b1().transpose();
  tanh_into(pre_.reshaped().array(), act_.reshaped().array());
  residual_.resize(n);
  residual_.noalias() = data_->y() - act_ * params.v();
  residual_.array() -= params.b2();
}

double RiskEvaluator::risk(const NetworkParams& params) {
  activate(params);
  return residual_.squaredNorm() / static_cast<double>(data_->n());
}

double RiskEvaluator::risk_and_gradient(const NetworkParams& params, NetworkParams& gradient) {
  activate(params);
  const double n = static_cast<double>(data_->n());
  if (gradient.hidden() != params.hidden() || gradient.input_dim() != params.input_dim()) {
    gradient = NetworkParams(params.hidden(), params.input_dim());
  }

  // d f / d(pre-activation) times the residual, per sample and node.
  signal_.resize(act_.rows(), act_.cols());
  signal_.array() = 1.0 - act_.array().square();
  signal_.array().rowwise() *= params.v().transpose().array();
  signal_.array().colwise() *= residual_.array();

  const double scale = -2.0 / n;
  gradient.u() = scale * (signal_.transpose() * data_->x());
  gradient.v() = scale * (act_.transpose() * residual_);
  gradient.b1() = scale * signal_.colwise().sum().transpose();
  gradient.b2() = scale * residual_.sum();
  return residual_.squaredNorm() / n;
}

double param_distance(const NetworkParams& a, const NetworkParams& b) {
  if (a.hidden() != b.hidden() || a.input_dim() != b.input_dim()) {
    throw ShapeError("distance needs networks of identical shape");
  }
  return (a.packed() - b.packed()).norm();
}

}  // namespace nodeprune
