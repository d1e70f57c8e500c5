#include "roadstate/net/shared_head.hpp"

#include <cmath>
#include <numbers>

namespace roadstate::net {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Channels embed_time_space(const Eigen::RowVectorXd& t,
                          const Eigen::RowVectorXd& x, int n_tangents) {
  if (t.size() != x.size())
    throw ConfigError("embed_time_space: t/x size mismatch");
  if (n_tangents != 0 && n_tangents != 2)
    throw ConfigError("embed_time_space: tangent count must be 0 or 2");
  const Eigen::Index n = t.size();

  Channels out;
  out.value.resize(3, n);
  out.tangent.resize(n_tangents);
  for (auto& m : out.tangent) m.resize(3, n);

  for (Eigen::Index j = 0; j < n; ++j) {
    const double xw = x[j] - std::floor(x[j]);  // exact spatial periodicity
    const double c = std::cos(kTwoPi * xw);
    const double s = std::sin(kTwoPi * xw);
    out.value(0, j) = 2.0 * t[j] - 1.0;
    out.value(1, j) = c;
    out.value(2, j) = s;
    if (n_tangents == 2) {
      out.tangent[0](0, j) = 2.0;
      out.tangent[0](1, j) = 0.0;
      out.tangent[0](2, j) = 0.0;
      out.tangent[1](0, j) = 0.0;
      out.tangent[1](1, j) = -kTwoPi * s;
      out.tangent[1](2, j) = kTwoPi * c;
    }
  }
  return out;
}

SharedHeadNet::SharedHeadNet(const std::vector<int>& feature_hidden,
                             bool with_v_head)
    : has_v_head_(with_v_head) {
  if (feature_hidden.empty())
    throw ConfigError("SharedHeadNet: need at least one hidden layer");
  std::vector<int> widths;
  widths.reserve(feature_hidden.size() + 1);
  widths.push_back(3);  // embedded (t, x)
  widths.insert(widths.end(), feature_hidden.begin(), feature_hidden.end());
  features_ = Mlp(widths, /*linear_output=*/false);
  head_rho_ = Eigen::VectorXd::Zero(n_features());
  head_v_ = Eigen::VectorXd::Zero(has_v_head_ ? n_features() : 0);
}

namespace {
void init_head(Eigen::VectorXd& head, std::mt19937_64& engine) {
  const double bound = 1.0 / static_cast<double>(head.size());
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (Eigen::Index i = 0; i < head.size(); ++i) head[i] = dist(engine);
}
}  // namespace

void SharedHeadNet::init(std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  features_.init(engine);
  init_head(head_rho_, engine);
  if (has_v_head_) init_head(head_v_, engine);
}

void SharedHeadNet::add_v_head(std::uint64_t seed) {
  has_v_head_ = true;
  head_v_ = Eigen::VectorXd::Zero(n_features());
  std::mt19937_64 engine(seed);
  init_head(head_v_, engine);
}

void SharedHeadNet::eval_batch(const Eigen::RowVectorXd& t,
                               const Eigen::RowVectorXd& x, int n_tangents,
                               BatchEval& out) const {
  const Channels input = embed_time_space(t, x, n_tangents);
  out.n_tangents = n_tangents;
  const Channels feats = features_.forward(input, &out.tape);

  out.rho.noalias() = head_rho_.transpose() * feats.value;
  if (has_v_head_) out.v.noalias() = head_v_.transpose() * feats.value;
  if (n_tangents == 2) {
    out.rho_t.noalias() = head_rho_.transpose() * feats.tangent[0];
    out.rho_x.noalias() = head_rho_.transpose() * feats.tangent[1];
    if (has_v_head_) {
      out.v_t.noalias() = head_v_.transpose() * feats.tangent[0];
      out.v_x.noalias() = head_v_.transpose() * feats.tangent[1];
    }
  }
}

SharedHeadNet::PointValues SharedHeadNet::forward(double t, double x) const {
  BatchEval eval;
  Eigen::RowVectorXd tv(1), xv(1);
  tv[0] = t;
  xv[0] = x;
  eval_batch(tv, xv, 0, eval);
  PointValues out;
  out.rho = eval.rho[0];
  if (has_v_head_) out.v = eval.v[0];
  return out;
}

SharedHeadNet::PointDerivs SharedHeadNet::forward_with_input_derivs(
    double t, double x) const {
  BatchEval eval;
  Eigen::RowVectorXd tv(1), xv(1);
  tv[0] = t;
  xv[0] = x;
  eval_batch(tv, xv, 2, eval);
  PointDerivs out;
  out.rho = eval.rho[0];
  out.rho_t = eval.rho_t[0];
  out.rho_x = eval.rho_x[0];
  if (has_v_head_) {
    out.v = eval.v[0];
    out.v_t = eval.v_t[0];
    out.v_x = eval.v_x[0];
  }
  return out;
}

SharedHeadNet::Grads SharedHeadNet::make_grads() const {
  Grads grads;
  grads.features = features_.make_grad();
  grads.head_rho = Eigen::VectorXd::Zero(n_features());
  grads.head_v = Eigen::VectorXd::Zero(head_v_.size());
  return grads;
}

void SharedHeadNet::reverse_batch(const BatchEval& eval,
                                  const BatchAdjoint& adjoint,
                                  Grads& grads) const {
  const Channels& feats = eval.tape.acts.back();
  const int batch = feats.batch();
  const int k = eval.n_tangents;

  Channels fbar;
  fbar.value = Eigen::MatrixXd::Zero(n_features(), batch);
  fbar.tangent.assign(k, Eigen::MatrixXd::Zero(n_features(), batch));

  // Each head output channel contributes head * adjoint_row to the feature
  // adjoint of the matching channel, and feats_channel * adjoint^T to the
  // head gradient.
  auto contract = [&](const Eigen::VectorXd& head, Eigen::VectorXd& head_grad,
                      const Eigen::RowVectorXd& adj, int channel) {
    if (adj.size() == 0) return;
    if (adj.size() != batch)
      throw ConfigError("reverse_batch: adjoint row has wrong batch size");
    const Eigen::MatrixXd& f =
        channel < 0 ? feats.value : feats.tangent[channel];
    Eigen::MatrixXd& target = channel < 0 ? fbar.value : fbar.tangent[channel];
    target.noalias() += head * adj;
    head_grad.noalias() += f * adj.transpose();
  };

  contract(head_rho_, grads.head_rho, adjoint.rho, -1);
  if (k == 2) {
    contract(head_rho_, grads.head_rho, adjoint.rho_t, 0);
    contract(head_rho_, grads.head_rho, adjoint.rho_x, 1);
  }
  if (has_v_head_) {
    contract(head_v_, grads.head_v, adjoint.v, -1);
    if (k == 2) {
      contract(head_v_, grads.head_v, adjoint.v_t, 0);
      contract(head_v_, grads.head_v, adjoint.v_x, 1);
    }
  }

  features_.reverse(eval.tape, fbar, grads.features);
}

size_t SharedHeadNet::n_params() const {
  return features_.n_params() + static_cast<size_t>(head_rho_.size()) +
         static_cast<size_t>(head_v_.size());
}

void SharedHeadNet::pack(double* dst) const {
  features_.pack(dst);
  dst += features_.n_params();
  for (Eigen::Index i = 0; i < head_rho_.size(); ++i) *dst++ = head_rho_[i];
  for (Eigen::Index i = 0; i < head_v_.size(); ++i) *dst++ = head_v_[i];
}

void SharedHeadNet::unpack(const double* src) {
  features_.unpack(src);
  src += features_.n_params();
  for (Eigen::Index i = 0; i < head_rho_.size(); ++i) head_rho_[i] = *src++;
  for (Eigen::Index i = 0; i < head_v_.size(); ++i) head_v_[i] = *src++;
}

void SharedHeadNet::pack_grad(const Grads& grads, double* dst) const {
  features_.pack_grad(grads.features, dst);
  dst += features_.n_params();
  for (Eigen::Index i = 0; i < grads.head_rho.size(); ++i) *dst++ = grads.head_rho[i];
  for (Eigen::Index i = 0; i < grads.head_v.size(); ++i) *dst++ = grads.head_v[i];
}

}  // namespace roadstate::net
