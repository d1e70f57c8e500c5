#include "roadstate/net/mlp.hpp"

#include <cmath>

namespace roadstate::net {

Mlp::Mlp(std::vector<int> widths, bool linear_output)
    : widths_(std::move(widths)), linear_output_(linear_output) {
  if (widths_.size() < 2) throw ConfigError("Mlp: need at least two widths");
  for (int w : widths_)
    if (w < 1) throw ConfigError("Mlp: widths must be positive");
  const size_t layers = widths_.size() - 1;
  w_.resize(layers);
  b_.resize(layers);
  for (size_t l = 0; l < layers; ++l) {
    w_[l] = Eigen::MatrixXd::Zero(widths_[l + 1], widths_[l]);
    b_[l] = Eigen::VectorXd::Zero(widths_[l + 1]);
  }
}

Channels Mlp::forward(const Channels& input, Tape* tape) const {
  if (input.width() != input_width())
    throw ConfigError("Mlp::forward: input width mismatch");
  const int k = input.n_tangents();

  if (tape) {
    tape->acts.clear();
    tape->acts.reserve(w_.size() + 1);
    tape->acts.push_back(input);
  }

  Channels act = input;
  for (int l = 0; l < n_layers(); ++l) {
    Channels next;
    next.value.noalias() = w_[l] * act.value;
    next.value.colwise() += b_[l];
    next.tangent.resize(k);
    for (int c = 0; c < k; ++c) next.tangent[c].noalias() = w_[l] * act.tangent[c];

    if (has_activation(l)) {
      next.value = next.value.array().tanh();
      if (k > 0) {
        // d tanh = (1 - tanh^2); reuse the stored post-activation values.
        const Eigen::ArrayXXd sech2 = 1.0 - next.value.array().square();
        for (int c = 0; c < k; ++c)
          next.tangent[c] = sech2 * next.tangent[c].array();
      }
    }
    act = std::move(next);
    if (tape) tape->acts.push_back(act);
  }
  return act;
}

void Mlp::reverse(const Tape& tape, const Channels& output_adjoint, MlpGrad& grad,
                  Eigen::MatrixXd* input_value_adjoint) const {
  if (tape.acts.size() != w_.size() + 1)
    throw ConfigError("Mlp::reverse: tape does not match this network");
  const int k = tape.acts.front().n_tangents();
  if (output_adjoint.n_tangents() != k)
    throw ConfigError("Mlp::reverse: adjoint tangent count mismatch");

  Channels adj = output_adjoint;  // adjoint of the current layer's output
  for (int l = n_layers() - 1; l >= 0; --l) {
    const Channels& in = tape.acts[l];
    const Channels& out = tape.acts[l + 1];

    // Adjoint of the pre-activation z, folding in the tanh Jacobian and the
    // tangent-through-activation coupling back onto the value channel.
    Channels zbar;
    if (has_activation(l)) {
      const Eigen::ArrayXXd sech2 = 1.0 - out.value.array().square();
      Eigen::ArrayXXd vbar = adj.value.array() * sech2;
      for (int c = 0; c < k; ++c)
        vbar -= 2.0 * out.value.array() * adj.tangent[c].array() * out.tangent[c].array();
      zbar.value = vbar;
      zbar.tangent.resize(k);
      for (int c = 0; c < k; ++c)
        zbar.tangent[c] = sech2 * adj.tangent[c].array();
    } else {
      zbar = std::move(adj);
    }

    grad.w[l].noalias() += zbar.value * in.value.transpose();
    for (int c = 0; c < k; ++c)
      grad.w[l].noalias() += zbar.tangent[c] * in.tangent[c].transpose();
    grad.b[l].noalias() += zbar.value.rowwise().sum();

    if (l > 0) {
      Channels prev;
      prev.value.noalias() = w_[l].transpose() * zbar.value;
      prev.tangent.resize(k);
      for (int c = 0; c < k; ++c)
        prev.tangent[c].noalias() = w_[l].transpose() * zbar.tangent[c];
      adj = std::move(prev);
    } else if (input_value_adjoint) {
      input_value_adjoint->noalias() = w_[0].transpose() * zbar.value;
    }
  }
}

void Mlp::init(std::mt19937_64& engine) {
  for (size_t l = 0; l < w_.size(); ++l) {
    const double bound = std::sqrt(1.0 / widths_[l]);
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (Eigen::Index r = 0; r < w_[l].rows(); ++r)
      for (Eigen::Index c = 0; c < w_[l].cols(); ++c) w_[l](r, c) = dist(engine);
    b_[l].setZero();
  }
}

void Mlp::init(std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  init(engine);
}

MlpGrad Mlp::make_grad() const {
  MlpGrad grad;
  grad.w.resize(w_.size());
  grad.b.resize(b_.size());
  for (size_t l = 0; l < w_.size(); ++l) {
    grad.w[l] = Eigen::MatrixXd::Zero(w_[l].rows(), w_[l].cols());
    grad.b[l] = Eigen::VectorXd::Zero(b_[l].size());
  }
  return grad;
}

size_t Mlp::n_params() const {
  size_t n = 0;
  for (size_t l = 0; l < w_.size(); ++l)
    n += static_cast<size_t>(w_[l].size()) + static_cast<size_t>(b_[l].size());
  return n;
}

void Mlp::pack(double* dst) const {
  for (size_t l = 0; l < w_.size(); ++l) {
    for (Eigen::Index r = 0; r < w_[l].rows(); ++r)
      for (Eigen::Index c = 0; c < w_[l].cols(); ++c) *dst++ = w_[l](r, c);
    for (Eigen::Index r = 0; r < b_[l].size(); ++r) *dst++ = b_[l](r);
  }
}

void Mlp::unpack(const double* src) {
  for (size_t l = 0; l < w_.size(); ++l) {
    for (Eigen::Index r = 0; r < w_[l].rows(); ++r)
      for (Eigen::Index c = 0; c < w_[l].cols(); ++c) w_[l](r, c) = *src++;
    for (Eigen::Index r = 0; r < b_[l].size(); ++r) b_[l](r) = *src++;
  }
}

void Mlp::pack_grad(const MlpGrad& grad, double* dst) const {
  for (size_t l = 0; l < w_.size(); ++l) {
    for (Eigen::Index r = 0; r < grad.w[l].rows(); ++r)
      for (Eigen::Index c = 0; c < grad.w[l].cols(); ++c) *dst++ = grad.w[l](r, c);
    for (Eigen::Index r = 0; r < grad.b[l].size(); ++r) *dst++ = grad.b[l](r);
  }
}

}  // namespace roadstate::net
