#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "roadstate/core/error.hpp"

namespace roadstate::net {

/// A batch of activations: the value matrix plus zero, one or two tangent
/// channels (directional input derivatives propagated alongside the value).
/// All matrices are width x batch, one column per sample.
struct Channels {
  Eigen::MatrixXd value;
  std::vector<Eigen::MatrixXd> tangent;

  int width() const { return static_cast<int>(value.rows()); }
  int batch() const { return static_cast<int>(value.cols()); }
  int n_tangents() const { return static_cast<int>(tangent.size()); }
};

/// Gradient container mirroring an Mlp's parameter shapes.
struct MlpGrad {
  std::vector<Eigen::MatrixXd> w;
  std::vector<Eigen::VectorXd> b;

  void set_zero() {
    for (auto& m : w) m.setZero();
    for (auto& v : b) v.setZero();
  }
};

/// Dense feedforward network with tanh hidden activations and, optionally,
/// an identity (linear) output layer. The forward pass can carry input
/// tangent channels, and the reverse pass differentiates the entire
/// value-and-tangent computation, so parameter gradients of losses built
/// from input derivatives (second-order paths) are exact.
class Mlp {
public:
  Mlp() = default;

  /// widths = [input, hidden..., output]. With linear_output the last layer
  /// has no activation; otherwise every layer is tanh.
  Mlp(std::vector<int> widths, bool linear_output);

  int input_width() const { return widths_.front(); }
  int output_width() const { return widths_.back(); }
  int n_layers() const { return static_cast<int>(w_.size()); }
  bool linear_output() const { return linear_output_; }
  const std::vector<int>& widths() const { return widths_; }

  const std::vector<Eigen::MatrixXd>& weights() const { return w_; }
  const std::vector<Eigen::VectorXd>& biases() const { return b_; }
  std::vector<Eigen::MatrixXd>& weights() { return w_; }
  std::vector<Eigen::VectorXd>& biases() { return b_; }

  /// Post-activation values (and tangents) of every layer; acts[0] is the
  /// input, acts[n_layers()] the output.
  struct Tape {
    std::vector<Channels> acts;
  };

  /// Forward pass. The tape, when supplied, captures what reverse() needs.
  Channels forward(const Channels& input, Tape* tape = nullptr) const;

  /// Accumulates parameter gradients for the given adjoint of the output
  /// channels. When input_value_adjoint is non-null it receives d(loss)/
  /// d(input values), which callers need when the input itself depends on
  /// other trainable parameters. Adjoints of the input tangent channels are
  /// not formed; every use in this project seeds tangents with constants.
  void reverse(const Tape& tape, const Channels& output_adjoint, MlpGrad& grad,
               Eigen::MatrixXd* input_value_adjoint = nullptr) const;

  /// Fan-in scaled uniform init, U(-sqrt(1/fan_in), +sqrt(1/fan_in)),
  /// biases zero. Deterministic in the engine state.
  void init(std::mt19937_64& engine);
  void init(std::uint64_t seed);

  MlpGrad make_grad() const;

  size_t n_params() const;
  void pack(double* dst) const;
  void unpack(const double* src);
  void pack_grad(const MlpGrad& grad, double* dst) const;

private:
  bool has_activation(int layer) const {
    return !(linear_output_ && layer + 1 == n_layers());
  }

  std::vector<int> widths_;
  std::vector<Eigen::MatrixXd> w_;  // out x in
  std::vector<Eigen::VectorXd> b_;
  bool linear_output_ = false;
};

}  // namespace roadstate::net
