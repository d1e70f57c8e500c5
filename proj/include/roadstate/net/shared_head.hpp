#pragma once

#include <cstdint>

#include "roadstate/net/mlp.hpp"

namespace roadstate::net {

/// Ring-aware input embedding shared by all state networks:
/// (t, x) -> (2t - 1, cos 2 pi x, sin 2 pi x). x is wrapped into [0,1)
/// first, so the network is exactly periodic in space. Tangent channel 0
/// carries d/dt, channel 1 carries d/dx.
Channels embed_time_space(const Eigen::RowVectorXd& t,
                          const Eigen::RowVectorXd& x, int n_tangents);

/// Feature network with linear read-out heads: rho = features(t,x)^T h_rho
/// and, when present, v = features(t,x)^T h_v. The density-only variant is
/// the stage-1 network; adding the velocity head on top of trained features
/// is the stage-2 warm start.
class SharedHeadNet {
public:
  SharedHeadNet() = default;

  /// feature_hidden: hidden layer widths (all tanh); the last entry is the
  /// feature dimension the heads read.
  SharedHeadNet(const std::vector<int>& feature_hidden, bool with_v_head);

  bool has_v_head() const { return has_v_head_; }
  int n_features() const { return features_.output_width(); }

  const Mlp& features() const { return features_; }
  Mlp& features() { return features_; }
  const Eigen::VectorXd& head_rho() const { return head_rho_; }
  Eigen::VectorXd& head_rho() { return head_rho_; }
  const Eigen::VectorXd& head_v() const { return head_v_; }
  Eigen::VectorXd& head_v() { return head_v_; }

  /// Seeded init of features and heads (heads get small uniform weights).
  void init(std::uint64_t seed);

  /// Attaches a freshly initialized velocity head, keeping everything else.
  void add_v_head(std::uint64_t seed);

  struct PointValues {
    double rho = 0.0;
    double v = 0.0;  ///< 0 when the network has no velocity head
  };
  PointValues forward(double t, double x) const;

  struct PointDerivs {
    double rho = 0.0, rho_t = 0.0, rho_x = 0.0;
    double v = 0.0, v_t = 0.0, v_x = 0.0;
  };
  /// Values and exact input derivatives of both heads.
  PointDerivs forward_with_input_derivs(double t, double x) const;

  // Batched interface used by the trainer. Row vectors hold one entry per
  // sample; derivative rows are filled only when n_tangents == 2.
  struct BatchEval {
    Mlp::Tape tape;
    Eigen::RowVectorXd rho, v;
    Eigen::RowVectorXd rho_t, rho_x, v_t, v_x;
    int n_tangents = 0;
  };
  void eval_batch(const Eigen::RowVectorXd& t, const Eigen::RowVectorXd& x,
                  int n_tangents, BatchEval& out) const;

  /// Adjoints of the batched outputs; empty rows mean zero.
  struct BatchAdjoint {
    Eigen::RowVectorXd rho, rho_t, rho_x, v, v_t, v_x;
  };

  struct Grads {
    MlpGrad features;
    Eigen::VectorXd head_rho;
    Eigen::VectorXd head_v;
    void set_zero() {
      features.set_zero();
      head_rho.setZero();
      head_v.setZero();
    }
  };
  Grads make_grads() const;

  /// Backpropagates head adjoints through the heads and the feature net.
  void reverse_batch(const BatchEval& eval, const BatchAdjoint& adjoint,
                     Grads& grads) const;

  size_t n_params() const;
  void pack(double* dst) const;
  void unpack(const double* src);
  void pack_grad(const Grads& grads, double* dst) const;

private:
  Mlp features_;
  Eigen::VectorXd head_rho_;
  Eigen::VectorXd head_v_;
  bool has_v_head_ = false;
};

}  // namespace roadstate::net
