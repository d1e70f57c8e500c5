#pragma once

#include <cstdint>
#include <utility>

#include "roadstate/core/veq.hpp"
#include "roadstate/net/mlp.hpp"

namespace roadstate::net {

/// Learned equilibrium speed V(rho) = (1 + psi(rho) * rho) * (1 - rho),
/// normalized V_max = 1. The factorization pins V(0) = 1 and V(1) = 0 for
/// every parameter value while psi remains a universal approximator of the
/// residual shape, so any admissible fundamental diagram is reachable.
class VeqNet final : public core::VeqModel {
public:
  VeqNet();
  /// hidden = widths of psi's hidden layers; psi maps rho to one scalar.
  explicit VeqNet(const std::vector<int>& hidden);

  double value(double rho) const override;
  double slope(double rho) const override;
  std::string name() const override { return "learned"; }

  /// (V, dV/drho) with exact derivatives through psi.
  std::pair<double, double> forward(double rho) const;

  void init(std::uint64_t seed);

  const Mlp& psi() const { return psi_; }
  Mlp& psi() { return psi_; }

  struct BatchEval {
    Mlp::Tape tape;
    Eigen::RowVectorXd rho;
    Eigen::RowVectorXd psi, psi_p;
    Eigen::RowVectorXd value, slope;
  };
  void eval_batch(const Eigen::RowVectorXd& rho, BatchEval& out) const;

  /// Backpropagates adjoints of (value, slope). psi_grad may be null when
  /// the parameters are frozen; rho_adjoint may be null when the densities
  /// are fixed inputs. rho_adjoint receives value_adj * V' + slope_adj * V''
  /// (the full second-order chain through psi).
  void reverse_batch(const BatchEval& eval, const Eigen::RowVectorXd& value_adj,
                     const Eigen::RowVectorXd& slope_adj, MlpGrad* psi_grad,
                     Eigen::RowVectorXd* rho_adjoint) const;

  size_t n_params() const { return psi_.n_params(); }

private:
  Mlp psi_;
};

}  // namespace roadstate::net
