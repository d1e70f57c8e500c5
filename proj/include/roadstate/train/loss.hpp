#pragma once

#include "roadstate/microsim/simulate.hpp"
#include "roadstate/net/shared_head.hpp"
#include "roadstate/net/veq_net.hpp"
#include "roadstate/train/collocation.hpp"
#include "roadstate/train/config.hpp"

namespace roadstate::train {

/// Probe measurements rearranged into dense rows for batched evaluation.
struct ProbeBatch {
  Eigen::RowVectorXd t, x, rho, v;
  int n() const { return static_cast<int>(t.size()); }
};
ProbeBatch make_probe_batch(const microsim::ProbeDataset& probes);

/// Equilibrium-speed source for the physics terms: the learned network when
/// set, the Greenshields line otherwise. `trainable` marks whether psi
/// gradients flow (stage 1 with a learned source only).
struct VeqSource {
  const net::VeqNet* learned = nullptr;
  bool trainable = false;

  double value(double rho) const {
    return learned ? learned->forward(rho).first : 1.0 - rho;
  }
  double slope(double rho) const {
    return learned ? learned->forward(rho).second : -1.0;
  }
};

struct LossParts {
  double total = 0.0, data = 0.0, physics = 0.0, penalty = 0.0;
};

struct Stage1Grads {
  net::SharedHeadNet::Grads net;
  net::MlpGrad psi;  ///< filled only when the veq source is trainable
};

/// Stage-1 loss: density data MSE + lambda-weighted mean squared LWR
/// residual over the collocation set + mu-weighted soft monotonicity
/// penalty of the learned V_eq slope on a fixed density grid.
/// Throws NumericError naming the term that went non-finite.
LossParts loss_stage1(const net::SharedHeadNet& net, const VeqSource& veq,
                      const ProbeBatch& probes, const CollocationSet& coll,
                      const StageConfig& config, Stage1Grads* grads);

using Stage2Grads = net::SharedHeadNet::Grads;

/// Stage-2 loss: two-channel data MSE + lambda-weighted mean of
/// r1^2 + r2^2 for the conservative ARZ residual with fixed tau.
/// The veq source is always frozen here.
LossParts loss_stage2(const net::SharedHeadNet& net, const VeqSource& veq,
                      const ProbeBatch& probes, const CollocationSet& coll,
                      const StageConfig& config, Stage2Grads* grads);

}  // namespace roadstate::train
