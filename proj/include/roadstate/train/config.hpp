#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace roadstate::train {

/// Hyperparameters of one training stage. A single struct serves both
/// stages; mu/n_pen/learn_veq apply to stage 1 only, tau/warm_start/
/// train_features to stage 2 only.
struct StageConfig {
  double lambda = 0.1;          ///< physics weight
  double mu = 1.0;              ///< monotonicity penalty weight (stage 1)
  double tau = 10.0 / 2400.0;   ///< relaxation time, normalized (stage 2)
  int n_phys = 2048;            ///< collocation points
  int n_pen = 101;              ///< penalty grid size (stage 1)
  int iterations = 4000;
  double lr = 2e-3;
  double lr_final = -1.0;       ///< <0 means constant lr
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  bool learn_veq = true;        ///< stage 1: train psi vs fixed Greenshields
  bool warm_start = true;       ///< stage 2: reuse stage-1 features + rho head
  bool train_features = true;   ///< stage 2: keep theta1 trainable
  bool resample_collocation = false;
  std::vector<int> feature_hidden{32, 32, 32};
  std::vector<int> psi_hidden{32, 32};
  std::uint64_t seed = 0;

  void validate(int stage) const;
  nlohmann::json to_json() const;
  static StageConfig from_json(const nlohmann::json& j, int stage);
  static StageConfig stage1_defaults();
  static StageConfig stage2_defaults();
};

enum class TrainStatus { ok, diverged };

struct LossTraceEntry {
  int iter = 0;
  double total = 0.0, data = 0.0, physics = 0.0, penalty = 0.0;
};

struct TrainReport {
  int stage = 1;
  std::uint64_t seed = 0;
  int iterations_run = 0;
  std::vector<LossTraceEntry> trace;
  int best_iter = 0;
  double best_loss = 0.0;
  double final_loss = 0.0;
  double wall_time_s = 0.0;
  TrainStatus status = TrainStatus::ok;
  std::string message;

  nlohmann::json to_json() const;
};

}  // namespace roadstate::train
