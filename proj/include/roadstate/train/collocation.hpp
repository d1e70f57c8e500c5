#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace roadstate::train {

/// Collocation points where the PDE residual is penalized.
struct CollocationSet {
  Eigen::RowVectorXd t;
  Eigen::RowVectorXd x;
  std::uint64_t seed = 0;

  int n() const { return static_cast<int>(t.size()); }
};

/// Seeded i.i.d. uniform draw over the unit square.
CollocationSet sample_collocation(int n_phys, std::uint64_t seed);

}  // namespace roadstate::train
