#pragma once

#include <vector>

#include "roadstate/core/error.hpp"
#include "roadstate/core/veq.hpp"

namespace roadstate::fvm {

/// Periodic finite-volume cell array on the unit ring. For LWR runs only
/// rho is populated; ARZ runs also carry the conservative variable
/// y = rho * (v + p(rho)).
struct FvGrid {
  int n_cells = 0;
  double dx = 0.0;
  std::vector<double> rho;
  std::vector<double> y;

  bool is_arz() const { return !y.empty(); }

  double total_mass() const {
    // Neumaier-compensated sum so the conservation checks measure the
    // scheme, not the accumulator.
    double sum = 0.0, comp = 0.0;
    for (double r : rho) {
      const double t = sum + r;
      comp += (std::abs(sum) >= std::abs(r)) ? (sum - t) + r : (r - t) + sum;
      sum = t;
    }
    return (sum + comp) * dx;
  }
};

/// Scalar (LWR) grid from cell-average densities.
FvGrid make_lwr_grid(std::vector<double> rho);

/// ARZ grid from densities and velocities; y is derived via the pressure of
/// the supplied equilibrium model.
FvGrid make_arz_grid(std::vector<double> rho, const std::vector<double>& vel,
                     const core::VeqModel& veq);

/// Velocity recovered from the conservative variables, v = y/rho - p(rho).
/// Near-vacuum cells fall back to the equilibrium speed.
double recover_velocity(double rho, double y, const core::VeqModel& veq);

/// Total variation sum |rho_{i+1} - rho_i| around the ring.
double total_variation(const std::vector<double>& rho);

}  // namespace roadstate::fvm
