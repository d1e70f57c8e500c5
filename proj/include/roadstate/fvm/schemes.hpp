#pragma once

#include <vector>

#include "roadstate/core/grid_field.hpp"
#include "roadstate/fvm/grid.hpp"

namespace roadstate::fvm {

/// Godunov scheme for the scalar LWR conservation law with flux
/// f(rho) = rho * V_eq(rho). Interface fluxes use Osher's min/max form,
/// evaluated over a dense tabulation of f so arbitrary (monotone or not)
/// learned equilibrium models are handled.
class GodunovLwr {
public:
  explicit GodunovLwr(const core::VeqModel& veq, int table_size = 4096);

  /// Godunov numerical flux between left and right cell states.
  double flux(double rho_left, double rho_right) const;

  /// Upper bound on |f'(rho)| over [0,1], for CFL control.
  double max_wave_speed() const { return max_wave_speed_; }

  /// One conservative update. Requires dt * max_wave_speed() <= dx.
  FvGrid step(const FvGrid& grid, double dt) const;

private:
  std::vector<double> table_;  // f at j / table_size
  // Sparse tables for O(1) range min/max over table indices.
  std::vector<std::vector<double>> sparse_min_, sparse_max_;
  double h_ = 0.0;
  double max_wave_speed_ = 0.0;
};

/// HLL scheme with exact exponential relaxation for the nonhomogeneous ARZ
/// system in conservative (rho, y) variables.
class ArzScheme {
public:
  ArzScheme(const core::VeqModel& veq, double tau);

  /// Largest characteristic speed magnitude over the grid, for CFL control.
  double max_wave_speed(const FvGrid& grid) const;

  /// Hyperbolic HLL substep followed by the exact relaxation substep.
  FvGrid step(const FvGrid& grid, double dt) const;

  double tau() const { return tau_; }

private:
  const core::VeqModel& veq_;
  double tau_;
};

/// Single-step conveniences mirroring the scheme classes.
FvGrid godunov_lwr_step(const FvGrid& grid, const core::VeqModel& veq, double dt);
FvGrid arz_step(const FvGrid& grid, const core::VeqModel& veq, double tau, double dt);

enum class Model { lwr, arz };

struct SolveOptions {
  Model model = Model::lwr;
  double tau = 10.0 / 2400.0;  ///< ARZ relaxation time, normalized
  double horizon = 1.0;
  int n_t = 256;               ///< output time samples
  double cfl = 0.45;
};

/// Time-marches with automatic CFL-limited steps (clipped to land exactly on
/// the output instants) and samples the solution as a GridField with
/// n_x = n_cells.
core::GridField solve(const FvGrid& initial, const core::VeqModel& veq,
                      const SolveOptions& options);

}  // namespace roadstate::fvm
