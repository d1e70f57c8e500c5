#pragma once

#include "roadstate/core/error.hpp"

namespace roadstate::core {

/// Physical scales of a scenario. All other modules work in normalized
/// units (x, t, v, rho in [0,1]); Scales converts at I/O boundaries only.
///
/// Kinematic consistency of exported trajectories (dx/dt == v after
/// denormalization) requires v_max == road_length / horizon, which the
/// default configs satisfy. The struct itself does not enforce it.
struct Scales {
  double road_length = 6200.0;  ///< m
  double horizon = 2400.0;      ///< s
  double v_max = 6200.0 / 2400.0;  ///< m/s, free-flow speed
  double s_jam = 24.8;          ///< m, bumper-to-bumper spacing per vehicle

  void validate() const {
    if (!(road_length > 0.0 && horizon > 0.0 && v_max > 0.0 && s_jam > 0.0))
      throw ConfigError("Scales: all fields must be strictly positive");
    if (s_jam >= road_length)
      throw ConfigError("Scales: jam spacing must be smaller than the road");
  }

  /// Jam spacing in normalized ring units; the smallest admissible gap.
  double jam_gap() const { return s_jam / road_length; }

  double x_to_unit(double x_m) const { return x_m / road_length; }
  double x_from_unit(double x) const { return x * road_length; }
  double t_to_unit(double t_s) const { return t_s / horizon; }
  double t_from_unit(double t) const { return t * horizon; }
  double v_to_unit(double v_ms) const { return v_ms / v_max; }
  double v_from_unit(double v) const { return v * v_max; }
};

}  // namespace roadstate::core
