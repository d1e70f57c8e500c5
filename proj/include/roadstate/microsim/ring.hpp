#pragma once

#include <vector>

#include "roadstate/core/error.hpp"
#include "roadstate/core/veq.hpp"

namespace roadstate::microsim {

/// Positions of all vehicles on the unit ring at one instant. Vehicle i
/// follows vehicle i+1 (mod n); the cyclic order never changes and every
/// forward gap stays at or above the jam gap.
struct RingState {
  std::vector<double> positions;  ///< in [0,1), cyclically increasing in index
  double time = 0.0;              ///< normalized
};

/// Spatiotemporal speed limit: any vehicle inside [t_start,t_end] x
/// [x_start,x_end] cannot exceed v_cap. Models an exogenous disturbance.
struct DisturbanceZone {
  double t_start = 0.0;
  double t_end = 0.0;
  double x_start = 0.0;
  double x_end = 0.0;
  double v_cap = 0.0;  ///< normalized, in [0,1)

  void validate() const {
    if (!(t_start < t_end))
      throw ConfigError("DisturbanceZone: t_start must precede t_end");
    if (!(v_cap >= 0.0 && v_cap < 1.0))
      throw ConfigError("DisturbanceZone: v_cap must lie in [0,1)");
    if (!(x_start >= 0.0 && x_end <= 1.0 && x_start < x_end))
      throw ConfigError("DisturbanceZone: need 0 <= x_start < x_end <= 1");
  }

  bool contains(double t, double x) const {
    return t >= t_start && t <= t_end && x >= x_start && x <= x_end;
  }
};

/// Forward gap of vehicle i, computed modulo 1.
double cyclic_gap(const std::vector<double>& positions, size_t i);

/// Local density seen by a vehicle with the given forward gap:
/// jam_gap / gap in (0,1]. Throws DomainError when the gap is below jam_gap.
double spacing_density(double gap, double jam_gap);

/// Speeds commanded by the follow-the-leader rule at the state's time:
/// v_i = min(V_eq(jam_gap / g_i), caps of zones containing the vehicle).
std::vector<double> ftl_speeds(const RingState& state, double jam_gap,
                               const core::VeqModel& veq,
                               const std::vector<DisturbanceZone>& zones);

/// One explicit Euler step of the follow-the-leader dynamics. dt must obey
/// dt <= 0.5 * jam_gap (normalized V_max = 1) so ordering is preserved;
/// violations of the no-overlap invariant raise StepSizeError.
RingState ftl_step(const RingState& state, double jam_gap,
                   const core::VeqModel& veq,
                   const std::vector<DisturbanceZone>& zones, double dt);

/// Evenly spaced vehicles: positions i/n.
RingState uniform_ring(size_t n);

/// Vehicles placed so the spacing density approximates a smooth profile
/// rho0(x) > 0 (rescaled internally so that n vehicles fit the ring).
RingState ring_from_density_profile(const std::vector<double>& rho0_samples,
                                    size_t n, double jam_gap);

}  // namespace roadstate::microsim
