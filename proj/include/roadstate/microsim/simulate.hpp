#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "roadstate/core/grid_field.hpp"
#include "roadstate/microsim/ring.hpp"

namespace roadstate::microsim {

enum class Regime { equilibrium, transient };

struct SimConfig {
  int n_vehicles = 100;        ///< 0 derives the count from mean_density
  double mean_density = 0.4;   ///< insertion target, normalized
  Regime regime = Regime::equilibrium;
  std::vector<DisturbanceZone> zones;  ///< transient regime only
  double penetration = 0.02;   ///< fraction of probe vehicles
  double dt = 1e-3;            ///< integration step, normalized
  double horizon = 1.0;        ///< recorded duration, normalized
  double warmup = 0.5;         ///< discarded lead-in (equilibrium only)
  double init_perturbation = 0.05;  ///< initial jitter, fraction of mean gap
  int n_mea = 500;             ///< measurements per probe
  std::uint64_t seed = 1;

  void validate(double jam_gap) const;
};

/// Per-vehicle time series over the recorded window. Positions and speeds
/// are stored step-major: positions[s * n_vehicles + i].
struct TrajectorySet {
  int n_vehicles = 0;
  int n_steps = 0;       ///< recorded instants (including both endpoints)
  double dt = 0.0;       ///< effective step, horizon / (n_steps - 1)
  double horizon = 1.0;
  double jam_gap = 0.0;
  std::vector<double> positions;
  std::vector<double> speeds;

  size_t idx(int step, int vehicle) const {
    return static_cast<size_t>(step) * n_vehicles + vehicle;
  }
  double time_at(int step) const { return dt * step; }
};

struct ProbeRecord {
  int probe = 0;     ///< vehicle id
  double t = 0.0;
  double x = 0.0;
  double rho = 0.0;  ///< spacing density of the probe's forward gap
  double v = 0.0;
};

/// The sparse measurement set used for training.
struct ProbeDataset {
  std::vector<ProbeRecord> records;  ///< probe-major, times increasing
  int n_probes = 0;
  int n_mea = 0;
};

/// Runs the follow-the-leader simulation for the configured regime.
/// Deterministic given (config, jam_gap): equilibrium runs start from
/// uniform spacing plus a seeded perturbation and discard the warmup;
/// transient runs start from exactly uniform spacing and apply the zones.
TrajectorySet run_simulation(const SimConfig& config, double jam_gap,
                             const core::VeqModel& veq);

/// Lower-level driver: integrates n_steps - 1 explicit Euler steps from the
/// given state, recording every instant.
TrajectorySet simulate_from(RingState state, double jam_gap,
                            const core::VeqModel& veq,
                            const std::vector<DisturbanceZone>& zones,
                            double dt, int n_steps);

/// Selects round(penetration * n) probes at evenly spaced vehicle indices
/// (rotated by a seeded offset) and samples each at n_mea evenly spaced
/// record times.
ProbeDataset sample_probes(const TrajectorySet& traj, double penetration,
                           int n_mea, std::uint64_t seed);

/// Dense ground-truth field: at each grid node, the spacing density of the
/// vehicle pair straddling that position (nearest recorded step in time)
/// and the speed of the pair's follower.
core::GridField ground_truth_grid(const TrajectorySet& traj, int n_t, int n_x);

/// CSV with header `vehicle,t,x,v`, one row per (vehicle, step).
void write_trajectories_csv(const TrajectorySet& traj, const std::string& path);

/// CSV with header `probe,t,x,rho,v`.
void write_probes_csv(const ProbeDataset& probes, const std::string& path);
ProbeDataset read_probes_csv(const std::string& path);

}  // namespace roadstate::microsim
