#include "roadstate/microsim/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "roadstate/util/io.hpp"

namespace roadstate::microsim {

void SimConfig::validate(double jam_gap) const {
  if (!(jam_gap > 0.0 && jam_gap < 1.0))
    throw ConfigError("SimConfig: jam gap must lie in (0,1)");
  if (!(mean_density > 0.0 && mean_density <= 1.0))
    throw ConfigError("SimConfig: mean_density must lie in (0,1]");
  if (n_vehicles < 0) throw ConfigError("SimConfig: n_vehicles must be >= 0");
  if (n_vehicles > 0 && n_vehicles * jam_gap > mean_density * (1.0 + 1e-9))
    throw ConfigError("SimConfig: n_vehicles * jam_gap exceeds mean_density");
  if (!(penetration > 0.0 && penetration <= 1.0))
    throw ConfigError("SimConfig: penetration must lie in (0,1]");
  if (!(dt > 0.0) || dt > 0.5 * jam_gap * (1.0 + 1e-12))
    throw ConfigError("SimConfig: dt must lie in (0, 0.5 * jam_gap]");
  if (!(horizon > 0.0)) throw ConfigError("SimConfig: horizon must be positive");
  if (warmup < 0.0) throw ConfigError("SimConfig: warmup must be >= 0");
  if (!(init_perturbation >= 0.0 && init_perturbation <= 0.45))
    throw ConfigError("SimConfig: init_perturbation must lie in [0, 0.45]");
  if (n_mea < 1) throw ConfigError("SimConfig: n_mea must be >= 1");
  for (const auto& zone : zones) zone.validate();
}

TrajectorySet simulate_from(RingState state, double jam_gap,
                            const core::VeqModel& veq,
                            const std::vector<DisturbanceZone>& zones,
                            double dt, int n_steps) {
  if (n_steps < 2) throw ConfigError("simulate_from: need at least two instants");
  const int n = static_cast<int>(state.positions.size());

  TrajectorySet traj;
  traj.n_vehicles = n;
  traj.n_steps = n_steps;
  traj.dt = dt;
  traj.horizon = dt * (n_steps - 1);
  traj.jam_gap = jam_gap;
  traj.positions.resize(static_cast<size_t>(n_steps) * n);
  traj.speeds.resize(static_cast<size_t>(n_steps) * n);

  for (int s = 0; s < n_steps; ++s) {
    const std::vector<double> speeds = ftl_speeds(state, jam_gap, veq, zones);
    std::copy(state.positions.begin(), state.positions.end(),
              traj.positions.begin() + traj.idx(s, 0));
    std::copy(speeds.begin(), speeds.end(), traj.speeds.begin() + traj.idx(s, 0));
    if (s + 1 < n_steps) state = ftl_step(state, jam_gap, veq, zones, dt);
  }
  return traj;
}

TrajectorySet run_simulation(const SimConfig& config, double jam_gap,
                             const core::VeqModel& veq) {
  config.validate(jam_gap);
  const int n = config.n_vehicles > 0
                    ? config.n_vehicles
                    : static_cast<int>(std::floor(config.mean_density / jam_gap + 1e-9));
  if (n < 1) throw ConfigError("run_simulation: configuration yields no vehicles");

  const int steps = static_cast<int>(std::ceil(config.horizon / config.dt - 1e-12));
  const double dt = config.horizon / steps;

  RingState state = uniform_ring(static_cast<size_t>(n));
  const bool equilibrium = config.regime == Regime::equilibrium;
  const std::vector<DisturbanceZone> zones =
      equilibrium ? std::vector<DisturbanceZone>{} : config.zones;

  if (equilibrium && config.init_perturbation > 0.0) {
    const double mean_gap = 1.0 / n;
    if ((1.0 - 2.0 * config.init_perturbation) * mean_gap < jam_gap)
      throw ConfigError("run_simulation: init_perturbation too large for this density");
    std::mt19937_64 engine(config.seed);
    std::uniform_real_distribution<double> jitter(-config.init_perturbation,
                                                  config.init_perturbation);
    for (double& p : state.positions) {
      p += jitter(engine) * mean_gap;
      p -= std::floor(p);
    }
  }

  if (equilibrium && config.warmup > 0.0) {
    const int warm_steps = static_cast<int>(std::llround(config.warmup / dt));
    for (int s = 0; s < warm_steps; ++s)
      state = ftl_step(state, jam_gap, veq, zones, dt);
    state.time = 0.0;  // the recorded window starts after the warmup
  }

  return simulate_from(std::move(state), jam_gap, veq, zones, dt, steps + 1);
}

ProbeDataset sample_probes(const TrajectorySet& traj, double penetration,
                           int n_mea, std::uint64_t seed) {
  const int n = traj.n_vehicles;
  const int n_probes = static_cast<int>(std::lround(penetration * n));
  if (n_probes < 1)
    throw ConfigError("sample_probes: penetration * n_vehicles must be >= 1");
  if (n_mea < 1 || n_mea > traj.n_steps)
    throw ConfigError("sample_probes: n_mea must lie in [1, n_steps]");

  std::mt19937_64 engine(seed);
  const int offset =
      static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(engine));

  std::vector<int> probe_ids(n_probes);
  for (int k = 0; k < n_probes; ++k)
    probe_ids[k] = (offset + static_cast<int>(static_cast<int64_t>(k) * n / n_probes)) % n;

  std::vector<int> steps(n_mea);
  if (n_mea == 1) {
    steps[0] = 0;
  } else {
    for (int j = 0; j < n_mea; ++j)
      steps[j] = static_cast<int>(
          std::llround(static_cast<double>(j) * (traj.n_steps - 1) / (n_mea - 1)));
  }

  ProbeDataset out;
  out.n_probes = n_probes;
  out.n_mea = n_mea;
  out.records.reserve(static_cast<size_t>(n_probes) * n_mea);
  for (int vehicle : probe_ids) {
    for (int s : steps) {
      const double* row = &traj.positions[traj.idx(s, 0)];
      double gap = row[(vehicle + 1) % n] - row[vehicle];
      if (n == 1) gap = 1.0;
      else if (gap <= 0.0) gap += 1.0;
      ProbeRecord rec;
      rec.probe = vehicle;
      rec.t = traj.time_at(s);
      rec.x = row[vehicle];
      rec.rho = spacing_density(gap, traj.jam_gap);
      rec.v = traj.speeds[traj.idx(s, vehicle)];
      out.records.push_back(rec);
    }
  }
  return out;
}

core::GridField ground_truth_grid(const TrajectorySet& traj, int n_t, int n_x) {
  core::GridField field(n_t, n_x, traj.horizon);
  const int n = traj.n_vehicles;

  std::vector<std::pair<double, int>> sorted(n);  // (position, vehicle)
  for (int it = 0; it < n_t; ++it) {
    const int s = std::min<int>(
        traj.n_steps - 1,
        static_cast<int>(std::llround(field.t_at(it) / traj.dt)));
    const double* row = &traj.positions[traj.idx(s, 0)];
    for (int i = 0; i < n; ++i) sorted[i] = {row[i], i};
    std::sort(sorted.begin(), sorted.end());

    for (int ix = 0; ix < n_x; ++ix) {
      const double x = field.x_at(ix);
      // First vehicle strictly ahead of x; its predecessor is the follower.
      const auto it_up = std::upper_bound(
          sorted.begin(), sorted.end(), std::make_pair(x, n));
      int leader = static_cast<int>(std::distance(sorted.begin(), it_up)) % n;
      int follower = (leader + n - 1) % n;
      double gap = sorted[leader].first - sorted[follower].first;
      if (n == 1) gap = 1.0;
      else if (gap <= 0.0) gap += 1.0;
      field.rho[field.idx(it, ix)] = spacing_density(gap, traj.jam_gap);
      field.vel[field.idx(it, ix)] = traj.speeds[traj.idx(s, sorted[follower].second)];
    }
  }
  return field;
}

void write_trajectories_csv(const TrajectorySet& traj, const std::string& path) {
  std::string out;
  out.reserve(static_cast<size_t>(traj.n_steps) * traj.n_vehicles * 40 + 16);
  out += "vehicle,t,x,v\n";
  for (int i = 0; i < traj.n_vehicles; ++i) {
    const std::string id = std::to_string(i);
    for (int s = 0; s < traj.n_steps; ++s) {
      out += id;
      out += ',';
      out += util::fmt_double(traj.time_at(s));
      out += ',';
      out += util::fmt_double(traj.positions[traj.idx(s, i)]);
      out += ',';
      out += util::fmt_double(traj.speeds[traj.idx(s, i)]);
      out += '\n';
    }
  }
  util::atomic_write_file(path, out);
}

void write_probes_csv(const ProbeDataset& probes, const std::string& path) {
  std::string out = "probe,t,x,rho,v\n";
  for (const auto& rec : probes.records) {
    out += std::to_string(rec.probe);
    out += ',';
    out += util::fmt_double(rec.t);
    out += ',';
    out += util::fmt_double(rec.x);
    out += ',';
    out += util::fmt_double(rec.rho);
    out += ',';
    out += util::fmt_double(rec.v);
    out += '\n';
  }
  util::atomic_write_file(path, out);
}

ProbeDataset read_probes_csv(const std::string& path) {
  std::istringstream in(util::read_file(path));
  std::string line;
  if (!std::getline(in, line) || line != "probe,t,x,rho,v")
    throw IoError(path + ": expected header 'probe,t,x,rho,v'");

  ProbeDataset out;
  std::set<int> ids;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = util::split_csv_line(line);
    if (cells.size() != 5) throw IoError(path + ": malformed row '" + line + "'");
    try {
      ProbeRecord rec;
      rec.probe = std::stoi(cells[0]);
      rec.t = std::stod(cells[1]);
      rec.x = std::stod(cells[2]);
      rec.rho = std::stod(cells[3]);
      rec.v = std::stod(cells[4]);
      out.records.push_back(rec);
      ids.insert(rec.probe);
    } catch (const std::exception&) {
      throw IoError(path + ": non-numeric row '" + line + "'");
    }
  }
  if (out.records.empty()) throw IoError(path + ": no data rows");
  out.n_probes = static_cast<int>(ids.size());
  out.n_mea = static_cast<int>(out.records.size()) / std::max(1, out.n_probes);
  return out;
}

}  // namespace roadstate::microsim
