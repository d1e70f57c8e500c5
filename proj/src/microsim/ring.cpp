#include "roadstate/microsim/ring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace roadstate::microsim {

namespace {
double wrap_unit(double x) {
  double w = x - std::floor(x);
  if (w >= 1.0) w = 0.0;  // x was a tiny negative, floor rounded to -1
  return w;
}
}  // namespace

double cyclic_gap(const std::vector<double>& positions, size_t i) {
  const size_t n = positions.size();
  const double raw = positions[(i + 1) % n] - positions[i];
  // The single-vehicle ring is its own leader with gap 1.
  if (n == 1) return 1.0;
  return raw > 0.0 ? raw : raw + 1.0;
}

double spacing_density(double gap, double jam_gap) {
  if (!(jam_gap > 0.0)) throw ConfigError("spacing_density: jam_gap must be positive");
  if (!(gap >= jam_gap * (1.0 - 1e-12)))
    throw DomainError("spacing_density: gap below jam spacing");
  return std::min(jam_gap / gap, 1.0);
}

std::vector<double> ftl_speeds(const RingState& state, double jam_gap,
                               const core::VeqModel& veq,
                               const std::vector<DisturbanceZone>& zones) {
  const size_t n = state.positions.size();
  std::vector<double> speeds(n);
  for (size_t i = 0; i < n; ++i) {
    const double rho = spacing_density(cyclic_gap(state.positions, i), jam_gap);
    double v = veq.value(rho);
    for (const auto& zone : zones)
      if (zone.contains(state.time, state.positions[i])) v = std::min(v, zone.v_cap);
    speeds[i] = v;
  }
  return speeds;
}

RingState ftl_step(const RingState& state, double jam_gap,
                   const core::VeqModel& veq,
                   const std::vector<DisturbanceZone>& zones, double dt) {
  if (!(dt > 0.0)) throw StepSizeError("ftl_step: dt must be positive");
  if (dt > 0.5 * jam_gap * (1.0 + 1e-12))
    throw StepSizeError("ftl_step: dt exceeds 0.5 * jam_gap ordering bound");

  const std::vector<double> speeds = ftl_speeds(state, jam_gap, veq, zones);
  RingState next;
  next.time = state.time + dt;
  next.positions.resize(state.positions.size());
  for (size_t i = 0; i < state.positions.size(); ++i)
    next.positions[i] = wrap_unit(state.positions[i] + dt * speeds[i]);

  for (size_t i = 0; i < next.positions.size(); ++i)
    if (cyclic_gap(next.positions, i) < jam_gap * (1.0 - 1e-12))
      throw StepSizeError("ftl_step: step would violate the no-overlap invariant");
  return next;
}

RingState uniform_ring(size_t n) {
  if (n == 0) throw ConfigError("uniform_ring: need at least one vehicle");
  RingState state;
  state.positions.resize(n);
  for (size_t i = 0; i < n; ++i)
    state.positions[i] = static_cast<double>(i) / static_cast<double>(n);
  return state;
}

RingState ring_from_density_profile(const std::vector<double>& rho0_samples,
                                    size_t n, double jam_gap) {
  if (rho0_samples.size() < 2)
    throw ConfigError("ring_from_density_profile: need at least two samples");
  if (n == 0) throw ConfigError("ring_from_density_profile: need vehicles");
  for (double r : rho0_samples)
    if (!(r > 0.0)) throw ConfigError("ring_from_density_profile: profile must be positive");

  // Cumulative mass of the (piecewise linear) profile on a uniform x grid.
  const size_t m = rho0_samples.size();
  std::vector<double> cum(m + 1, 0.0);
  const double dx = 1.0 / static_cast<double>(m);
  for (size_t j = 0; j < m; ++j) {
    const double left = rho0_samples[j];
    const double right = rho0_samples[(j + 1) % m];
    cum[j + 1] = cum[j] + 0.5 * (left + right) * dx;
  }
  const double total = cum[m];

  // Vehicle i sits at the i/n quantile of the mass distribution, so the
  // spacing density jam_gap/gap tracks rho0 up to the n*jam_gap/total scale.
  RingState state;
  state.positions.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const double target = total * static_cast<double>(i) / static_cast<double>(n);
    const auto it = std::upper_bound(cum.begin(), cum.end(), target);
    size_t j = static_cast<size_t>(std::distance(cum.begin(), it));
    j = (j == 0) ? 0 : j - 1;
    if (j >= m) j = m - 1;
    const double seg = cum[j + 1] - cum[j];
    const double frac = seg > 0.0 ? (target - cum[j]) / seg : 0.0;
    state.positions[i] = (static_cast<double>(j) + frac) * dx;
  }

  for (size_t i = 0; i < n; ++i)
    if (cyclic_gap(state.positions, i) < jam_gap)
      throw ConfigError("ring_from_density_profile: profile denser than jam spacing");
  return state;
}

}  // namespace roadstate::microsim
