#include "roadstate/fvm/grid.hpp"

#include <cmath>

namespace roadstate::fvm {

namespace {
void check_density(const std::vector<double>& rho) {
  if (rho.size() < 2) throw ConfigError("FvGrid: need at least two cells");
  for (double r : rho)
    if (!(r >= 0.0 && r <= 1.0))
      throw DomainError("FvGrid: cell density outside [0,1]");
}
}  // namespace

FvGrid make_lwr_grid(std::vector<double> rho) {
  check_density(rho);
  FvGrid grid;
  grid.n_cells = static_cast<int>(rho.size());
  grid.dx = 1.0 / grid.n_cells;
  grid.rho = std::move(rho);
  return grid;
}

FvGrid make_arz_grid(std::vector<double> rho, const std::vector<double>& vel,
                     const core::VeqModel& veq) {
  check_density(rho);
  if (vel.size() != rho.size())
    throw ConfigError("make_arz_grid: rho/vel size mismatch");
  FvGrid grid;
  grid.n_cells = static_cast<int>(rho.size());
  grid.dx = 1.0 / grid.n_cells;
  grid.y.resize(rho.size());
  for (size_t i = 0; i < rho.size(); ++i) {
    if (!(vel[i] >= 0.0))
      throw DomainError("make_arz_grid: velocity must be nonnegative");
    grid.y[i] = rho[i] * (vel[i] + core::pressure(veq, rho[i]));
  }
  grid.rho = std::move(rho);
  return grid;
}

double recover_velocity(double rho, double y, const core::VeqModel& veq) {
  constexpr double rho_floor = 1e-12;
  const double clamped = std::min(std::max(rho, 0.0), 1.0);
  if (rho <= rho_floor) return veq.value(clamped);
  return y / rho - (1.0 - veq.value(clamped));
}

double total_variation(const std::vector<double>& rho) {
  double tv = 0.0;
  const size_t n = rho.size();
  for (size_t i = 0; i < n; ++i) tv += std::abs(rho[(i + 1) % n] - rho[i]);
  return tv;
}

}  // namespace roadstate::fvm
