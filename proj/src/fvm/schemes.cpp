#include "roadstate/fvm/schemes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace roadstate::fvm {

GodunovLwr::GodunovLwr(const core::VeqModel& veq, int table_size) {
  if (table_size < 16) throw ConfigError("GodunovLwr: table too coarse");
  table_.resize(static_cast<size_t>(table_size) + 1);
  h_ = 1.0 / table_size;
  for (int j = 0; j <= table_size; ++j) {
    const double rho = j * h_;
    table_[j] = rho * veq.value(rho);
  }
  for (size_t j = 0; j + 1 < table_.size(); ++j)
    max_wave_speed_ =
        std::max(max_wave_speed_, std::abs(table_[j + 1] - table_[j]) / h_);
  max_wave_speed_ *= 1.0 + 1e-3;  // slope sampling underestimates sup|f'|

  // Sparse range min/max tables: level k answers windows of length 2^k.
  const int levels = std::bit_width(table_.size());
  sparse_min_.assign(levels, table_);
  sparse_max_.assign(levels, table_);
  for (int k = 1; k < levels; ++k) {
    const size_t half = size_t{1} << (k - 1);
    for (size_t j = 0; j + (size_t{1} << k) <= table_.size(); ++j) {
      sparse_min_[k][j] = std::min(sparse_min_[k - 1][j], sparse_min_[k - 1][j + half]);
      sparse_max_[k][j] = std::max(sparse_max_[k - 1][j], sparse_max_[k - 1][j + half]);
    }
  }
}

namespace {
double f_at(const std::vector<double>& table, double h, double rho) {
  // Linear interpolation; rho is clamped to [0,1] by the callers.
  const double pos = rho / h;
  const size_t j = std::min(static_cast<size_t>(pos), table.size() - 2);
  const double frac = pos - static_cast<double>(j);
  return table[j] + frac * (table[j + 1] - table[j]);
}
}  // namespace

double GodunovLwr::flux(double rho_left, double rho_right) const {
  core::check_density_domain(rho_left, "godunov flux");
  core::check_density_domain(rho_right, "godunov flux");
  const double lo = std::min(rho_left, rho_right);
  const double hi = std::max(rho_left, rho_right);
  const double f_lo = f_at(table_, h_, lo);
  const double f_hi = f_at(table_, h_, hi);

  // Table indices strictly inside (lo, hi).
  size_t jl = static_cast<size_t>(std::ceil(lo / h_ - 1e-12));
  size_t jr_signed = static_cast<size_t>(std::floor(hi / h_ + 1e-12));
  if (jl * h_ <= lo) ++jl;
  size_t jr = jr_signed;
  while (jr > 0 && jr * h_ >= hi) --jr;

  const bool increasing = rho_left <= rho_right;
  double extreme = increasing ? std::min(f_lo, f_hi) : std::max(f_lo, f_hi);
  if (jl <= jr) {
    const size_t len = jr - jl + 1;
    const int k = std::bit_width(len) - 1;
    const size_t half = size_t{1} << k;
    if (increasing)
      extreme = std::min(extreme, std::min(sparse_min_[k][jl],
                                           sparse_min_[k][jr + 1 - half]));
    else
      extreme = std::max(extreme, std::max(sparse_max_[k][jl],
                                           sparse_max_[k][jr + 1 - half]));
  }
  return extreme;
}

FvGrid GodunovLwr::step(const FvGrid& grid, double dt) const {
  if (!(dt > 0.0)) throw StepSizeError("godunov step: dt must be positive");
  if (dt * max_wave_speed_ > grid.dx * (1.0 + 1e-9))
    throw StepSizeError("godunov step: CFL violation");

  const int n = grid.n_cells;
  std::vector<double> flux_right(n);  // flux at interface i+1/2
  for (int i = 0; i < n; ++i)
    flux_right[i] = flux(grid.rho[i], grid.rho[(i + 1) % n]);

  FvGrid next = grid;
  const double lambda = dt / grid.dx;
  for (int i = 0; i < n; ++i) {
    const double flux_left = flux_right[(i + n - 1) % n];
    next.rho[i] = grid.rho[i] - lambda * (flux_right[i] - flux_left);
  }
  return next;
}

ArzScheme::ArzScheme(const core::VeqModel& veq, double tau) : veq_(veq), tau_(tau) {
  if (!(tau > 0.0)) throw ConfigError("ArzScheme: tau must be positive");
}

namespace {
struct CellState {
  double rho, y, v;
};

inline double clamp01(double x) { return std::min(std::max(x, 0.0), 1.0); }
}  // namespace

double ArzScheme::max_wave_speed(const FvGrid& grid) const {
  double s = 0.0;
  for (int i = 0; i < grid.n_cells; ++i) {
    const double rho = grid.rho[i];
    const double v = recover_velocity(rho, grid.y[i], veq_);
    const double lam1 = v + clamp01(rho) * veq_.slope(clamp01(rho));
    s = std::max(s, std::max(std::abs(lam1), std::abs(v)));
  }
  return s;
}

FvGrid ArzScheme::step(const FvGrid& grid, double dt) const {
  if (!grid.is_arz()) throw ConfigError("arz step: grid carries no y variable");
  if (!(dt > 0.0)) throw StepSizeError("arz step: dt must be positive");

  const int n = grid.n_cells;
  std::vector<CellState> cell(n);
  for (int i = 0; i < n; ++i) {
    cell[i].rho = grid.rho[i];
    cell[i].y = grid.y[i];
    cell[i].v = recover_velocity(grid.rho[i], grid.y[i], veq_);
  }

  double smax = 0.0;
  std::vector<double> flux_rho(n), flux_y(n);  // at interface i+1/2
  for (int i = 0; i < n; ++i) {
    const CellState& l = cell[i];
    const CellState& r = cell[(i + 1) % n];
    const double lam1_l = l.v + clamp01(l.rho) * veq_.slope(clamp01(l.rho));
    const double lam1_r = r.v + clamp01(r.rho) * veq_.slope(clamp01(r.rho));
    const double sl = std::min(lam1_l, lam1_r);
    const double sr = std::max(l.v, r.v);
    smax = std::max(smax, std::max(std::abs(sl), std::abs(sr)));

    const double fl_rho = l.rho * l.v, fl_y = l.y * l.v;
    const double fr_rho = r.rho * r.v, fr_y = r.y * r.v;
    if (sl >= 0.0) {
      flux_rho[i] = fl_rho;
      flux_y[i] = fl_y;
    } else if (sr <= 0.0) {
      flux_rho[i] = fr_rho;
      flux_y[i] = fr_y;
    } else {
      const double inv = 1.0 / (sr - sl);
      flux_rho[i] = (sr * fl_rho - sl * fr_rho + sl * sr * (r.rho - l.rho)) * inv;
      flux_y[i] = (sr * fl_y - sl * fr_y + sl * sr * (r.y - l.y)) * inv;
    }
  }
  if (dt * smax > grid.dx * (1.0 + 1e-9))
    throw StepSizeError("arz step: CFL violation");

  FvGrid next = grid;
  const double lambda = dt / grid.dx;
  for (int i = 0; i < n; ++i) {
    const int prev = (i + n - 1) % n;
    next.rho[i] = grid.rho[i] - lambda * (flux_rho[i] - flux_rho[prev]);
    next.y[i] = grid.y[i] - lambda * (flux_y[i] - flux_y[prev]);
  }

  // Relaxation substep, integrated exactly at frozen density.
  const double decay = std::exp(-dt / tau_);
  for (int i = 0; i < n; ++i) {
    const double rho = next.rho[i];
    const double veq_v = veq_.value(clamp01(rho));
    const double v = recover_velocity(rho, next.y[i], veq_);
    const double relaxed = veq_v + (v - veq_v) * decay;
    next.y[i] = rho * (relaxed + (1.0 - veq_v));
  }
  return next;
}

FvGrid godunov_lwr_step(const FvGrid& grid, const core::VeqModel& veq, double dt) {
  return GodunovLwr(veq).step(grid, dt);
}

FvGrid arz_step(const FvGrid& grid, const core::VeqModel& veq, double tau, double dt) {
  return ArzScheme(veq, tau).step(grid, dt);
}

core::GridField solve(const FvGrid& initial, const core::VeqModel& veq,
                      const SolveOptions& options) {
  if (options.n_t < 2) throw ConfigError("solve: need n_t >= 2");
  if (!(options.horizon > 0.0)) throw ConfigError("solve: horizon must be positive");

  const bool arz = options.model == Model::arz;
  if (arz != initial.is_arz())
    throw ConfigError("solve: grid variables do not match the model");

  const GodunovLwr lwr_scheme(veq);
  const ArzScheme arz_scheme(veq, options.tau);

  core::GridField field(options.n_t, initial.n_cells, options.horizon);
  auto store = [&](int it, const FvGrid& grid) {
    for (int i = 0; i < grid.n_cells; ++i) {
      field.rho[field.idx(it, i)] = clamp01(grid.rho[i]);
      const double v = arz ? recover_velocity(grid.rho[i], grid.y[i], veq)
                           : veq.value(clamp01(grid.rho[i]));
      field.vel[field.idx(it, i)] = clamp01(v);
    }
  };

  FvGrid grid = initial;
  store(0, grid);
  double t = 0.0;
  for (int it = 1; it < options.n_t; ++it) {
    const double t_target = field.t_at(it);
    while (t < t_target - 1e-15) {
      const double speed =
          arz ? std::max(arz_scheme.max_wave_speed(grid), 1e-12)
              : std::max(lwr_scheme.max_wave_speed(), 1e-12);
      double dt = options.cfl * grid.dx / speed;
      dt = std::min(dt, t_target - t);
      grid = arz ? arz_scheme.step(grid, dt) : lwr_scheme.step(grid, dt);
      t += dt;
    }
    t = t_target;  // guard against drift in the accumulated time
    store(it, grid);
  }
  return field;
}

}  // namespace roadstate::fvm
