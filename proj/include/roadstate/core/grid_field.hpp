#pragma once

#include <string>
#include <vector>

#include "roadstate/core/error.hpp"

namespace roadstate::core {

/// Dense spatiotemporal field of (rho, v) on a uniform grid over
/// [0, t_span] x [0, 1). Time samples sit at t_m = m * t_span / (n_t - 1)
/// (both endpoints included); space samples at x_n = n / n_x, periodic,
/// so x = 1 is identified with x = 0 and not stored twice.
/// Storage is row-major in t then x.
struct GridField {
  int n_t = 0;
  int n_x = 0;
  double t_span = 1.0;  ///< normalized duration covered by the grid
  std::vector<double> rho;
  std::vector<double> vel;

  GridField() = default;
  GridField(int nt, int nx, double span = 1.0)
      : n_t(nt), n_x(nx), t_span(span),
        rho(static_cast<size_t>(nt) * nx, 0.0),
        vel(static_cast<size_t>(nt) * nx, 0.0) {
    if (nt < 2 || nx < 1) throw ConfigError("GridField: need n_t >= 2, n_x >= 1");
    if (!(span > 0.0)) throw ConfigError("GridField: t_span must be positive");
  }

  size_t idx(int it, int ix) const { return static_cast<size_t>(it) * n_x + ix; }
  double t_at(int it) const { return t_span * it / (n_t - 1); }
  double x_at(int ix) const { return static_cast<double>(ix) / n_x; }

  bool same_shape(const GridField& o) const {
    return n_t == o.n_t && n_x == o.n_x && t_span == o.t_span;
  }
};

/// Writes the field as CSV with header `t,x,rho,v`. Atomic (temp + rename).
void write_grid_csv(const GridField& field, const std::string& path);

/// Reads a field written by write_grid_csv. Throws IoError on malformed input.
GridField read_grid_csv(const std::string& path);

}  // namespace roadstate::core
