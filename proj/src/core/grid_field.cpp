#include "roadstate/core/grid_field.hpp"

#include <cmath>
#include <sstream>

#include "roadstate/util/io.hpp"

namespace roadstate::core {

void write_grid_csv(const GridField& field, const std::string& path) {
  std::string out;
  out.reserve(static_cast<size_t>(field.n_t) * field.n_x * 48 + 16);
  out += "t,x,rho,v\n";
  for (int it = 0; it < field.n_t; ++it) {
    const std::string t = util::fmt_double(field.t_at(it));
    for (int ix = 0; ix < field.n_x; ++ix) {
      out += t;
      out += ',';
      out += util::fmt_double(field.x_at(ix));
      out += ',';
      out += util::fmt_double(field.rho[field.idx(it, ix)]);
      out += ',';
      out += util::fmt_double(field.vel[field.idx(it, ix)]);
      out += '\n';
    }
  }
  util::atomic_write_file(path, out);
}

GridField read_grid_csv(const std::string& path) {
  std::istringstream in(util::read_file(path));
  std::string line;
  if (!std::getline(in, line) || line != "t,x,rho,v")
    throw IoError(path + ": expected header 't,x,rho,v'");

  std::vector<double> ts, xs, rhos, vels;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = util::split_csv_line(line);
    if (cells.size() != 4) throw IoError(path + ": malformed row '" + line + "'");
    try {
      ts.push_back(std::stod(cells[0]));
      xs.push_back(std::stod(cells[1]));
      rhos.push_back(std::stod(cells[2]));
      vels.push_back(std::stod(cells[3]));
    } catch (const std::exception&) {
      throw IoError(path + ": non-numeric row '" + line + "'");
    }
  }
  if (ts.empty()) throw IoError(path + ": no data rows");

  // Rows are t-major: n_x = length of the first run of equal t values.
  size_t nx = 1;
  while (nx < ts.size() && ts[nx] == ts[0]) ++nx;
  if (ts.size() % nx != 0)
    throw IoError(path + ": row count is not a multiple of the space size");
  const size_t nt = ts.size() / nx;
  if (nt < 2) throw IoError(path + ": need at least two time samples");

  GridField field(static_cast<int>(nt), static_cast<int>(nx), ts.back());
  for (size_t i = 0; i < ts.size(); ++i) {
    field.rho[i] = rhos[i];
    field.vel[i] = vels[i];
  }
  return field;
}

}  // namespace roadstate::core
