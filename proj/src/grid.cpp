#include "kssim/grid.hpp"

#include <cmath>

namespace kssim {

Grid Grid::line(double length, int nx) {
  if (!(length > 0.0) || !std::isfinite(length))
    fail(ErrorKind::Domain, "grid: length must be positive finite");
  if (nx < 4) fail(ErrorKind::Domain, "grid: at least 4 cells per axis");
  Grid g;
  g.dim = 1;
  g.cells = {nx, 1};
  g.extent = {length, 1.0};
  g.h = {length / nx, 1.0};
  return g;
}

Grid Grid::rect(double length_x, double length_y, int nx, int ny) {
  if (!(length_x > 0.0) || !(length_y > 0.0) || !std::isfinite(length_x) ||
      !std::isfinite(length_y))
    fail(ErrorKind::Domain, "grid: lengths must be positive finite");
  if (nx < 4 || ny < 4) fail(ErrorKind::Domain, "grid: at least 4 cells per axis");
  Grid g;
  g.dim = 2;
  g.cells = {nx, ny};
  g.extent = {length_x, length_y};
  g.h = {length_x / nx, length_y / ny};
  return g;
}

double min_value(const Field& f) {
  double m = f.values.empty() ? 0.0 : f.values[0];
  for (double x : f.values)
    if (x < m) m = x;
  return m;
}

double max_value(const Field& f) {
  double m = f.values.empty() ? 0.0 : f.values[0];
  for (double x : f.values)
    if (x > m) m = x;
  return m;
}

bool all_finite(const Field& f) {
  for (double x : f.values)
    if (!std::isfinite(x)) return false;
  return true;
}

void validate_admissible(const State& s) {
  if (s.u.values.empty() || !(s.u.grid == s.v.grid) ||
      s.u.values.size() != static_cast<size_t>(s.u.grid.total_cells()) ||
      s.v.values.size() != static_cast<size_t>(s.v.grid.total_cells()))
    fail(ErrorKind::Domain, "state: u and v must live on the same grid");
  if (!all_finite(s.u) || !all_finite(s.v))
    fail(ErrorKind::Domain, "state: fields must be finite");
  if (min_value(s.u) < 0.0) fail(ErrorKind::Domain, "state: u must be nonnegative");
  if (!(max_value(s.u) > 0.0)) fail(ErrorKind::Domain, "state: u must not be identically zero");
  if (!(min_value(s.v) > 0.0)) fail(ErrorKind::Domain, "state: v must be strictly positive");
}

}  // namespace kssim
