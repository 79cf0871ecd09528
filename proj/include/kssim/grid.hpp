#pragma once

#include <array>
#include <vector>

#include "kssim/errors.hpp"

namespace kssim {

// Uniform cell-centered grid on an interval (dim 1) or rectangle (dim 2).
// Internally the y axis always exists; a 1D grid has cells[1] = 1 and unit
// y extent, so cell volume and domain measure use the same formulas in both
// dimensions and y-interface loops are naturally empty.
struct Grid {
  int dim = 1;
  std::array<int, 2> cells{4, 1};
  std::array<double, 2> extent{1.0, 1.0};
  std::array<double, 2> h{0.25, 1.0};

  static Grid line(double length, int nx);
  static Grid rect(double length_x, double length_y, int nx, int ny);

  int total_cells() const { return cells[0] * cells[1]; }
  double cell_volume() const { return h[0] * h[1]; }
  double measure() const { return extent[0] * extent[1]; }
  double min_h() const { return dim == 1 ? h[0] : (h[0] < h[1] ? h[0] : h[1]); }
  int index(int i, int j) const { return i + cells[0] * j; }
  double x_center(int i) const { return (i + 0.5) * h[0]; }
  double y_center(int j) const { return (j + 0.5) * h[1]; }

  bool operator==(const Grid&) const = default;
};

// Cell-average values on a grid.
struct Field {
  Grid grid;
  std::vector<double> values;

  static Field constant(const Grid& g, double c) {
    return {g, std::vector<double>(static_cast<size_t>(g.total_cells()), c)};
  }
  double& operator[](size_t i) { return values[i]; }
  double operator[](size_t i) const { return values[i]; }
};

double min_value(const Field& f);
double max_value(const Field& f);
bool all_finite(const Field& f);

struct State {
  double t = 0.0;
  Field u;
  Field v;
};

// Throws Domain unless fields are nonempty, finite, share the grid, and
// satisfy u >= 0, u not identically zero, v > 0.
void validate_admissible(const State& s);

}  // namespace kssim
