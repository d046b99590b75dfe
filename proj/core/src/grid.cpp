#include "noonsim/grid.hpp"

#include <cmath>
#include <string>

#include "noonsim/error.hpp"

namespace noonsim {

namespace {

void check_axis(int cells, double cell_size, double origin, const char* axis) {
  if (cells < Grid::kMinCells) {
    throw GeometryError(std::string("grid.cells.") + axis + " must be >= " +
                        std::to_string(Grid::kMinCells) + ", got " + std::to_string(cells));
  }
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw GeometryError(std::string("grid.cell_size.") + axis + " must be > 0");
  }
  if (!std::isfinite(origin)) {
    throw GeometryError(std::string("grid.origin.") + axis + " must be finite");
  }
}

}  // namespace

Grid Grid::line(int cells, double cell_size, double origin) {
  check_axis(cells, cell_size, origin, "x");
  Grid g;
  g.dimension_ = 1;
  g.cells_ = {cells, 1};
  g.cell_size_ = {cell_size, 1.0};
  g.origin_ = {origin, 0.0};
  return g;
}

Grid Grid::plane(std::array<int, 2> cells, std::array<double, 2> cell_size,
                 std::array<double, 2> origin) {
  check_axis(cells[0], cell_size[0], origin[0], "x");
  check_axis(cells[1], cell_size[1], origin[1], "y");
  Grid g;
  g.dimension_ = 2;
  g.cells_ = cells;
  g.cell_size_ = cell_size;
  g.origin_ = origin;
  return g;
}

Grid Grid::centered_line(int cells, double length) {
  if (cells <= 0) throw GeometryError("grid.cells.x must be positive");
  return line(cells, length / cells, -0.5 * length);
}

Grid Grid::centered_plane(std::array<int, 2> cells, std::array<double, 2> length) {
  if (cells[0] <= 0 || cells[1] <= 0) throw GeometryError("grid.cells must be positive");
  return plane(cells, {length[0] / cells[0], length[1] / cells[1]},
               {-0.5 * length[0], -0.5 * length[1]});
}

std::size_t Grid::dof_count() const noexcept {
  return static_cast<std::size_t>(cells_[0]) * static_cast<std::size_t>(cells_[1]);
}

double Grid::cell_volume() const noexcept {
  return dimension_ == 1 ? cell_size_[0] : cell_size_[0] * cell_size_[1];
}

std::array<double, 2> Grid::position(std::size_t flat) const {
  const auto nx = static_cast<std::size_t>(cells_[0]);
  const int ix = static_cast<int>(flat % nx);
  const int iy = static_cast<int>(flat / nx);
  return {center(0, ix), dimension_ == 2 ? center(1, iy) : 0.0};
}

std::size_t Grid::flat_index(int ix, int iy) const {
  if (ix < 0 || ix >= cells_[0] || iy < 0 || iy >= cells_[1]) {
    throw std::out_of_range("grid cell (" + std::to_string(ix) + ", " + std::to_string(iy) +
                            ") outside grid");
  }
  return static_cast<std::size_t>(ix) + static_cast<std::size_t>(cells_[0]) *
                                            static_cast<std::size_t>(iy);
}

int Grid::nearest_index(int axis, double coordinate) const {
  const double u = (coordinate - origin(axis)) / cell_size(axis) - 0.5;
  const int n = cells(axis);
  long i = std::lround(u);
  // Coordinates on a cell boundary go to the side nearer the grid centre.
  const double fl = std::floor(u);
  if (std::abs(u - fl - 0.5) < 1e-9) {
    i = static_cast<long>(fl);
    if (fl + 0.5 < 0.5 * (n - 1)) i += 1;
  }
  i %= n;
  if (i < 0) i += n;
  return static_cast<int>(i);
}

std::size_t Grid::nearest_cell(double x, double y) const {
  const int ix = nearest_index(0, x);
  const int iy = dimension_ == 2 ? nearest_index(1, y) : 0;
  return flat_index(ix, iy);
}

double Grid::periodic_delta(int axis, double a, double b) const {
  const double period = length(axis);
  double d = std::fmod(a - b, period);
  if (d >= 0.5 * period) d -= period;
  if (d < -0.5 * period) d += period;
  return d;
}

PermittivityMap::PermittivityMap(Grid grid)
    : grid_(std::move(grid)), eps_(grid_.dof_count(), 1.0) {}

PermittivityMap::PermittivityMap(Grid grid, std::vector<double> eps)
    : grid_(std::move(grid)), eps_(std::move(eps)) {
  if (eps_.size() != grid_.dof_count()) {
    throw DimensionMismatchError("permittivity map has " + std::to_string(eps_.size()) +
                                 " values for a grid of " + std::to_string(grid_.dof_count()) +
                                 " cells");
  }
  for (std::size_t j = 0; j < eps_.size(); ++j) set(j, eps_[j]);
}

void PermittivityMap::set(std::size_t flat, double eps) {
  if (!std::isfinite(eps) || eps < 1.0) {
    throw ConfigError("permittivity at cell " + std::to_string(flat) +
                      " must be finite and >= 1, got " + std::to_string(eps));
  }
  eps_.at(flat) = eps;
}

}  // namespace noonsim
