#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace noonsim {

/// Uniform cell-centred grid on a periodic box. Cell (ix, iy) has flat index
/// ix + nx * iy (x fastest); its centre sits at origin + (i + 1/2) * cell_size.
class Grid {
 public:
  static constexpr int kMinCells = 8;

  static Grid line(int cells, double cell_size, double origin);
  static Grid plane(std::array<int, 2> cells, std::array<double, 2> cell_size,
                    std::array<double, 2> origin);

  /// Grid of `cells` spanning [-length/2, length/2) along each axis.
  static Grid centered_line(int cells, double length);
  static Grid centered_plane(std::array<int, 2> cells, std::array<double, 2> length);

  [[nodiscard]] int dimension() const noexcept { return dimension_; }
  [[nodiscard]] int cells(int axis) const { return cells_.at(static_cast<std::size_t>(axis)); }
  [[nodiscard]] double cell_size(int axis) const {
    return cell_size_.at(static_cast<std::size_t>(axis));
  }
  [[nodiscard]] double origin(int axis) const { return origin_.at(static_cast<std::size_t>(axis)); }
  [[nodiscard]] double length(int axis) const { return cells(axis) * cell_size(axis); }
  [[nodiscard]] std::size_t dof_count() const noexcept;
  [[nodiscard]] double cell_volume() const noexcept;

  [[nodiscard]] double center(int axis, int index) const {
    return origin(axis) + (index + 0.5) * cell_size(axis);
  }
  /// Coordinates of the centre of flat cell `flat` (y is 0 for a line).
  [[nodiscard]] std::array<double, 2> position(std::size_t flat) const;
  [[nodiscard]] std::size_t flat_index(int ix, int iy = 0) const;
  /// Cell whose centre is closest to the point, wrapping periodically. A point exactly between
  /// two centres goes to the one nearer the grid centre, so mirrored points get mirrored cells.
  [[nodiscard]] std::size_t nearest_cell(double x, double y = 0.0) const;
  [[nodiscard]] int nearest_index(int axis, double coordinate) const;

  /// Signed displacement a - b folded into [-L/2, L/2) along `axis`.
  [[nodiscard]] double periodic_delta(int axis, double a, double b) const;

  bool operator==(const Grid&) const = default;

 private:
  Grid() = default;
  int dimension_ = 1;
  std::array<int, 2> cells_{1, 1};
  std::array<double, 2> cell_size_{1.0, 1.0};
  std::array<double, 2> origin_{0.0, 0.0};
};

/// Relative permittivity per cell of a lossless, non-dispersive dielectric.
class PermittivityMap {
 public:
  /// Vacuum everywhere.
  explicit PermittivityMap(Grid grid);
  PermittivityMap(Grid grid, std::vector<double> eps);

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return eps_; }
  [[nodiscard]] double operator[](std::size_t flat) const { return eps_.at(flat); }
  void set(std::size_t flat, double eps);

  bool operator==(const PermittivityMap&) const = default;

 private:
  Grid grid_;
  std::vector<double> eps_;
};

}  // namespace noonsim
