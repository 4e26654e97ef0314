#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "vec.hpp"

namespace gradflow {

// Uniform cell-centered grid on [-L,L]^D with M cells per axis.  Centers are
// generated by index arithmetic rather than stored; the integer form
// (2j+1-M)*(L/M) makes the grid exactly symmetric about the origin.
template <std::size_t D>
class QuadratureGrid {
  static_assert(D == 1 || D == 2, "grids are provided for d = 1 and d = 2");

 public:
  QuadratureGrid(double half_width, int cells_per_dim)
      : half_width_(half_width), cells_(cells_per_dim) {
    if (!(half_width > 0.0) || !std::isfinite(half_width))
      throw InvalidArgumentError("grid: half_width must be positive and finite");
    if (cells_per_dim < 1)
      throw InvalidArgumentError("grid: cells_per_dim must be >= 1");
    cell_size_ = 2.0 * half_width_ / cells_;
    half_cell_ = half_width_ / cells_;
  }

  double half_width() const { return half_width_; }
  int cells_per_dim() const { return cells_; }
  static constexpr int dimension() { return D; }
  double cell_size() const { return cell_size_; }

  double cell_volume() const {
    double v = 1.0;
    for (std::size_t a = 0; a < D; ++a) v *= cell_size_;
    return v;
  }

  std::size_t size() const {
    std::size_t n = 1;
    for (std::size_t a = 0; a < D; ++a) n *= static_cast<std::size_t>(cells_);
    return n;
  }

  // center coordinate of axis cell j
  double axis_center(int j) const {
    return (2.0 * j + 1.0 - cells_) * half_cell_;
  }

  std::vector<double> axis_centers() const {
    std::vector<double> c(cells_);
    for (int j = 0; j < cells_; ++j) c[j] = axis_center(j);
    return c;
  }

  // cells are linearized with axis 0 slowest
  Vec<D> center(std::size_t i) const {
    Vec<D> x;
    if constexpr (D == 1) {
      x[0] = axis_center(static_cast<int>(i));
    } else {
      x[0] = axis_center(static_cast<int>(i / cells_));
      x[1] = axis_center(static_cast<int>(i % cells_));
    }
    return x;
  }

 private:
  double half_width_;
  int cells_;
  double cell_size_;
  double half_cell_;
};

template <std::size_t D>
QuadratureGrid<D> build_grid(double half_width, int cells_per_dim) {
  return QuadratureGrid<D>(half_width, cells_per_dim);
}

}  // namespace gradflow
