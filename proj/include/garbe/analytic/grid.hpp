#pragma once

#include <cstddef>
#include <optional>

#include "garbe/algebra/matrix.hpp"

namespace garbe {

// Open rectangle {a < Re z < b, c < Im z < d}; grids sample its closure.
struct Rectangle {
  double a = 0.0, b = 1.0, c = 0.0, d = 1.0;

  Rectangle() = default;
  Rectangle(double a, double b, double c, double d);

  double width() const { return b - a; }
  double height() const { return d - c; }
  Complex center() const { return {0.5 * (a + b), 0.5 * (c + d)}; }
  // max |z − center| over the closure
  double radius() const;
  bool contains(Complex z, double tol = 0.0) const;
  bool contains(const Rectangle& r, double tol = 0.0) const;
  // Rectangle with every edge moved inward by m.
  Rectangle shrunk(double m) const;

  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

// Nonempty open intersection, or nullopt for disjoint or touching rectangles.
std::optional<Rectangle> open_overlap(const Rectangle& r1, const Rectangle& r2);
// R1 ∪ R2 when that union is itself a rectangle.
std::optional<Rectangle> rectangle_union(const Rectangle& r1, const Rectangle& r2);

// Window [i0, i1] × [j0, j1] of the lattice x0 + i·hx, y0 + j·hy. Windows
// cut from one lattice share node coordinates bit for bit.
class Grid {
 public:
  Grid() = default;
  static Grid uniform(const Rectangle& r, int nx, int ny);
  // Spacing close to 1/cells_per_unit, at least min_cells cells per side.
  static Grid with_density(const Rectangle& r, double cells_per_unit, int min_cells = 2);

  int nx() const { return i1_ - i0_; }  // cells
  int ny() const { return j1_ - j0_; }
  int nodes_x() const { return nx() + 1; }
  int nodes_y() const { return ny() + 1; }
  std::size_t size() const { return static_cast<std::size_t>(nodes_x()) * nodes_y(); }
  std::size_t cells() const { return static_cast<std::size_t>(nx()) * ny(); }
  int i0() const { return i0_; }
  int i1() const { return i1_; }
  int j0() const { return j0_; }
  int j1() const { return j1_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }

  double x(int i) const { return x0_ + i * hx_; }
  double y(int j) const { return y0_ + j * hy_; }
  Complex node(int i, int j) const { return {x(i), y(j)}; }
  Complex node(std::size_t k) const { return node(abs_i(k), abs_j(k)); }
  Complex cell_center(int ci, int cj) const { return {x0_ + (ci + 0.5) * hx_, y0_ + (cj + 0.5) * hy_}; }
  int abs_i(std::size_t k) const { return i0_ + static_cast<int>(k % nodes_x()); }
  int abs_j(std::size_t k) const { return j0_ + static_cast<int>(k / nodes_x()); }
  // Row-major local index of an absolute node.
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j - j0_) * nodes_x() + (i - i0_);
  }
  bool has_node(int i, int j) const { return i >= i0_ && i <= i1_ && j >= j0_ && j <= j1_; }
  bool interior(int i, int j) const { return i > i0_ && i < i1_ && j > j0_ && j < j1_; }
  Rectangle rectangle() const { return {x(i0_), x(i1_), y(j0_), y(j1_)}; }

  bool same_lattice(const Grid& o) const {
    return x0_ == o.x0_ && y0_ == o.y0_ && hx_ == o.hx_ && hy_ == o.hy_;
  }
  bool operator==(const Grid& o) const {
    return same_lattice(o) && i0_ == o.i0_ && i1_ == o.i1_ && j0_ == o.j0_ && j1_ == o.j1_;
  }
  // Sub-window with edges on r; r must lie on lattice lines inside this window.
  Grid window(const Rectangle& r) const;
  Grid window(int i0, int i1, int j0, int j1) const;
  // Lattice of this grid extended to the absolute index range given.
  Grid with_bounds(int i0, int i1, int j0, int j1) const;
  // Nearest lattice index to x (resp. y) when within tol·spacing, else nullopt.
  std::optional<int> lattice_i(double xv, double tol = 1e-7) const;
  std::optional<int> lattice_j(double yv, double tol = 1e-7) const;

 private:
  double x0_ = 0.0, y0_ = 0.0, hx_ = 1.0, hy_ = 1.0;
  int i0_ = 0, i1_ = 1, j0_ = 0, j1_ = 1;
};

}  // namespace garbe
