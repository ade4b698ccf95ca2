#include "garbe/analytic/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "garbe/error.hpp"

namespace garbe {

Rectangle::Rectangle(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d)) || !(a < b) ||
      !(c < d))
    throw StructureError("rectangle needs a < b and c < d");
}

double Rectangle::radius() const { return 0.5 * std::hypot(width(), height()); }

bool Rectangle::contains(Complex z, double tol) const {
  return z.real() >= a - tol && z.real() <= b + tol && z.imag() >= c - tol && z.imag() <= d + tol;
}

bool Rectangle::contains(const Rectangle& r, double tol) const {
  return r.a >= a - tol && r.b <= b + tol && r.c >= c - tol && r.d <= d + tol;
}

Rectangle Rectangle::shrunk(double m) const {
  if (!(2 * m < width()) || !(2 * m < height()))
    throw StructureError("shrinking by " + std::to_string(m) + " empties the rectangle");
  return {a + m, b - m, c + m, d - m};
}

std::optional<Rectangle> open_overlap(const Rectangle& r1, const Rectangle& r2) {
  double a = std::max(r1.a, r2.a), b = std::min(r1.b, r2.b);
  double c = std::max(r1.c, r2.c), d = std::min(r1.d, r2.d);
  if (!(a < b) || !(c < d)) return std::nullopt;
  return Rectangle(a, b, c, d);
}

std::optional<Rectangle> rectangle_union(const Rectangle& r1, const Rectangle& r2) {
  if (r2.contains(r1)) return r2;
  if (r1.contains(r2)) return r1;
  bool same_y = r1.c == r2.c && r1.d == r2.d;
  bool same_x = r1.a == r2.a && r1.b == r2.b;
  if (same_y && std::max(r1.a, r2.a) <= std::min(r1.b, r2.b))
    return Rectangle(std::min(r1.a, r2.a), std::max(r1.b, r2.b), r1.c, r1.d);
  if (same_x && std::max(r1.c, r2.c) <= std::min(r1.d, r2.d))
    return Rectangle(r1.a, r1.b, std::min(r1.c, r2.c), std::max(r1.d, r2.d));
  return std::nullopt;
}

Grid Grid::uniform(const Rectangle& r, int nx, int ny) {
  if (nx < 1 || ny < 1) throw StructureError("grid needs at least one cell per side");
  Grid g;
  g.x0_ = r.a;
  g.y0_ = r.c;
  g.hx_ = r.width() / nx;
  g.hy_ = r.height() / ny;
  g.i0_ = 0;
  g.i1_ = nx;
  g.j0_ = 0;
  g.j1_ = ny;
  return g;
}

Grid Grid::with_density(const Rectangle& r, double cells_per_unit, int min_cells) {
  if (!(cells_per_unit > 0)) throw InputError("grid density must be positive");
  int nx = std::max(min_cells, static_cast<int>(std::ceil(r.width() * cells_per_unit - 1e-9)));
  int ny = std::max(min_cells, static_cast<int>(std::ceil(r.height() * cells_per_unit - 1e-9)));
  return uniform(r, nx, ny);
}

std::optional<int> Grid::lattice_i(double xv, double tol) const {
  double t = (xv - x0_) / hx_;
  double k = std::round(t);
  if (std::abs(t - k) > tol) return std::nullopt;
  return static_cast<int>(k);
}

std::optional<int> Grid::lattice_j(double yv, double tol) const {
  double t = (yv - y0_) / hy_;
  double k = std::round(t);
  if (std::abs(t - k) > tol) return std::nullopt;
  return static_cast<int>(k);
}

Grid Grid::window(int i0, int i1, int j0, int j1) const {
  if (!(i0 < i1) || !(j0 < j1) || i0 < i0_ || i1 > i1_ || j0 < j0_ || j1 > j1_)
    throw StructureError("grid window outside the parent grid");
  return with_bounds(i0, i1, j0, j1);
}

Grid Grid::with_bounds(int i0, int i1, int j0, int j1) const {
  if (!(i0 < i1) || !(j0 < j1)) throw StructureError("empty grid window");
  Grid g = *this;
  g.i0_ = i0;
  g.i1_ = i1;
  g.j0_ = j0;
  g.j1_ = j1;
  return g;
}

Grid Grid::window(const Rectangle& r) const {
  auto i0 = lattice_i(r.a), i1 = lattice_i(r.b), j0 = lattice_j(r.c), j1 = lattice_j(r.d);
  if (!i0 || !i1 || !j0 || !j1) throw StructureError("rectangle edges do not lie on grid lines");
  return window(*i0, *i1, *j0, *j1);
}

}  // namespace garbe
