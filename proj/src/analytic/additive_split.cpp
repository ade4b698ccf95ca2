#include "garbe/analytic/additive_split.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "garbe/error.hpp"

namespace garbe {

namespace {

struct Geometry {
  Rectangle overlap, uni;
};

Geometry check_pair(const Rectangle& r1, const Rectangle& r2) {
  auto overlap = open_overlap(r1, r2);
  if (!overlap) throw StructureError("pair geometry: rectangles have empty open overlap");
  auto uni = rectangle_union(r1, r2);
  if (!uni) throw StructureError("pair geometry: R1 ∪ R2 is not a rectangle");
  return {*overlap, *uni};
}

bool on_lattice(double offset, double width, int m) {
  double t = offset / width * m;
  return std::abs(t - std::round(t)) < 1e-9 * std::max(1, m);
}

// Smallest cell count ≥ m_min putting every edge offset on a grid line.
int commensurate_cells(double lo, double width, std::initializer_list<double> edges, int m_min) {
  for (int m = m_min; m <= 64 * m_min; ++m) {
    bool ok = true;
    for (double e : edges) ok = ok && on_lattice(e - lo, width, m);
    if (ok) return m;
  }
  throw StructureError("pair geometry: rectangle edges admit no common grid spacing");
}

PairGeometry finish(const Rectangle& r1, const Rectangle& r2, const Geometry& geo, const Grid& grid) {
  PairGeometry p;
  p.r1 = r1;
  p.r2 = r2;
  p.overlap = geo.overlap;
  p.uni = geo.uni;
  p.grid = grid;
  p.g1 = grid.window(r1);
  p.g2 = grid.window(r2);
  p.go = grid.window(geo.overlap);
  p.chi = Cutoff::make(r1, r2);
  p.solver = std::make_shared<PompeiuSolver>(grid);
  return p;
}

}  // namespace

PairGeometry PairGeometry::with_density(const Rectangle& r1, const Rectangle& r2, double cells_per_unit) {
  if (!(cells_per_unit > 0)) throw InputError("pair geometry: grid density must be positive");
  Geometry geo = check_pair(r1, r2);
  const Rectangle& u = geo.uni;
  int mx0 = std::max(2, static_cast<int>(std::ceil(u.width() * cells_per_unit - 1e-9)));
  int my0 = std::max(2, static_cast<int>(std::ceil(u.height() * cells_per_unit - 1e-9)));
  int mx = commensurate_cells(u.a, u.width(), {r1.a, r1.b, r2.a, r2.b}, mx0);
  int my = commensurate_cells(u.c, u.height(), {r1.c, r1.d, r2.c, r2.d}, my0);
  return finish(r1, r2, geo, Grid::uniform(u, mx, my));
}

PairGeometry PairGeometry::from_overlap_grid(const Rectangle& r1, const Rectangle& r2, const Grid& og) {
  Geometry geo = check_pair(r1, r2);
  Rectangle have = og.rectangle();
  double tol = 1e-6 * std::min(og.hx(), og.hy());
  if (std::abs(have.a - geo.overlap.a) > tol || std::abs(have.b - geo.overlap.b) > tol ||
      std::abs(have.c - geo.overlap.c) > tol || std::abs(have.d - geo.overlap.d) > tol)
    throw StructureError("pair geometry: field grid does not cover exactly the closed overlap");
  auto i0 = og.lattice_i(geo.uni.a), i1 = og.lattice_i(geo.uni.b);
  auto j0 = og.lattice_j(geo.uni.c), j1 = og.lattice_j(geo.uni.d);
  if (!i0 || !i1 || !j0 || !j1)
    throw StructureError("pair geometry: rectangle edges are not on the field's grid lines");
  return finish(r1, r2, geo, og.with_bounds(*i0, *i1, *j0, *j1));
}

AdditiveSplit additive_split(const SampledField& f_in, const PairGeometry& geo, const AdditiveOptions& opt) {
  SampledField f = f_in.grid == geo.go ? f_in : f_in.rebased(geo.go);
  const int n = f.n;
  if (opt.check_holomorphy && geo.go.nx() >= 2 && geo.go.ny() >= 2) {
    double r = dbar_residual(f);
    double allowed = opt.holomorphy_tol * std::max(1.0, f.max_norm());
    if (r > allowed)
      throw InputError("additive_split: input not holomorphic on the overlap (dbar residual " +
                       std::to_string(r) + " > " + std::to_string(allowed) + ")");
  }
  // φ = (∂χ/∂z̄)·f, frozen at cell centres; zero outside the overlap strip.
  CellField phi{geo.grid, n, std::vector<Matrix>(geo.grid.cells(), Matrix::Zero(n, n))};
  const Grid& go = geo.go;
  for (int cj = go.j0(); cj < go.j1(); ++cj)
    for (int ci = go.i0(); ci < go.i1(); ++ci) {
      Complex d = geo.chi.dchi_dzbar(geo.grid.cell_center(ci, cj));
      if (d == 0.0) continue;
      Matrix avg = 0.25 * (f.at(ci, cj) + f.at(ci + 1, cj) + f.at(ci, cj + 1) + f.at(ci + 1, cj + 1));
      phi.values[phi.index(ci, cj)] = d * avg;
    }
  AdditiveSplit out;
  out.h = geo.solver->solve(phi);
  auto build = [&](const Grid& g, double shift) {
    std::vector<Matrix> v(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
      int i = g.abs_i(k), j = g.abs_j(k);
      v[k] = -out.h.at(i, j);
      if (go.has_node(i, j)) {
        double c = geo.chi.chi(g.node(k)) + shift;
        if (c != 0.0) v[k] += c * f.at(i, j);
      }
    }
    return SampledField(g, n, std::move(v));
  };
  out.f1 = build(geo.g1, 0.0);
  out.f2 = build(geo.g2, -1.0);
  for (std::size_t k = 0; k < go.size(); ++k) {
    int i = go.abs_i(k), j = go.abs_j(k);
    out.telescoping = std::max(out.telescoping, norm(f.values[k] - (out.f1.at(i, j) - out.f2.at(i, j))));
  }
  return out;
}

}  // namespace garbe
