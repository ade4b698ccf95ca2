#include "garbe/analytic/dbar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "garbe/error.hpp"
#include "garbe/util/parallel.hpp"

namespace garbe {

namespace {

Matrix dbar_at(const SampledField& f, int i, int j) {
  const Grid& g = f.grid;
  Matrix dx = (f.at(i + 1, j) - f.at(i - 1, j)) / (2.0 * g.hx());
  Matrix dy = (f.at(i, j + 1) - f.at(i, j - 1)) / (2.0 * g.hy());
  return 0.5 * (dx + Complex(0.0, 1.0) * dy);
}

void require_3x3(const Grid& g) {
  if (g.nx() < 2 || g.ny() < 2) throw StructureError("dbar residual needs at least a 3x3 node grid");
}

// Primitive with ∂²F/∂u∂v = u/(u² + v²).
double prim(double u, double v) {
  double r2 = u * u + v * v;
  double out = 0.0;
  if (v != 0.0) out += 0.5 * v * std::log(r2);
  if (u != 0.0) out += u * std::atan(v / u);
  return out;
}

double box(double (*f)(double, double), double u0, double u1, double v0, double v1) {
  return f(u1, v1) - f(u0, v1) - f(u1, v0) + f(u0, v0);
}

double prim_swapped(double u, double v) { return prim(v, u); }

}  // namespace

SampledField dbar_fd(const SampledField& f) {
  require_3x3(f.grid);
  SampledField out = SampledField::constant(f.grid, Matrix::Zero(f.n, f.n));
  const Grid& g = f.grid;
  for (int j = g.j0() + 1; j < g.j1(); ++j)
    for (int i = g.i0() + 1; i < g.i1(); ++i) out.at(i, j) = dbar_at(f, i, j);
  return out;
}

double dbar_residual(const SampledField& f) {
  require_3x3(f.grid);
  const Grid& g = f.grid;
  double m = 0.0;
  for (int j = g.j0() + 1; j < g.j1(); ++j)
    for (int i = g.i0() + 1; i < g.i1(); ++i) m = std::max(m, norm(dbar_at(f, i, j)));
  return m;
}

ResidualStats dbar_residual_against(const SampledField& h, const SampledField& phi, int margin) {
  require_3x3(h.grid);
  if (!(h.grid == phi.grid)) throw StructureError("dbar residual: φ is not on h's grid");
  margin = std::max(margin, 1);
  const Grid& g = h.grid;
  ResidualStats s;
  double sum = 0.0;
  for (int j = g.j0() + margin; j <= g.j1() - margin; ++j)
    for (int i = g.i0() + margin; i <= g.i1() - margin; ++i) {
      double r = norm(dbar_at(h, i, j) - phi.at(i, j));
      s.max = std::max(s.max, r);
      sum += r * r;
      ++s.nodes;
    }
  s.l2 = std::sqrt(sum * g.hx() * g.hy());
  return s;
}

CellField CellField::from_nodes(const SampledField& f) {
  CellField c{f.grid, f.n, std::vector<Matrix>(f.grid.cells())};
  const Grid& g = f.grid;
  for (int cj = g.j0(); cj < g.j1(); ++cj)
    for (int ci = g.i0(); ci < g.i1(); ++ci)
      c.values[c.index(ci, cj)] =
          0.25 * (f.at(ci, cj) + f.at(ci + 1, cj) + f.at(ci, cj + 1) + f.at(ci + 1, cj + 1));
  return c;
}

CellField CellField::sample(const Grid& g, const HoloMap& f) {
  CellField c{g, 1, std::vector<Matrix>(g.cells())};
  for (int cj = g.j0(); cj < g.j1(); ++cj)
    for (int ci = g.i0(); ci < g.i1(); ++ci) c.values[c.index(ci, cj)] = f(g.cell_center(ci, cj));
  c.n = static_cast<int>(c.values.front().rows());
  return c;
}

Complex cell_integral(double u0, double u1, double v0, double v1) {
  return {box(prim, u0, u1, v0, v1), -box(prim_swapped, u0, u1, v0, v1)};
}

PompeiuSolver::PompeiuSolver(const Grid& grid) : grid_(grid) {
  const int nx = grid.nx(), ny = grid.ny();
  table_.assign(static_cast<std::size_t>(2 * nx + 1) * (2 * ny + 1), 0.0);
  const double hx = grid.hx(), hy = grid.hy();
  for (int dj = -ny; dj <= ny; ++dj)
    for (int di = -nx; di <= nx; ++di)
      table_[static_cast<std::size_t>(dj + ny) * (2 * nx + 1) + (di + nx)] =
          -cell_integral(di * hx, (di + 1) * hx, dj * hy, (dj + 1) * hy) / std::numbers::pi;
}

SampledField PompeiuSolver::solve(const CellField& phi) const {
  if (!(phi.grid == grid_)) throw StructureError("pompeiu: density lives on a different grid");
  const int n2 = phi.n * phi.n;
  // Nonzero cells, flattened into real/imaginary arrays.
  std::vector<int> ci, cj;
  std::vector<double> re, im;
  for (int j = grid_.j0(); j < grid_.j1(); ++j)
    for (int i = grid_.i0(); i < grid_.i1(); ++i) {
      const Matrix& m = phi.values[phi.index(i, j)];
      if (m.isZero(0.0)) continue;
      ci.push_back(i);
      cj.push_back(j);
      for (int e = 0; e < n2; ++e) {
        re.push_back(m.data()[e].real());
        im.push_back(m.data()[e].imag());
      }
    }
  std::vector<Matrix> out(grid_.size(), Matrix::Zero(phi.n, phi.n));
  const std::size_t cells = ci.size();
  if (cells == 0) return SampledField(grid_, phi.n, std::move(out));
  parallel_for(grid_.size(), [&](std::size_t b, std::size_t e) {
    std::vector<double> ar(n2), ai(n2);
    for (std::size_t k = b; k < e; ++k) {
      const int i = grid_.abs_i(k), j = grid_.abs_j(k);
      std::fill(ar.begin(), ar.end(), 0.0);
      std::fill(ai.begin(), ai.end(), 0.0);
      for (std::size_t c = 0; c < cells; ++c) {
        Complex kv = kernel(ci[c] - i, cj[c] - j);
        const double kr = kv.real(), ki = kv.imag();
        const double* pr = &re[c * n2];
        const double* pi = &im[c * n2];
        for (int q = 0; q < n2; ++q) {
          ar[q] += kr * pr[q] - ki * pi[q];
          ai[q] += kr * pi[q] + ki * pr[q];
        }
      }
      Matrix& m = out[k];
      for (int q = 0; q < n2; ++q) m.data()[q] = Complex(ar[q], ai[q]);
    }
  });
  return SampledField(grid_, phi.n, std::move(out));
}

Matrix PompeiuSolver::evaluate(const CellField& phi, Complex z) const {
  if (!(phi.grid == grid_)) throw StructureError("pompeiu: density lives on a different grid");
  Rectangle r = grid_.rectangle();
  if (!r.contains(z, 1e-12 * (1.0 + r.radius())))
    throw StructureError("pompeiu: evaluation point outside the closed domain");
  Matrix acc = Matrix::Zero(phi.n, phi.n);
  for (int j = grid_.j0(); j < grid_.j1(); ++j)
    for (int i = grid_.i0(); i < grid_.i1(); ++i) {
      const Matrix& m = phi.values[phi.index(i, j)];
      if (m.isZero(0.0)) continue;
      double u0 = grid_.x(i) - z.real(), v0 = grid_.y(j) - z.imag();
      acc += cell_integral(u0, u0 + grid_.hx(), v0, v0 + grid_.hy()) * m;
    }
  return -acc / std::numbers::pi;
}

SampledField pompeiu_solve(const SampledField& phi) {
  PompeiuSolver solver(phi.grid);
  return solver.solve(CellField::from_nodes(phi));
}

}  // namespace garbe
