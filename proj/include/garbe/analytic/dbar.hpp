#pragma once

#include <memory>
#include <vector>

#include "garbe/analytic/sampled_field.hpp"

namespace garbe {

// ½(D_x + iD_y) f with centered differences at interior nodes; boundary
// nodes are zero.
SampledField dbar_fd(const SampledField& f);

// max over interior nodes of ‖∂f/∂z̄‖ (finite differences). Needs a 3×3 grid.
double dbar_residual(const SampledField& f);

struct ResidualStats {
  double max = 0.0;
  double l2 = 0.0;  // (Σ ‖r‖² hx hy)^{1/2}
  int nodes = 0;
};

// Residual ∂h/∂z̄ − φ over interior nodes at least `margin` cells from the
// boundary; φ holds node values on h's grid.
ResidualStats dbar_residual_against(const SampledField& h, const SampledField& phi, int margin = 1);

// Density frozen on cells; cell (ci, cj) spans nodes ci..ci+1 × cj..cj+1.
struct CellField {
  Grid grid;
  int n = 1;
  std::vector<Matrix> values;  // row-major over cells

  std::size_t index(int ci, int cj) const {
    return static_cast<std::size_t>(cj - grid.j0()) * grid.nx() + (ci - grid.i0());
  }
  // Corner average of node values.
  static CellField from_nodes(const SampledField& f);
  static CellField sample(const Grid& g, const HoloMap& f);
};

// ∬ 1/(u + iv) du dv over [u0, u1] × [v0, v1], in closed form.
Complex cell_integral(double u0, double u1, double v0, double v1);

// h(z) = −(1/π) ∬ φ(ζ)/(ζ − z) dλ(ζ) over the grid rectangle, with φ frozen
// per cell and each cell integrated exactly against the kernel.
class PompeiuSolver {
 public:
  explicit PompeiuSolver(const Grid& grid);

  const Grid& grid() const { return grid_; }
  // h at every node of the grid.
  SampledField solve(const CellField& phi) const;
  // h at any z in the closed rectangle.
  Matrix evaluate(const CellField& phi, Complex z) const;

 private:
  Complex kernel(int di, int dj) const {
    return table_[static_cast<std::size_t>(dj + grid_.ny()) * (2 * grid_.nx() + 1) + (di + grid_.nx())];
  }
  Grid grid_;
  std::vector<Complex> table_;  // −(1/π)·∫_cell 1/(ζ − node), by cell offset
};

// Convenience: φ given at nodes, frozen to cells by corner averages.
SampledField pompeiu_solve(const SampledField& phi);

}  // namespace garbe
