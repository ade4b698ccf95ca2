#pragma once

#include <memory>

#include "garbe/analytic/cutoff.hpp"
#include "garbe/analytic/dbar.hpp"

namespace garbe {

// Two rectangles with a rectangular union, sampled on one lattice that puts
// every edge on a grid line.
struct PairGeometry {
  Rectangle r1, r2, overlap, uni;
  Grid grid;       // union
  Grid g1, g2, go; // windows: R̄1, R̄2, closed overlap
  Cutoff chi;
  std::shared_ptr<const PompeiuSolver> solver;

  // Spacing at most 1/cells_per_unit.
  static PairGeometry with_density(const Rectangle& r1, const Rectangle& r2, double cells_per_unit);
  // Spacing taken from a grid on the closed overlap.
  static PairGeometry from_overlap_grid(const Rectangle& r1, const Rectangle& r2, const Grid& overlap_grid);
};

struct AdditiveOptions {
  bool check_holomorphy = true;
  double holomorphy_tol = 1e-2;  // relative to max(1, ‖f‖)
};

struct AdditiveSplit {
  SampledField f1;  // over R̄1
  SampledField f2;  // over R̄2
  SampledField h;   // Pompeiu correction over the union
  double telescoping = 0.0;  // max ‖f − (f1 − f2)‖ on the overlap
};

// f = f1 − f2 with f1 = χf − h, f2 = (χ − 1)f − h and ∂h/∂z̄ = (∂χ/∂z̄)·f.
AdditiveSplit additive_split(const SampledField& f, const PairGeometry& geo, const AdditiveOptions& opt = {});

}  // namespace garbe
