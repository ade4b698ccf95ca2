#pragma once

#include <functional>
#include <string>
#include <vector>

#include "garbe/algebra/matrix.hpp"
#include "garbe/analytic/grid.hpp"

namespace garbe {

// Holomorphic input given as a callable; evaluable off the grid.
using HoloMap = std::function<Matrix(Complex)>;

// Matrix values at the nodes of a grid, row-major (j outer, i inner).
struct SampledField {
  Grid grid;
  int n = 1;
  std::vector<Matrix> values;
  bool closure = true;  // boundary nodes are samples of the closure

  SampledField() = default;
  SampledField(Grid g, int dim, std::vector<Matrix> v);

  static SampledField constant(const Grid& g, const Matrix& m);
  static SampledField sample(const Grid& g, const HoloMap& f);

  std::size_t size() const { return values.size(); }
  // absolute lattice indices
  const Matrix& at(int i, int j) const { return values[grid.index(i, j)]; }
  Matrix& at(int i, int j) { return values[grid.index(i, j)]; }

  // Values on a window of the same lattice.
  SampledField restricted(const Grid& sub) const;
  // The same values relabelled onto g; g must have the same shape and
  // (up to rounding) the same rectangle.
  SampledField rebased(const Grid& g) const;
  double max_norm() const;
};

SampledField operator+(const SampledField& a, const SampledField& b);
SampledField operator-(const SampledField& a, const SampledField& b);
SampledField operator*(Complex s, const SampledField& a);
// Pointwise product a(z)·b(z).
SampledField multiply(const SampledField& a, const SampledField& b);
// Pointwise solve-checked inverse.
SampledField inverse(const SampledField& a, const std::string& stage = "invert");
SampledField map_values(const SampledField& a, const std::function<Matrix(const Matrix&)>& fn);
// max over nodes of ‖a − b‖
double max_distance(const SampledField& a, const SampledField& b);
// max over nodes of ‖1 − a‖
double max_identity_distance(const SampledField& a);

}  // namespace garbe
