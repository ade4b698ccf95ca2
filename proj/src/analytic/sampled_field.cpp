#include "garbe/analytic/sampled_field.hpp"

#include <algorithm>
#include <cmath>

#include "garbe/error.hpp"
#include "garbe/util/parallel.hpp"

namespace garbe {

namespace {

void require_same_grid(const SampledField& a, const SampledField& b, const char* what) {
  if (!(a.grid == b.grid) || a.n != b.n)
    throw StructureError(std::string(what) + ": fields live on different grids");
}

}  // namespace

SampledField::SampledField(Grid g, int dim, std::vector<Matrix> v)
    : grid(std::move(g)), n(dim), values(std::move(v)) {
  if (values.size() != grid.size()) throw StructureError("sampled field: value count does not match grid");
  for (const auto& m : values)
    if (m.rows() != n || m.cols() != n) throw StructureError("sampled field: value of the wrong size");
}

SampledField SampledField::constant(const Grid& g, const Matrix& m) {
  return SampledField(g, static_cast<int>(m.rows()), std::vector<Matrix>(g.size(), m));
}

SampledField SampledField::sample(const Grid& g, const HoloMap& f) {
  std::vector<Matrix> v(g.size());
  parallel_for(v.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) v[k] = f(g.node(k));
  });
  int n = static_cast<int>(v.front().rows());
  return SampledField(g, n, std::move(v));
}

SampledField SampledField::restricted(const Grid& sub) const {
  if (!sub.same_lattice(grid) || !grid.has_node(sub.i0(), sub.j0()) || !grid.has_node(sub.i1(), sub.j1()))
    throw StructureError("restriction to a grid that is not a window of the field's grid");
  std::vector<Matrix> v;
  v.reserve(sub.size());
  for (int j = sub.j0(); j <= sub.j1(); ++j)
    for (int i = sub.i0(); i <= sub.i1(); ++i) v.push_back(at(i, j));
  SampledField out(sub, n, std::move(v));
  out.closure = closure;
  return out;
}

SampledField SampledField::rebased(const Grid& g) const {
  if (g.nx() != grid.nx() || g.ny() != grid.ny())
    throw StructureError("field grid does not match the expected grid shape");
  Rectangle a = grid.rectangle(), b = g.rectangle();
  double tol = 1e-6 * std::min(g.hx(), g.hy());
  if (std::abs(a.a - b.a) > tol || std::abs(a.b - b.b) > tol || std::abs(a.c - b.c) > tol ||
      std::abs(a.d - b.d) > tol)
    throw StructureError("field rectangle does not match the expected rectangle");
  SampledField out(g, n, values);
  out.closure = closure;
  return out;
}

double SampledField::max_norm() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, norm(v));
  return m;
}

SampledField operator+(const SampledField& a, const SampledField& b) {
  require_same_grid(a, b, "sum");
  SampledField out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out.values[k] += b.values[k];
  return out;
}

SampledField operator-(const SampledField& a, const SampledField& b) {
  require_same_grid(a, b, "difference");
  SampledField out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out.values[k] -= b.values[k];
  return out;
}

SampledField operator*(Complex s, const SampledField& a) {
  SampledField out = a;
  for (auto& v : out.values) v *= s;
  return out;
}

SampledField multiply(const SampledField& a, const SampledField& b) {
  require_same_grid(a, b, "product");
  SampledField out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out.values[k] = a.values[k] * b.values[k];
  return out;
}

SampledField inverse(const SampledField& a, const std::string& stage) {
  SampledField out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out.values[k] = checked_inverse(a.values[k], stage);
  return out;
}

SampledField map_values(const SampledField& a, const std::function<Matrix(const Matrix&)>& fn) {
  SampledField out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out.values[k] = fn(a.values[k]);
  return out;
}

double max_distance(const SampledField& a, const SampledField& b) {
  require_same_grid(a, b, "distance");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, norm(a.values[k] - b.values[k]));
  return m;
}

double max_identity_distance(const SampledField& a) {
  double m = 0.0;
  Matrix one = identity(a.n);
  for (const auto& v : a.values) m = std::max(m, norm(one - v));
  return m;
}

}  // namespace garbe
