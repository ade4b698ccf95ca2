#include <cmath>

#include "doctest.h"
#include "garbe/analytic/additive_split.hpp"
#include "garbe/error.hpp"

using namespace garbe;

namespace {

Matrix scalar(Complex z) { return Matrix::Constant(1, 1, z); }

}  // namespace

TEST_CASE("pair geometry lattices") {
  auto geo = PairGeometry::with_density(Rectangle(0, 1, 0, 1), Rectangle(0.3, 1.7, 0, 1), 10);
  CHECK(geo.g1.rectangle().b == doctest::Approx(1.0));
  CHECK(geo.go.rectangle().a == doctest::Approx(0.3));
  CHECK(geo.grid.hx() <= 0.1 + 1e-12);
  CHECK_THROWS_AS(PairGeometry::with_density(Rectangle(0, 1, 0, 1), Rectangle(1, 2, 0, 1), 10),
                  StructureError);
  CHECK_THROWS_AS(PairGeometry::with_density(Rectangle(0, 1, 0, 1), Rectangle(0.5, 1.5, 0.5, 1.5), 10),
                  StructureError);
  Grid og = Grid::uniform(Rectangle(0.5, 1, 0, 1), 8, 16);
  auto g2 = PairGeometry::from_overlap_grid(Rectangle(0, 1, 0, 1), Rectangle(0.5, 1.5, 0, 1), og);
  CHECK(g2.go == og);
  CHECK(g2.grid.nx() == 24);
}

TEST_CASE("additive split of zero and constants") {
  auto geo = PairGeometry::with_density(Rectangle(0, 1, 0, 1), Rectangle(0.5, 1.5, 0, 1), 16);
  auto zero = additive_split(SampledField::constant(geo.go, Matrix::Zero(2, 2)), geo);
  CHECK(zero.f1.max_norm() == 0.0);
  CHECK(zero.f2.max_norm() == 0.0);
  Matrix c(2, 2);
  c << 1.0, Complex(0, 2), -3.0, 0.5;
  auto s = additive_split(SampledField::constant(geo.go, c), geo);
  for (std::size_t k = 0; k < geo.go.size(); ++k) {
    int i = geo.go.abs_i(k), j = geo.go.abs_j(k);
    CHECK(norm(s.f1.at(i, j) - s.f2.at(i, j) - c) <= 1e-15);
  }
}

TEST_CASE("additive split of z on overlapping unit squares") {
  auto geo = PairGeometry::with_density(Rectangle(0, 1, 0, 1), Rectangle(0.5, 1.5, 0, 1), 32);
  SampledField f = SampledField::sample(geo.go, [](Complex z) { return scalar(z); });
  auto s = additive_split(f, geo);
  CHECK(s.telescoping <= 1e-12);
  // φ = (∂χ/∂z̄)·f at the union nodes, zero off the overlap
  SampledField phi = SampledField::constant(geo.grid, Matrix::Zero(1, 1));
  for (std::size_t k = 0; k < geo.go.size(); ++k) {
    int i = geo.go.abs_i(k), j = geo.go.abs_j(k);
    phi.at(i, j) = geo.chi.dchi_dzbar(geo.go.node(k)) * f.values[k];
  }
  double pompeiu = dbar_residual_against(s.h, phi).max;
  CHECK(dbar_residual(s.f1) <= 2.0 * pompeiu);
  CHECK(dbar_residual(s.f2) <= 2.0 * pompeiu);
}

TEST_CASE("nested rectangles need no correction") {
  auto geo = PairGeometry::with_density(Rectangle(0.25, 0.75, 0, 1), Rectangle(0, 1, 0, 1), 16);
  SampledField f = SampledField::sample(geo.go, [](Complex z) { return scalar(std::exp(z)); });
  auto s = additive_split(f, geo);
  CHECK(s.h.max_norm() == 0.0);
  CHECK(max_distance(s.f1, f) == 0.0);
  CHECK(s.f2.max_norm() == 0.0);
}

TEST_CASE("non-holomorphic input is rejected") {
  auto geo = PairGeometry::with_density(Rectangle(0, 1, 0, 1), Rectangle(0.5, 1.5, 0, 1), 16);
  SampledField f = SampledField::sample(geo.go, [](Complex z) { return scalar(std::conj(z)); });
  CHECK_THROWS_AS(additive_split(f, geo), InputError);
}
