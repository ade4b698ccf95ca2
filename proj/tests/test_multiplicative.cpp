#include <cmath>

#include "doctest.h"
#include "garbe/analytic/multiplicative_split.hpp"

using namespace garbe;

namespace {

PairGeometry unit_pair(double cells) {
  return PairGeometry::with_density(Rectangle(0, 1, 0, 1), Rectangle(0.5, 1.5, 0, 1), cells);
}

void check_decay(const GravesReport& r) {
  CHECK(r.eps <= 0.9);
  for (int n = 1; n <= r.iterations; ++n)
    CHECK(r.K * r.defect(n) <= std::pow(r.eps, n) * r.x_norms.front() * (1 + 1e-12));
}

}  // namespace

TEST_CASE("identity splits into identities") {
  auto geo = unit_pair(16);
  auto s = multiplicative_split_near_identity(SampledField::constant(geo.go, identity(2)), geo);
  CHECK(s.graves.iterations == 0);
  CHECK(max_identity_distance(s.f1) == 0.0);
  CHECK(max_identity_distance(s.f2) == 0.0);
}

TEST_CASE("scalar constant 1.1") {
  auto geo = unit_pair(16);
  auto s = multiplicative_split_near_identity(SampledField::constant(geo.go, Matrix::Constant(1, 1, 1.1)), geo);
  CHECK(s.residual <= 1e-8);
  CHECK(s.graves.iterations <= 30);
  check_decay(s.graves);
  CHECK(s.norm_g1 < 1.0);
  CHECK(s.norm_g2 < 1.0);
}

TEST_CASE("noncommuting 2x2 near-identity field") {
  auto geo = unit_pair(16);
  Matrix N(2, 2), M(2, 2);
  N << 0, 1, 0, 0;
  M << 0, 0, 1, 0;
  SampledField f = SampledField::sample(geo.go, [&](Complex z) { return Matrix(identity(2) + 0.05 * (N + z * M)); });
  auto s = multiplicative_split_near_identity(f, geo);
  CHECK(s.residual <= 1e-6);
  check_decay(s.graves);
  // f1, f2 are holomorphic up to the quadrature error
  CHECK(dbar_residual(s.f1) < 0.05);
  CHECK(dbar_residual(s.f2) < 0.05);
}

TEST_CASE("values outside the unit ball are refused") {
  auto geo = unit_pair(8);
  CHECK_THROWS_AS(
      multiplicative_split_near_identity(SampledField::constant(geo.go, Matrix::Constant(1, 1, 2.5)), geo),
      NumericalError);
}
