#include <cmath>
#include <numbers>

#include "doctest.h"
#include "garbe/analytic/dbar.hpp"
#include "garbe/error.hpp"

using namespace garbe;

namespace {

Matrix scalar(Complex z) { return Matrix::Constant(1, 1, z); }

SampledField ones(const Grid& g) { return SampledField::constant(g, Matrix::Identity(1, 1)); }

// ∬ over [u0,u1]×[v0,v1] of 1/(u + iv) by tensor Gauss–Legendre (smooth cells only).
Complex gauss_cell(double u0, double u1, double v0, double v1) {
  const double x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
  const double w[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                       0.2369268850561891};
  Complex s = 0.0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      double u = 0.5 * (u0 + u1) + 0.5 * (u1 - u0) * x[a];
      double v = 0.5 * (v0 + v1) + 0.5 * (v1 - v0) * x[b];
      s += w[a] * w[b] / Complex(u, v);
    }
  return s * 0.25 * (u1 - u0) * (v1 - v0);
}

}  // namespace

TEST_CASE("dbar residual of z, zbar and z^2") {
  Grid g = Grid::uniform(Rectangle(-0.3, 0.7, 0.1, 1.1), 10, 12);
  CHECK(dbar_residual(SampledField::sample(g, [](Complex z) { return scalar(z); })) <= 1e-12);
  CHECK(dbar_residual(SampledField::sample(g, [](Complex z) { return scalar(std::conj(z)); })) ==
        doctest::Approx(1.0).epsilon(1e-12));
  Grid unit = Grid::uniform(Rectangle(0, 1, 0, 1), 63, 63);  // 64×64 nodes
  CHECK(dbar_residual(SampledField::sample(unit, [](Complex z) { return scalar(z * z); })) <= 1e-10);
  CHECK_THROWS_AS(dbar_residual(ones(Grid::uniform(Rectangle(0, 1, 0, 1), 1, 4))), StructureError);
}

TEST_CASE("cell integral against a singular and a smooth oracle") {
  // ∬_{[0,1]²} u/(u²+v²) = π/4 + ½ ln 2 (polar coordinates), and the
  // v-part is the same by symmetry.
  double q = std::numbers::pi / 4 + 0.5 * std::log(2.0);
  Complex exact = cell_integral(0, 1, 0, 1);
  CHECK(exact.real() == doctest::Approx(q).epsilon(1e-14));
  CHECK(exact.imag() == doctest::Approx(-q).epsilon(1e-14));
  for (auto [u0, v0] : {std::pair{2.0, 0.5}, {-3.0, 1.0}, {0.5, -2.5}}) {
    Complex a = cell_integral(u0, u0 + 0.25, v0, v0 + 0.5), b = gauss_cell(u0, u0 + 0.25, v0, v0 + 0.5);
    CHECK(std::abs(a - b) < 1e-8);
  }
  // a cell centred on the singularity integrates to zero by symmetry
  CHECK(std::abs(cell_integral(-0.5, 0.5, -0.5, 0.5)) < 1e-15);
}

TEST_CASE("Pompeiu solve: zero density, symmetry and evaluation") {
  Grid g = Grid::uniform(Rectangle(0, 1, 0, 1), 16, 16);
  PompeiuSolver solver(g);
  CellField zero{g, 1, std::vector<Matrix>(g.cells(), Matrix::Zero(1, 1))};
  CHECK(solver.solve(zero).max_norm() == 0.0);
  CellField one = CellField::from_nodes(ones(g));
  SampledField h = solver.solve(one);
  CHECK(std::abs(h.at(8, 8)(0, 0)) < 1e-14);  // centre of the square
  CHECK(norm(h.at(3, 5) - solver.evaluate(one, g.node(3, 5))) < 1e-13);
  CHECK_THROWS_AS(solver.evaluate(one, Complex(1.5, 0.5)), StructureError);
}

TEST_CASE("Pompeiu linearity") {
  Grid g = Grid::uniform(Rectangle(0, 1, 0, 1), 12, 12);
  SampledField a = SampledField::sample(g, [](Complex z) { return scalar(std::sin(z)); });
  SampledField b = SampledField::sample(g, [](Complex z) { return scalar(z * std::conj(z)); });
  Complex alpha(0.7, -1.3);
  SampledField lhs = pompeiu_solve(alpha * a + b);
  SampledField rhs = alpha * pompeiu_solve(a) + pompeiu_solve(b);
  CHECK(max_distance(lhs, rhs) < 1e-13);
}

TEST_CASE("Pompeiu residual is first order for a constant density") {
  auto run = [](int cells) {
    Grid g = Grid::uniform(Rectangle(0, 1, 0, 1), cells, cells);
    SampledField phi = ones(g);
    return dbar_residual_against(pompeiu_solve(phi), phi);
  };
  ResidualStats r32 = run(32), r64 = run(64);
  double ratio = r64.l2 / r32.l2;
  CHECK(ratio >= 0.4);
  CHECK(ratio <= 0.6);
  // the centre node sees the exact ∂̄ of z̄ plus a smooth correction
  Grid g = Grid::uniform(Rectangle(0, 1, 0, 1), 32, 32);
  SampledField phi = ones(g);
  SampledField d = dbar_fd(pompeiu_solve(phi));
  CHECK(std::abs(d.at(16, 16)(0, 0) - 1.0) < 0.1);
}
