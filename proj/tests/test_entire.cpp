#include <cmath>

#include "doctest.h"
#include "garbe/analytic/entire_approx.hpp"
#include "garbe/error.hpp"

using namespace garbe;

namespace {

Matrix scalar(Complex z) { return Matrix::Constant(1, 1, z); }

Matrix product(const std::vector<SampledField>& fs, std::size_t k) {
  Matrix acc = identity(fs.front().n);
  for (const auto& f : fs) acc = acc * f.values[k];
  return acc;
}

Matrix swap_matrix() {
  Matrix M(2, 2);
  M << 0, 1, 1, 0;
  return M;
}

}  // namespace

TEST_CASE("near-identity factors of constants") {
  Grid g = Grid::uniform(Rectangle(0, 1, 0, 1), 8, 8);
  auto one = holo_near_identity_factors([](Complex) { return identity(2); }, g, 0.5);
  CHECK(one.factors.empty());
  Matrix c(2, 2);
  c << 2, 1, 0, 3;
  auto con = holo_near_identity_factors([&](Complex) { return c; }, g, 0.5);
  REQUIRE(con.factors.size() == 1);
  CHECK(norm(con.factors[0].values[5] - c) == 0.0);
}

TEST_CASE("near-identity factors of exp(z) telescope") {
  Grid g = Grid::uniform(Rectangle(0, 1, 0, 1), 16, 16);
  auto f = [](Complex z) { return Matrix(std::exp(z) * identity(2)); };
  auto r = holo_near_identity_factors(f, g, 0.5);
  CHECK(r.path.steps() >= 1);
  CHECK(r.path.max_h <= 0.5);
  double err = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) err = std::max(err, norm(product(r.factors, k) - f(g.node(k))));
  CHECK(err <= 1e-10);
  for (int k = 0; k < r.path.steps(); ++k) CHECK(max_identity_distance(r.factors[static_cast<std::size_t>(k)]) <= 0.5);
}

TEST_CASE("entire approximation of constants") {
  Grid g = Grid::uniform(Rectangle(0, 1, 0, 1), 8, 8);
  auto one = entire_approx([](Complex) { return identity(2); }, g, 1e-6);
  CHECK(one.factors == 0);
  CHECK(one.map.exponents.empty());
  CHECK(one.error == 0.0);
  Matrix c(2, 2);
  c << 2, 1, 0, 3;
  auto con = entire_approx([&](Complex) { return c; }, g, 1e-6);
  CHECK(con.error == 0.0);
  CHECK(norm(con.map.evaluate(Complex(5, -7)) - c) == 0.0);
}

TEST_CASE("entire approximation of exp(z)") {
  Grid g = Grid::uniform(Rectangle(0, 1, 0, 1), 32, 32);
  auto r = entire_approx([](Complex z) { return scalar(std::exp(z)); }, g, 1e-3);
  CHECK(r.error <= 1e-3);
  // measured independently of the library's own check
  double err = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    Complex z = g.node(k);
    err = std::max(err, std::abs(1.0 - std::exp(z) / r.map.evaluate(z)(0, 0)));
  }
  CHECK(err <= 1e-3);
  // evaluable far away
  CHECK(std::isfinite(std::abs(r.map.evaluate(Complex(40, 40))(0, 0))));
}

TEST_CASE("entire approximation of a noncommuting product, both routes") {
  Grid g = Grid::uniform(Rectangle(0, 1, 0, 1), 16, 16);
  Matrix C(2, 2);
  C << 2, 0, 0, 1;
  Matrix M = swap_matrix();
  HoloMap f = [&](Complex z) { return Matrix(exp_series(z * M) * C); };
  auto contour = entire_approx(f, g, 1e-6);
  CHECK(contour.error < 1e-6);
  auto sampled = entire_approx(SampledField::sample(g, f), 1e-6);
  CHECK(sampled.error < 1e-6);
  CHECK(sampled.surrogate_error > 0.0);
}

TEST_CASE("stage names travel with failures") {
  Grid g = Grid::uniform(Rectangle(-1, 1, -1, 1), 8, 8);
  try {
    entire_approx([](Complex z) { return scalar(z); }, g, 1e-3);  // f(z0) = 0
    FAIL("expected failure");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("entire_approx/normalize") == 0);
  }
}
