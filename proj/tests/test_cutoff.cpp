#include "doctest.h"
#include "garbe/analytic/cutoff.hpp"
#include "garbe/error.hpp"

using namespace garbe;

TEST_CASE("smoothstep values") {
  CHECK(smoothstep(0.25) == 0.103515625);
  CHECK(smoothstep(0.5) == 0.5);
  CHECK(smoothstep(-1.0) == 0.0);
  CHECK(smoothstep(2.0) == 1.0);
  CHECK(smoothstep_derivative(0.0) == 0.0);
  CHECK(smoothstep_derivative(1.0) == 0.0);
  // derivative against a centered difference
  for (double t : {0.1, 0.3, 0.7}) {
    double fd = (smoothstep(t + 1e-6) - smoothstep(t - 1e-6)) / 2e-6;
    CHECK(smoothstep_derivative(t) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("horizontal strip cutoff") {
  Rectangle r1(0, 1, 0, 1), r2(0.5, 1.5, 0, 1);
  Cutoff chi = Cutoff::make(r1, r2);
  CHECK(chi.kind() == Cutoff::Kind::horizontal);
  CHECK(chi.chi({0.75, 0.3}) == 0.5);
  CHECK(chi.chi({0.2, 0.3}) == 0.0);
  CHECK(chi.dchi_dzbar({0.2, 0.3}) == Complex(0.0));
  CHECK(chi.chi({1.2, 0.9}) == 1.0);
  CHECK(chi.dchi_dzbar({1.2, 0.9}) == Complex(0.0));
  // ∂χ/∂z̄ = ½χ_x
  Complex z(0.6, 0.5);
  double fd = (chi.chi(z + 1e-6) - chi.chi(z - 1e-6)) / 2e-6;
  CHECK(chi.dchi_dzbar(z).real() == doctest::Approx(0.5 * fd).epsilon(1e-7));
  CHECK(chi.dchi_dzbar(z).imag() == 0.0);
  // R1 on the right: χ falls
  Cutoff rev = Cutoff::make(r2, r1);
  CHECK(rev.chi({0.2, 0.3}) == 1.0);
  CHECK(rev.chi({1.2, 0.3}) == 0.0);
}

TEST_CASE("vertical strip and nested cutoffs") {
  Rectangle r1(0, 1, 0, 1), r2(0, 1, 0.6, 2);
  Cutoff chi = Cutoff::make(r1, r2);
  CHECK(chi.kind() == Cutoff::Kind::vertical);
  CHECK(chi.chi({0.5, 0.8}) == doctest::Approx(0.5));
  Complex z(0.5, 0.7);
  double fd = (chi.chi(z + Complex(0, 1e-6)) - chi.chi(z - Complex(0, 1e-6))) / 2e-6;
  CHECK(chi.dchi_dzbar(z).imag() == doctest::Approx(0.5 * fd).epsilon(1e-7));
  CHECK(chi.dchi_dzbar(z).real() == 0.0);
  Cutoff inner = Cutoff::make(Rectangle(0.2, 0.8, 0.2, 0.8), r1);
  CHECK(inner.chi({0.5, 0.5}) == 1.0);
  Cutoff outer = Cutoff::make(r1, Rectangle(0.2, 0.8, 0.2, 0.8));
  CHECK(outer.chi({0.5, 0.5}) == 0.0);
}

TEST_CASE("cutoff geometry errors") {
  CHECK_THROWS_AS(Cutoff::make(Rectangle(0, 1, 0, 1), Rectangle(1, 2, 0, 1)), StructureError);
  CHECK_THROWS_AS(Cutoff::make(Rectangle(0, 1, 0, 1), Rectangle(0.5, 1.5, 0.5, 1.5)), StructureError);
  CHECK_THROWS_AS(Rectangle(1, 0, 0, 1), StructureError);
}
