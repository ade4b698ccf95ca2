#include <cmath>

#include "doctest.h"
#include "garbe/analytic/graves.hpp"

using namespace garbe;

namespace {

struct Pair {
  double a = 0, b = 0;
  Pair operator+(const Pair& o) const { return {a + o.a, b + o.b}; }
};

GravesProblem<Pair, double> scalar_problem() {
  GravesProblem<Pair, double> p;
  p.theta = [](const Pair& x) { return (1 + x.a) * (1 + x.b) - 1; };
  p.right_inverse = [](double y) { return Pair{y / 2, y / 2}; };
  p.norm_x = [](const Pair& x) { return std::max(std::abs(x.a), std::abs(x.b)); };
  p.norm_y = [](double y) { return std::abs(y); };
  return p;
}

}  // namespace

TEST_CASE("zero target needs no iterations") {
  auto st = graves_solve(scalar_problem(), 0.0);
  CHECK(st.report.iterations == 0);
  CHECK(st.sum.a == 0.0);
  CHECK(st.sum.b == 0.0);
}

TEST_CASE("scalar square root") {
  auto st = graves_solve(scalar_problem(), 1.2 - 1.0);
  const double root = std::sqrt(1.2) - 1.0;  // 0.0954451...
  CHECK(st.sum.a == doctest::Approx(root).epsilon(1e-10));
  CHECK(st.sum.b == doctest::Approx(root).epsilon(1e-10));
  CHECK(std::abs(root - 0.095445) < 1e-6);
  const auto& r = st.report;
  CHECK(r.converged);
  CHECK(r.eps <= 0.9);
  for (int n = 1; n <= r.iterations; ++n)
    CHECK(r.defect(n) <= std::pow(r.eps, n) * r.x_norms.front() * (1 + 1e-12));
}

TEST_CASE("divergence is reported with its history") {
  auto p = scalar_problem();
  p.right_inverse = [](double y) { return Pair{-y, 0.0}; };  // wrong sign: defects grow
  try {
    graves_solve(p, 0.1);
    FAIL("expected divergence");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("defects:") != std::string::npos);
  }
}

TEST_CASE("slow contraction fails certification") {
  auto p = scalar_problem();
  // A damped right inverse contracts at rate 0.95 only.
  p.right_inverse = [](double y) { return Pair{0.025 * y, 0.025 * y}; };
  GravesOptions opt;
  opt.max_iter = 2000;
  opt.divergence_window = 50;
  CHECK_THROWS_AS(graves_solve(p, 0.01, opt), BoundViolation);
}
