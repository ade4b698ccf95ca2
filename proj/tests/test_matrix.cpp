#include <cmath>
#include <random>

#include "doctest.h"
#include "garbe/algebra/matrix.hpp"
#include "garbe/error.hpp"

using namespace garbe;

namespace {

Matrix random_matrix(int n, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(d(rng), d(rng));
  return m * (scale / m.norm());
}

// ln(1/2) = −2 atanh(1/3) = −2 Σ 3^{−(2k+1)}/(2k+1)
double ln_half_oracle() {
  double s = 0.0, p = 1.0 / 3.0;
  for (int k = 0; k < 40; ++k) {
    s += p / (2 * k + 1);
    p /= 9.0;
  }
  return -2.0 * s;
}

double e_oracle() {
  double s = 0.0, t = 1.0;
  for (int k = 0; k < 25; ++k) {
    s += t;
    t /= (k + 1);
  }
  return s;
}

}  // namespace

TEST_CASE("Frobenius norm is submultiplicative") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    Matrix a = random_matrix(3, 2.0, rng), b = random_matrix(3, 0.7, rng);
    CHECK(norm(a * b) <= norm(a) * norm(b) * (1 + 1e-14));
  }
}

TEST_CASE("solve-based inverse") {
  Matrix a(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  auto x = try_inverse(a);
  REQUIRE(x);
  CHECK(inverse_residual(a, *x) < 1e-14);
  Matrix s(2, 2);
  s << 1.0, 2.0, 2.0, 4.0;
  CHECK_FALSE(try_inverse(s));
  CHECK_THROWS_AS(checked_inverse(s, "here"), NumericalError);
}

TEST_CASE("exponential series") {
  CHECK(norm(exp_series(Matrix::Zero(2, 2)) - identity(2)) == 0.0);
  Matrix nil(2, 2);
  nil << 0.0, 1.0, 0.0, 0.0;
  Matrix expect(2, 2);
  expect << 1.0, 1.0, 0.0, 1.0;
  CHECK(norm(exp_series(nil) - expect) == 0.0);
  Matrix one = Matrix::Constant(1, 1, 1.0);
  CHECK(std::abs(exp_series(one)(0, 0) - e_oracle()) < 1e-6);
  // large argument goes through squaring
  Matrix big = Matrix::Constant(1, 1, Complex(5.0, 3.0));
  CHECK(std::abs(exp_series(big)(0, 0) - std::exp(Complex(5.0, 3.0))) < 1e-10 * std::exp(5.0));
  std::mt19937_64 rng(42);
  for (int t = 0; t < 20; ++t) {
    Matrix a = random_matrix(3, 3.0, rng);
    CHECK(norm(exp_series(a) * exp_series(-a) - identity(3)) < 1e-11);
  }
}

TEST_CASE("logarithm series") {
  auto z = log_neumann(Matrix::Zero(2, 2));
  CHECK(norm(z.value) == 0.0);
  CHECK(z.terms == 0);
  auto half = log_neumann(Matrix::Constant(1, 1, 0.5));
  CHECK(std::abs(half.value(0, 0).real() - ln_half_oracle()) < 1e-14);
  CHECK(std::abs(half.value(0, 0).real() + 0.693147) < 1e-6);
  CHECK(half.remainder_bound <= 1e-15);
  CHECK(half.margin == doctest::Approx(0.5));
  CHECK_THROWS_AS(log_neumann(Matrix::Constant(1, 1, 1.0)), NumericalError);
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 0.3);
  for (int t = 0; t < 100; ++t) {
    Matrix h = random_matrix(3, u(rng), rng);
    Matrix back = exp_series(log_neumann(h).value);
    CHECK(norm(back - (identity(3) - h)) <= 1e-10);
  }
}
