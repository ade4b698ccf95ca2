#include "garbe/algebra/matrix.hpp"

#include <cmath>

#include "garbe/error.hpp"

namespace garbe {

double inverse_residual(const Matrix& a, const Matrix& a_inv) {
  return (a * a_inv - identity(static_cast<int>(a.rows()))).norm();
}

std::optional<Matrix> try_inverse(const Matrix& a, double tol) {
  if (a.rows() != a.cols() || a.rows() == 0) return std::nullopt;
  Eigen::PartialPivLU<Matrix> lu(a);
  Matrix x = lu.solve(identity(static_cast<int>(a.rows())));
  double r = inverse_residual(a, x);
  if (!std::isfinite(r) || r > tol) return std::nullopt;
  return x;
}

Matrix checked_inverse(const Matrix& a, const std::string& stage, double tol) {
  auto x = try_inverse(a, tol);
  if (!x) throw NumericalError(stage, "value not invertible (solve residual above tolerance)");
  return *x;
}

Matrix exp_series(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  double na = a.norm();
  int squarings = 0;
  if (na > 0.5) squarings = static_cast<int>(std::ceil(std::log2(na / 0.5)));
  Matrix b = a / std::ldexp(1.0, squarings);
  Matrix sum = identity(n);
  Matrix term = identity(n);
  for (int k = 1; k < 60; ++k) {
    term = term * b / static_cast<double>(k);
    double nt = term.norm();
    if (nt == 0.0) break;
    sum += term;
    if (nt <= 1e-18 * sum.norm()) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

LogSeries log_neumann(const Matrix& h, double tol) {
  LogSeries out;
  const int n = static_cast<int>(h.rows());
  out.norm_h = h.norm();
  out.margin = 1.0 - out.norm_h;
  if (!(out.norm_h < 1.0))
    throw NumericalError("log_neumann", "series requires ‖h‖ < 1, got " + std::to_string(out.norm_h));
  out.value = Matrix::Zero(n, n);
  if (out.norm_h == 0.0) return out;
  Matrix power = identity(n);
  int k = 0;
  double bound = 0.0;
  do {
    ++k;
    power = power * h;
    out.value -= power / static_cast<double>(k);
    bound = std::pow(out.norm_h, k + 1) / ((k + 1) * out.margin);
  } while (bound > tol && k < 5000);
  if (bound > tol)
    throw NumericalError("log_neumann", "remainder bound not reached within 5000 terms");
  out.terms = k;
  out.remainder_bound = bound;
  return out;
}

}  // namespace garbe
