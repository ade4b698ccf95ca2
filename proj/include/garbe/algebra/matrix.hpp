#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>

namespace garbe {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Frobenius norm; submultiplicative, and ‖1‖ = √n.
inline double norm(const Matrix& a) { return a.norm(); }

inline Matrix identity(int n) { return Matrix::Identity(n, n); }

// Solve-based inverse: accepted when ‖a·x − 1‖ ≤ tol.
std::optional<Matrix> try_inverse(const Matrix& a, double tol = 1e-8);
Matrix checked_inverse(const Matrix& a, const std::string& stage = "invert",
                       double tol = 1e-8);
double inverse_residual(const Matrix& a, const Matrix& a_inv);

// Taylor series with scaling and squaring.
Matrix exp_series(const Matrix& a);

struct LogSeries {
  Matrix value;             // ln(1 − h)
  int terms = 0;            // K
  double norm_h = 0.0;
  double remainder_bound = 0.0;  // ‖h‖^{K+1} / ((K+1)(1 − ‖h‖))
  double margin = 1.0;      // 1 − ‖h‖
};

// ln(1 − h) = −Σ_{k≥1} h^k / k, truncated once the remainder bound is below tol.
LogSeries log_neumann(const Matrix& h, double tol = 1e-15);

}  // namespace garbe
