#pragma once

#include <vector>

#include "garbe/analytic/sampled_field.hpp"

namespace garbe {

// p(z) = Σ_k coeffs[k]·w^k with w = (z − center)/scale.
struct MatrixPolynomial {
  Complex center = 0.0;
  double scale = 1.0;
  std::vector<Matrix> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  int dim() const { return static_cast<int>(coeffs.front().rows()); }
  Matrix evaluate(Complex z) const;            // Horner
  Matrix evaluate_power_sum(Complex z) const;  // Σ w^k p_k, for cross-checks
  HoloMap as_map() const;
};

// Taylor coefficients about c in w = (z − c)/scale, by the M-point
// trapezoid rule for the Cauchy integral on |z − c| = radius.
std::vector<Matrix> taylor_coefficients(const HoloMap& f, Complex c, double scale, double radius, int M,
                                        int max_degree);

enum class RungeMethod {
  contour,   // Taylor coefficients from a circle of radius κ·r around the centre
  node_fit,  // least squares on the grid nodes
};

struct RungeOptions {
  RungeMethod method = RungeMethod::contour;
  double kappa = 2.0;
  int quadrature_points = 256;
  int max_degree = 120;
  int max_fit_degree = 40;
};

struct RungeResult {
  MatrixPolynomial poly;
  double error = 0.0;  // max over grid nodes of ‖f − p‖
};

// Lowest degree meeting max ‖f − p‖ < eps at the nodes of `nodes`; throws
// NumericalError with the achieved error when the cap is reached.
RungeResult runge_polynomial(const HoloMap& f, const Grid& nodes, double eps, const RungeOptions& opt = {});
// Node-fit route for sampled data.
RungeResult fit_polynomial(const SampledField& f, double eps, int max_degree = 40);

// Moving a pole: 1/(ζ0 − z) = Σ_{l=0}^{L} (ζ1 − ζ0)^l/(ζ1 − z)^{l+1} + remainder,
// valid for |ζ1 − ζ0| < |ζ1 − z|. Returns the partial sum.
Complex pole_shift_series(Complex zeta0, Complex zeta1, Complex z, int L);
// 1/(ζ − z) = Σ_{l≥0} z^l/ζ^{l+1} for |z| < |ζ|: coefficients of z^0..z^L.
std::vector<Complex> far_pole_coefficients(Complex zeta, int L);

}  // namespace garbe
