#pragma once

#include <vector>

#include "garbe/analytic/polynomial.hpp"

namespace garbe {

// Dilation path H(t)(z) = f(t(z − z0) + z0) cut into steps
// R_k = H(t_k)H(t_{k−1})⁻¹ with ‖1 − R_k‖ ≤ δ at the check points.
// f = R_m ⋯ R_1 · base with base = f(z0).
struct NearIdentityPath {
  HoloMap f;
  Complex z0 = 0.0;
  Matrix base;
  std::vector<double> t;  // 0 = t_0 < ... < t_m = 1; empty when f is constant
  double max_h = 0.0;     // max ‖1 − R_k‖ seen at the check points

  int steps() const { return t.empty() ? 0 : static_cast<int>(t.size()) - 1; }
  Matrix H(double s, Complex z) const { return f(s * (z - z0) + z0); }
  Matrix step(int k, Complex z) const;  // R_k(z), 1 ≤ k ≤ m
};

struct NearIdentityOptions {
  double delta = 0.5;
  double min_step = 1.0 / (1 << 20);
};

NearIdentityPath near_identity_path(const HoloMap& f, Complex z0, const std::vector<Complex>& check_points,
                                    const NearIdentityOptions& opt = {});

struct NearIdentityFactors {
  NearIdentityPath path;
  // R_m, ..., R_1, then the constant base unless it is the identity; the
  // product in list order equals f at every node.
  std::vector<SampledField> factors;
};

// z0 is the centre of the grid rectangle.
NearIdentityFactors holo_near_identity_factors(const HoloMap& f, const Grid& nodes, double delta);

// f̃(z) = constant · exp(p_m(z)) ⋯ exp(p_1(z)); entire.
struct EntireMap {
  Matrix constant;
  std::vector<MatrixPolynomial> exponents;  // p_1, ..., p_m

  static EntireMap identity_map(int n) { return {identity(n), {}}; }
  int dim() const { return static_cast<int>(constant.rows()); }
  Matrix evaluate(Complex z) const;
  Matrix evaluate_inverse(Complex z) const;
  HoloMap as_map() const;
  HoloMap inverse_map() const;
};

struct EntireOptions {
  NearIdentityOptions path{};
  RungeOptions runge{};
  int retries = 4;
  // Sampled inputs: polynomial degree cap for the surrogate fit.
  int surrogate_degree = 40;
};

struct EntireResult {
  EntireMap map;
  double error = 0.0;   // max ‖1 − f f̃⁻¹‖ at the nodes
  int factors = 0;      // m
  double budget = 0.0;  // per-factor Runge tolerance of the accepted attempt
  int attempts = 0;
  double surrogate_error = 0.0;  // sampled inputs only
};

// ‖1 − f f̃⁻¹‖ < eps at the grid nodes. Stages: normalize, path, log, runge, verify.
EntireResult entire_approx(const HoloMap& f, const Grid& nodes, double eps, const EntireOptions& opt = {});
// Sampled input: least-squares polynomial surrogate, then the node-fit route.
EntireResult entire_approx(const SampledField& f, double eps, const EntireOptions& opt = {});

}  // namespace garbe
