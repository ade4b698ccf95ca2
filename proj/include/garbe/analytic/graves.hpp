#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "garbe/error.hpp"

namespace garbe {

template <class X, class Y>
struct GravesProblem {
  std::function<Y(const X&)> theta;          // Θ with Θ(0) = 0
  std::function<X(const Y&)> right_inverse;  // R with Θ'(0)∘R = id
  std::function<double(const X&)> norm_x;
  std::function<double(const Y&)> norm_y;
};

struct GravesOptions {
  double tol = 1e-12;     // stop once ‖y_{n+1}‖ ≤ tol
  int max_iter = 50;
  double eps_max = 0.9;   // certified contraction must not exceed this
  int divergence_window = 3;
};

struct GravesReport {
  int iterations = 0;
  std::vector<double> defects;   // ‖y_1‖, ‖y_2‖, ...
  std::vector<double> x_norms;   // ‖x_1‖, ‖x_2‖, ...
  double K = 1.0;    // max(1, max ‖x_n‖/‖y_n‖): y is measured in K·‖·‖
  double eps = 0.0;  // max K‖y_{n+1}‖/‖x_n‖
  bool converged = false;

  // Defect after n corrections, ‖y_{n+1}‖.
  double defect(int n) const { return defects[static_cast<std::size_t>(n)]; }
  std::string history() const {
    std::ostringstream os;
    os << "defects:";
    for (double d : defects) os << ' ' << d;
    return os.str();
  }
};

template <class X, class Y>
struct GravesState {
  X sum;     // x_1 + ... + x_n
  Y defect;  // y_{n+1}
  GravesReport report;
};

// Correction scheme x_1 = R(y_1), y_{n+1} = y_1 − Θ(x_1 + ... + x_n),
// x_{n+1} = R(y_{n+1}). Afterwards certifies K‖y_{n+1}‖ ≤ εⁿ‖x_1‖ with
// ε ≤ eps_max (BoundViolation otherwise). Needs X + X and Y − Y.
template <class X, class Y>
GravesState<X, Y> graves_solve(const GravesProblem<X, Y>& p, const Y& y1, const GravesOptions& opt = {}) {
  GravesReport rep;
  std::vector<double> y_in;  // ‖y_n‖ fed into R
  X x = p.right_inverse(y1);
  X sum = x;
  Y y = y1;
  double d = p.norm_y(y1);
  rep.defects.push_back(d);
  if (d <= opt.tol) {
    rep.converged = true;
    return {sum, y, rep};
  }
  y_in.push_back(d);
  rep.x_norms.push_back(p.norm_x(x));
  for (int n = 1; n <= opt.max_iter; ++n) {
    y = y1 - p.theta(sum);
    d = p.norm_y(y);
    rep.defects.push_back(d);
    rep.iterations = n;
    if (!std::isfinite(d)) throw NumericalError("graves", "defect is not finite; " + rep.history());
    if (d <= opt.tol) {
      rep.converged = true;
      break;
    }
    const int w = opt.divergence_window;
    if (n > w) {
      bool growing = true;
      for (int k = n - w + 1; k <= n; ++k) growing = growing && rep.defects[k] >= rep.defects[k - 1];
      if (growing)
        throw NumericalError("graves", "defect ratio ≥ 1 over " + std::to_string(w) + " steps; " +
                                           rep.history());
    }
    if (n == opt.max_iter) break;
    x = p.right_inverse(y);
    sum = sum + x;
    y_in.push_back(d);
    rep.x_norms.push_back(p.norm_x(x));
  }
  if (!rep.converged)
    throw NumericalError("graves", "no convergence within " + std::to_string(opt.max_iter) +
                                       " iterations; " + rep.history());
  for (std::size_t k = 0; k < rep.x_norms.size(); ++k)
    if (y_in[k] > 0) rep.K = std::max(rep.K, rep.x_norms[k] / y_in[k]);
  for (int n = 1; n <= rep.iterations; ++n) {
    double xn = rep.x_norms[static_cast<std::size_t>(n - 1)];
    if (xn > 0) rep.eps = std::max(rep.eps, rep.K * rep.defect(n) / xn);
  }
  if (rep.eps > opt.eps_max)
    throw BoundViolation("graves: certified contraction " + std::to_string(rep.eps) + " exceeds " +
                         std::to_string(opt.eps_max) + "; " + rep.history());
  const double x1 = rep.x_norms.front();
  for (int n = 1; n <= rep.iterations; ++n)
    if (rep.K * rep.defect(n) > std::pow(rep.eps, n) * x1 * (1.0 + 1e-12))
      throw BoundViolation("graves: defect after " + std::to_string(n) + " steps exceeds eps^n ‖x_1‖; " +
                           rep.history());
  return {sum, y, rep};
}

}  // namespace garbe
