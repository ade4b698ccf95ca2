#include "garbe/analytic/entire_approx.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "garbe/error.hpp"
#include "garbe/util/parallel.hpp"

namespace garbe {

Matrix NearIdentityPath::step(int k, Complex z) const {
  return H(t[static_cast<std::size_t>(k)], z) *
         checked_inverse(H(t[static_cast<std::size_t>(k - 1)], z), "holo_near_identity_factors");
}

NearIdentityPath near_identity_path(const HoloMap& f, Complex z0, const std::vector<Complex>& pts,
                                    const NearIdentityOptions& opt) {
  if (!(opt.delta > 0.0 && opt.delta < 1.0)) throw InputError("near-identity path: δ must lie in (0, 1)");
  NearIdentityPath p;
  p.f = f;
  p.z0 = z0;
  p.base = f(z0);
  checked_inverse(p.base, "holo_near_identity_factors");
  const int n = static_cast<int>(p.base.rows());

  std::map<double, std::vector<Matrix>> cache;
  auto values = [&](double s) -> const std::vector<Matrix>& {
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
    std::vector<Matrix> v(pts.size());
    parallel_for(v.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) v[k] = p.H(s, pts[k]);
    });
    return cache.emplace(s, std::move(v)).first->second;
  };
  // Constant path: nothing to factor.
  {
    const auto& v1 = values(1.0);
    bool constant = true;
    for (const auto& m : v1) constant = constant && (m - p.base).isZero(0.0);
    if (constant) return p;
  }
  auto ratio = [&](double a, double b) {
    const auto& va = values(a);
    const auto& vb = values(b);
    double worst = 0.0;
    Matrix one = identity(n);
    for (std::size_t k = 0; k < pts.size(); ++k) {
      auto inv = try_inverse(va[k]);
      if (!inv) throw NumericalError("holo_near_identity_factors", "path value not invertible");
      worst = std::max(worst, norm(one - vb[k] * *inv));
    }
    return worst;
  };
  p.t.push_back(0.0);
  std::vector<double> pending{1.0};
  double a = 0.0;
  while (!pending.empty()) {
    double b = pending.back();
    double r = ratio(a, b);
    if (r <= opt.delta) {
      p.t.push_back(b);
      p.max_h = std::max(p.max_h, r);
      pending.pop_back();
      a = b;
      continue;
    }
    if (b - a < opt.min_step)
      throw NumericalError("holo_near_identity_factors",
                           "ratio not within δ even at step " + std::to_string(b - a) +
                               "; f(z0) is not connectable along the dilation path");
    pending.push_back(0.5 * (a + b));
  }
  return p;
}

NearIdentityFactors holo_near_identity_factors(const HoloMap& f, const Grid& nodes, double delta) {
  std::vector<Complex> pts;
  for (std::size_t k = 0; k < nodes.size(); ++k) pts.push_back(nodes.node(k));
  NearIdentityOptions opt;
  opt.delta = delta;
  NearIdentityFactors out;
  out.path = near_identity_path(f, nodes.rectangle().center(), pts, opt);
  for (int k = out.path.steps(); k >= 1; --k) {
    std::vector<Matrix> v(nodes.size());
    for (std::size_t q = 0; q < v.size(); ++q) v[q] = out.path.step(k, pts[q]);
    out.factors.emplace_back(nodes, static_cast<int>(out.path.base.rows()), std::move(v));
  }
  if (!(out.path.base - identity(static_cast<int>(out.path.base.rows()))).isZero(0.0))
    out.factors.push_back(SampledField::constant(nodes, out.path.base));
  return out;
}

Matrix EntireMap::evaluate(Complex z) const {
  Matrix acc = constant;
  for (auto it = exponents.rbegin(); it != exponents.rend(); ++it) acc = acc * exp_series(it->evaluate(z));
  return acc;
}

Matrix EntireMap::evaluate_inverse(Complex z) const {
  Matrix acc = identity(dim());
  for (const auto& p : exponents) acc = acc * exp_series(-p.evaluate(z));
  return acc * checked_inverse(constant, "entire map");
}

HoloMap EntireMap::as_map() const {
  return [m = *this](Complex z) { return m.evaluate(z); };
}

HoloMap EntireMap::inverse_map() const {
  return [m = *this](Complex z) { return m.evaluate_inverse(z); };
}

namespace {

std::vector<Complex> contour_points(const Grid& nodes, const RungeOptions& ro) {
  const Rectangle r = nodes.rectangle();
  const Complex c = r.center();
  const double radius = ro.kappa * r.radius();
  const int M = std::max(ro.quadrature_points, 2 * ro.max_degree + 16);
  std::vector<Complex> out;
  for (int m = 0; m < M; ++m) out.push_back(c + std::polar(radius, 2.0 * std::numbers::pi * m / M));
  return out;
}

double verify_error(const SampledField& target, const EntireMap& map) {
  std::vector<double> err(target.size());
  const Matrix one = identity(target.n);
  parallel_for(err.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k)
      err[k] = norm(one - target.values[k] * map.evaluate_inverse(target.grid.node(k)));
  });
  return *std::max_element(err.begin(), err.end());
}

}  // namespace

EntireResult entire_approx(const HoloMap& f, const Grid& nodes, double eps, const EntireOptions& opt) {
  if (!(eps > 0)) throw InputError("entire_approx: ε must be positive");
  const Complex z0 = nodes.rectangle().center();
  SampledField target;
  Matrix c, cinv;
  try {
    target = SampledField::sample(nodes, f);
    c = f(z0);
    cinv = checked_inverse(c, "f(z0)");
  } catch (const Error&) {
    rethrow_with_prefix("entire_approx/normalize");
  }
  HoloMap F = [f, cinv](Complex z) { return Matrix(cinv * f(z)); };

  std::vector<Complex> pts;
  for (std::size_t k = 0; k < nodes.size(); ++k) pts.push_back(nodes.node(k));
  if (opt.runge.method == RungeMethod::contour) {
    auto extra = contour_points(nodes, opt.runge);
    pts.insert(pts.end(), extra.begin(), extra.end());
  }
  NearIdentityPath path;
  try {
    path = near_identity_path(F, z0, pts, opt.path);
  } catch (const Error&) {
    rethrow_with_prefix("entire_approx/path");
  }
  const int m = path.steps();
  EntireResult out;
  out.factors = m;
  out.map.constant = c;
  if (m == 0) {
    out.error = verify_error(target, out.map);
    if (!(out.error < eps))
      throw NumericalError("entire_approx/verify", "constant map misses ε (" + std::to_string(out.error) + ")");
    return out;
  }
  double budget = eps / (2.0 * m);
  for (int attempt = 1; attempt <= opt.retries; ++attempt) {
    out.map.exponents.clear();
    for (int k = 1; k <= m; ++k) {
      HoloMap logk = [&path, k](Complex z) {
        Matrix R = path.step(k, z);
        return log_neumann(identity(static_cast<int>(R.rows())) - R).value;
      };
      try {
        out.map.exponents.push_back(runge_polynomial(logk, nodes, budget, opt.runge).poly);
      } catch (const Error&) {
        rethrow_with_prefix("entire_approx/runge factor " + std::to_string(k));
      }
    }
    out.error = verify_error(target, out.map);
    out.budget = budget;
    out.attempts = attempt;
    if (out.error < eps) return out;
    budget /= 4.0;
  }
  throw NumericalError("entire_approx/verify", "‖1 − f f̃⁻¹‖ = " + std::to_string(out.error) +
                                                   " not below " + std::to_string(eps) + " after " +
                                                   std::to_string(opt.retries) + " attempts");
}

EntireResult entire_approx(const SampledField& f, double eps, const EntireOptions& opt) {
  if (!(eps > 0)) throw InputError("entire_approx: ε must be positive");
  double inv_norm = 0.0;
  try {
    for (const auto& v : f.values) inv_norm = std::max(inv_norm, norm(checked_inverse(v, "invert")));
  } catch (const Error&) {
    rethrow_with_prefix("entire_approx/normalize");
  }
  EntireOptions inner = opt;
  inner.runge.method = RungeMethod::node_fit;
  double fit_tol = eps / (4.0 * inv_norm);
  double inner_eps = eps / 2.0;
  EntireResult out;
  for (int attempt = 1; attempt <= opt.retries; ++attempt) {
    RungeResult surrogate;
    try {
      surrogate = fit_polynomial(f, fit_tol, opt.surrogate_degree);
    } catch (const Error&) {
      rethrow_with_prefix("entire_approx/surrogate");
    }
    out = entire_approx(surrogate.poly.as_map(), f.grid, inner_eps, inner);
    out.surrogate_error = surrogate.error;
    out.error = verify_error(f, out.map);
    out.attempts = attempt;
    if (out.error < eps) return out;
    fit_tol /= 4.0;
    inner_eps /= 4.0;
  }
  throw NumericalError("entire_approx/verify", "sampled input: ‖1 − f f̃⁻¹‖ = " + std::to_string(out.error) +
                                                   " not below " + std::to_string(eps));
}

}  // namespace garbe
