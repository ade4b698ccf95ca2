#include "garbe/analytic/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "garbe/error.hpp"
#include "garbe/util/parallel.hpp"

namespace garbe {

Matrix MatrixPolynomial::evaluate(Complex z) const {
  const Complex w = (z - center) / scale;
  Matrix acc = coeffs.back();
  for (int k = degree() - 1; k >= 0; --k) acc = acc * w + coeffs[static_cast<std::size_t>(k)];
  return acc;
}

Matrix MatrixPolynomial::evaluate_power_sum(Complex z) const {
  const Complex w = (z - center) / scale;
  Matrix acc = Matrix::Zero(dim(), dim());
  for (int k = 0; k <= degree(); ++k) acc += std::pow(w, k) * coeffs[static_cast<std::size_t>(k)];
  return acc;
}

HoloMap MatrixPolynomial::as_map() const {
  return [p = *this](Complex z) { return p.evaluate(z); };
}

std::vector<Matrix> taylor_coefficients(const HoloMap& f, Complex c, double scale, double radius, int M,
                                        int max_degree) {
  if (M <= 2 * max_degree) throw InputError("taylor coefficients: need more quadrature points than 2·degree");
  std::vector<Matrix> samples(static_cast<std::size_t>(M));
  parallel_for(samples.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t m = b; m < e; ++m)
      samples[m] = f(c + std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(m) / M));
  });
  const int n = static_cast<int>(samples.front().rows());
  const double kappa = radius / scale;
  std::vector<Matrix> out;
  for (int k = 0; k <= max_degree; ++k) {
    Matrix a = Matrix::Zero(n, n);
    for (int m = 0; m < M; ++m) {
      // e^{−ikθ_m}, with k·m reduced mod M for an accurate angle
      double th = -2.0 * std::numbers::pi * static_cast<double>((static_cast<long>(k) * m) % M) / M;
      a += std::polar(1.0, th) * samples[static_cast<std::size_t>(m)];
    }
    out.push_back(a / (static_cast<double>(M) * std::pow(kappa, k)));
  }
  return out;
}

namespace {

// Incremental partial sums at the nodes: adds coefficient k and returns the
// max error against the targets.
struct NodeSums {
  std::vector<Complex> w, wk;
  std::vector<Matrix> sum;
  const std::vector<Matrix>* target;

  NodeSums(const Grid& g, Complex c, double scale, const std::vector<Matrix>& t, int n) : target(&t) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      w.push_back((g.node(k) - c) / scale);
      wk.push_back(1.0);
    }
    sum.assign(g.size(), Matrix::Zero(n, n));
  }
  double add(const Matrix& a) {
    double err = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      sum[k] += wk[k] * a;
      wk[k] *= w[k];
      err = std::max(err, norm((*target)[k] - sum[k]));
    }
    return err;
  }
};

}  // namespace

RungeResult runge_polynomial(const HoloMap& f, const Grid& nodes, double eps, const RungeOptions& opt) {
  if (opt.method == RungeMethod::node_fit)
    return fit_polynomial(SampledField::sample(nodes, f), eps, opt.max_fit_degree);
  const Rectangle r = nodes.rectangle();
  const Complex c = r.center();
  const double scale = r.radius();
  SampledField target = SampledField::sample(nodes, f);
  int M = std::max(opt.quadrature_points, 2 * opt.max_degree + 16);
  auto coeffs = taylor_coefficients(f, c, scale, opt.kappa * scale, M, opt.max_degree);
  NodeSums sums(nodes, c, scale, target.values, target.n);
  RungeResult out;
  out.poly.center = c;
  out.poly.scale = scale;
  double err = 0.0;
  for (int k = 0; k <= opt.max_degree; ++k) {
    out.poly.coeffs.push_back(coeffs[static_cast<std::size_t>(k)]);
    err = sums.add(coeffs[static_cast<std::size_t>(k)]);
    if (err < eps) {
      out.error = err;
      return out;
    }
  }
  throw NumericalError("runge_polynomial", "tolerance " + std::to_string(eps) + " not reached at degree " +
                                               std::to_string(opt.max_degree) + " (achieved " +
                                               std::to_string(err) + ")");
}

RungeResult fit_polynomial(const SampledField& f, double eps, int max_degree) {
  const Grid& g = f.grid;
  const Rectangle r = g.rectangle();
  const Complex c = r.center();
  const double scale = r.radius();
  const int rows = static_cast<int>(g.size());
  const int n = f.n;
  max_degree = std::min(max_degree, rows - 1);
  // Vandermonde in w, one QR for all degrees: the leading k columns of R
  // and of Qᴴb solve the degree k−1 problem.
  Eigen::MatrixXcd V(rows, max_degree + 1);
  for (int k = 0; k < rows; ++k) {
    Complex w = (g.node(static_cast<std::size_t>(k)) - c) / scale, p = 1.0;
    for (int d = 0; d <= max_degree; ++d) {
      V(k, d) = p;
      p *= w;
    }
  }
  Eigen::MatrixXcd B(rows, n * n);
  for (int k = 0; k < rows; ++k)
    for (int e = 0; e < n * n; ++e) B(k, e) = f.values[static_cast<std::size_t>(k)].data()[e];
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(V);
  Eigen::MatrixXcd QhB = qr.householderQ().adjoint() * B;
  const Eigen::MatrixXcd& R = qr.matrixQR();
  RungeResult out;
  out.poly.center = c;
  out.poly.scale = scale;
  double best = std::numeric_limits<double>::infinity();
  for (int d = 0; d <= max_degree; ++d) {
    const int m = d + 1;
    Eigen::MatrixXcd X =
        R.topLeftCorner(m, m).triangularView<Eigen::Upper>().solve(QhB.topRows(m));
    Eigen::MatrixXcd resid = B - V.leftCols(m) * X;
    double err = 0.0;
    for (int k = 0; k < rows; ++k) err = std::max(err, resid.row(k).norm());
    best = std::min(best, err);
    if (err < eps) {
      for (int j = 0; j < m; ++j) {
        Matrix a(n, n);
        for (int e = 0; e < n * n; ++e) a.data()[e] = X(j, e);
        out.poly.coeffs.push_back(a);
      }
      out.error = err;
      return out;
    }
  }
  throw NumericalError("fit_polynomial", "tolerance " + std::to_string(eps) + " not reached at degree " +
                                             std::to_string(max_degree) + " (best " + std::to_string(best) +
                                             ")");
}

Complex pole_shift_series(Complex zeta0, Complex zeta1, Complex z, int L) {
  Complex q = (zeta1 - zeta0) / (zeta1 - z);
  Complex sum = 0.0, term = 1.0 / (zeta1 - z);
  for (int l = 0; l <= L; ++l) {
    sum += term;
    term *= q;
  }
  return sum;
}

std::vector<Complex> far_pole_coefficients(Complex zeta, int L) {
  std::vector<Complex> out;
  Complex t = 1.0 / zeta;
  for (int l = 0; l <= L; ++l) {
    out.push_back(t);
    t /= zeta;
  }
  return out;
}

}  // namespace garbe
