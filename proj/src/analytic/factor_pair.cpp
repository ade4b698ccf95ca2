#include "garbe/analytic/factor_pair.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <string>

#include "garbe/error.hpp"

namespace garbe {

namespace {

double pair_residual(const SampledField& f, const SampledField& f1, const SampledField& f2, const Grid& go) {
  double r = 0.0;
  for (std::size_t k = 0; k < go.size(); ++k) {
    int i = go.abs_i(k), j = go.abs_j(k);
    Matrix v = checked_inverse(f1.at(i, j), "factor residual") * f2.at(i, j);
    r = std::max(r, norm(f.at(i, j) - v));
  }
  return r;
}

FactorPairResult assemble(const SampledField& f, const PairGeometry& geo, const EntireResult& ent, double eps,
                          const FactorPairOptions& opt) {
  FactorPairResult out;
  out.geo = geo;
  out.ftilde = ent.map;
  out.entire_error = ent.error;
  SampledField one_plus_g = f;
  for (std::size_t k = 0; k < f.size(); ++k)
    one_plus_g.values[k] = f.values[k] * ent.map.evaluate_inverse(geo.go.node(k));
  try {
    out.mult = multiplicative_split_near_identity(one_plus_g, geo, opt.mult);
  } catch (const Error&) {
    rethrow_with_prefix("factor_pair_closed");
  }
  out.f1 = inverse(out.mult.f1, "factor_pair_closed/f1");
  out.f2 = out.mult.f2;
  for (std::size_t k = 0; k < out.f2.size(); ++k)
    out.f2.values[k] = out.f2.values[k] * ent.map.evaluate(geo.g2.node(k));
  for (const auto& v : out.f2.values) checked_inverse(v, "factor_pair_closed/f2");
  out.residual = pair_residual(f, out.f1, out.f2, geo.go);
  if (!(out.residual <= eps))
    throw BoundViolation("factor_pair_closed: residual " + std::to_string(out.residual) + " exceeds " +
                         std::to_string(eps));
  return out;
}

EntireResult approx_or_tag(const std::function<EntireResult()>& run) {
  try {
    return run();
  } catch (const Error&) {
    rethrow_with_prefix("factor_pair_closed");
  }
}

}  // namespace

FactorPairResult factor_pair_closed(const SampledField& f_in, const Rectangle& r1, const Rectangle& r2,
                                    double eps, const FactorPairOptions& opt) {
  PairGeometry geo = PairGeometry::from_overlap_grid(r1, r2, f_in.grid);
  SampledField f = f_in.grid == geo.go ? f_in : f_in.rebased(geo.go);
  EntireResult ent = approx_or_tag([&] { return entire_approx(f, opt.entire_eps, opt.entire); });
  return assemble(f, geo, ent, eps, opt);
}

FactorPairResult factor_pair_closed(const HoloMap& f, const PairGeometry& geo, double eps,
                                    const FactorPairOptions& opt) {
  SampledField fo = SampledField::sample(geo.go, f);
  EntireResult ent = approx_or_tag([&] { return entire_approx(f, geo.go, opt.entire_eps, opt.entire); });
  return assemble(fo, geo, ent, eps, opt);
}

FactorPairResult factor_pair_closed(const HoloMap& f, const Rectangle& r1, const Rectangle& r2,
                                    double cells_per_unit, double eps, const FactorPairOptions& opt) {
  return factor_pair_closed(f, PairGeometry::with_density(r1, r2, cells_per_unit), eps, opt);
}

OracleResult commutative_oracle(const SampledField& f_in, const PairGeometry& geo) {
  SampledField f = f_in.grid == geo.go ? f_in : f_in.rebased(geo.go);
  SampledField logf = map_values(f, [](const Matrix& m) { return Matrix(m.log()); });
  AdditiveSplit s = additive_split(logf, geo);
  OracleResult out;
  out.f1 = map_values(s.f1, [](const Matrix& m) { return exp_series(-m); });
  // L = L1 + L2 with L1 = s.f1, L2 = −s.f2
  out.f2 = map_values(s.f2, [](const Matrix& m) { return exp_series(-m); });
  out.residual = pair_residual(f, out.f1, out.f2, geo.go);
  return out;
}

OpenPairResult factor_pair_open(const HoloMap& f, const Rectangle& r1, const Rectangle& r2, int depth,
                                double cells_per_unit, double eps, const FactorPairOptions& opt_in) {
  if (depth < 2) throw InputError("factor_pair_open: depth must be at least 2");
  const PairGeometry outer = PairGeometry::with_density(r1, r2, cells_per_unit);
  const Grid& master = outer.grid;
  FactorPairOptions opt = opt_in;
  // Only values inside each level are available: fit on nodes, no contour.
  opt.entire.runge.method = RungeMethod::node_fit;

  const int N = depth;
  std::vector<PairGeometry> geo;
  std::vector<FactorPairResult> fac;
  for (int n = 1; n <= N; ++n) {
    const double sx = (N + 1 - n) * master.hx(), sy = (N + 1 - n) * master.hy();
    auto shrink = [&](const Rectangle& r) {
      if (!(2 * sx < r.width()) || !(2 * sy < r.height()))
        throw StructureError("factor_pair_open: depth too large for the grid");
      return Rectangle(r.a + sx, r.b - sx, r.c + sy, r.d - sy);
    };
    Rectangle a = shrink(r1), b = shrink(r2);
    auto ov = open_overlap(a, b);
    if (!ov) throw StructureError("factor_pair_open: level " + std::to_string(n) + " overlap is empty");
    geo.push_back(PairGeometry::from_overlap_grid(a, b, master.window(*ov)));
    try {
      fac.push_back(factor_pair_closed(f, geo.back(), eps, opt));
    } catch (const Error&) {
      rethrow_with_prefix("factor_pair_open level " + std::to_string(n));
    }
  }
  // index helpers: level n ↦ vector slot n − 1
  auto F = [&](int n) -> const FactorPairResult& { return fac[static_cast<std::size_t>(n - 1)]; };
  auto G = [&](int n) -> const PairGeometry& { return geo[static_cast<std::size_t>(n - 1)]; };
  // v_n = f_{jn} f_{j,n+1}⁻¹, j = 1 on R̄_{1n}, else 2.
  auto v_at = [&](int n, int i, int j) -> Matrix {
    const Grid& g1 = G(n).g1;
    if (g1.has_node(i, j)) return F(n).f1.at(i, j) * checked_inverse(F(n + 1).f1.at(i, j), "v_n");
    return F(n).f2.at(i, j) * checked_inverse(F(n + 1).f2.at(i, j), "v_n");
  };
  const int dim = F(1).f1.n;
  std::vector<EntireMap> g{EntireMap::identity_map(dim)};  // g[n − 1] = g_n
  OpenPairResult out;
  out.levels.resize(static_cast<std::size_t>(N - 1));
  for (int n = 1; n <= N - 1; ++n) {
    const Grid& un = G(n).grid;
    std::vector<Matrix> gv(un.size());
    for (std::size_t k = 0; k < un.size(); ++k)
      gv[k] = g.back().evaluate(un.node(k)) * v_at(n, un.abs_i(k), un.abs_j(k));
    const double budget = std::min(std::ldexp(1.0, -(n + 1)), eps);
    EntireResult ent;
    try {
      ent = entire_approx(SampledField(un, dim, std::move(gv)), budget, opt.entire);
    } catch (const Error&) {
      rethrow_with_prefix("factor_pair_open level " + std::to_string(n));
    }
    g.push_back(ent.map);
    auto& lv = out.levels[static_cast<std::size_t>(n - 1)];
    lv.r1 = G(n).r1;
    lv.r2 = G(n).r2;
    lv.factor_residual = F(n).residual;
    lv.entire_error = ent.error;
    lv.budget = budget;
  }
  // h_n = Π_{k=n}^{N−1} g_k v_k g_{k+1}⁻¹ and the assembled factors per level.
  const Matrix one = identity(dim);
  for (int n = 1; n <= N - 1; ++n) {
    auto& lv = out.levels[static_cast<std::size_t>(n - 1)];
    const PairGeometry& gn = G(n);
    const Grid& un = gn.grid;
    std::vector<Matrix> hinv_g(un.size());
    for (std::size_t q = 0; q < un.size(); ++q) {
      const int i = un.abs_i(q), j = un.abs_j(q);
      const Complex z = un.node(q);
      Matrix h = one;
      for (int k = n; k <= N - 1; ++k)
        h = h * g[static_cast<std::size_t>(k - 1)].evaluate(z) * v_at(k, i, j) *
            g[static_cast<std::size_t>(k)].evaluate_inverse(z);
      lv.tail_norm = std::max(lv.tail_norm, norm(one - h));
      hinv_g[q] = checked_inverse(h, "h_n") * g[static_cast<std::size_t>(n - 1)].evaluate(z);
    }
    lv.tail_bound = std::ldexp(1.0, -n) * std::exp(std::ldexp(1.0, -n));
    if (!(lv.tail_norm < lv.tail_bound))
      throw BoundViolation("factor_pair_open level " + std::to_string(n) + ": ‖1 − h_n‖ = " +
                           std::to_string(lv.tail_norm) + " not below 2^-n e^(2^-n) = " +
                           std::to_string(lv.tail_bound));
    auto assemble_j = [&](const SampledField& fj) {
      SampledField out_j = fj;
      for (std::size_t q = 0; q < fj.size(); ++q) {
        const int i = fj.grid.abs_i(q), j = fj.grid.abs_j(q);
        out_j.values[q] = hinv_g[un.index(i, j)] * fj.values[q];
      }
      return out_j;
    };
    SampledField F1 = assemble_j(F(n).f1), F2 = assemble_j(F(n).f2);
    SampledField fo = SampledField::sample(gn.go, f);
    lv.residual = pair_residual(fo, F1, F2, gn.go);
    if (n == N - 1) {
      out.f1 = std::move(F1);
      out.f2 = std::move(F2);
    }
  }
  return out;
}

}  // namespace garbe
