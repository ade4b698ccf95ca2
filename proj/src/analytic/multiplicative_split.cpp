#include "garbe/analytic/multiplicative_split.hpp"

#include <algorithm>
#include <string>

namespace garbe {

FieldPair operator+(const FieldPair& a, const FieldPair& b) { return {a.g1 + b.g1, a.g2 + b.g2}; }

MultiplicativeSplit multiplicative_split_near_identity(const SampledField& f_in, const PairGeometry& geo,
                                                       const MultiplicativeOptions& opt) {
  SampledField f = f_in.grid == geo.go ? f_in : f_in.rebased(geo.go);
  const int n = f.n;
  const Matrix one = identity(n);
  SampledField g = map_values(f, [&](const Matrix& m) { return Matrix(m - one); });

  MultiplicativeSplit out;
  out.norm_g = g.max_norm();
  if (!(out.norm_g < 1.0))
    throw NumericalError("split-mul", "‖g‖ = " + std::to_string(out.norm_g) + " is not below 1");

  GravesProblem<FieldPair, SampledField> p;
  p.theta = [&](const FieldPair& x) {
    SampledField a = x.g1.restricted(geo.go), b = x.g2.restricted(geo.go);
    return a + b + multiply(a, b);
  };
  AdditiveOptions add = opt.additive;
  p.right_inverse = [&](const SampledField& y) {
    AdditiveSplit s = additive_split(y, geo, add);
    add.check_holomorphy = false;  // later defects inherit holomorphy from y_1
    return FieldPair{std::move(s.f1), -1.0 * s.f2};
  };
  p.norm_x = [](const FieldPair& x) { return std::max(x.g1.max_norm(), x.g2.max_norm()); };
  p.norm_y = [](const SampledField& y) { return y.max_norm(); };

  GravesOptions gopt = opt.graves;
  gopt.tol = std::max(gopt.tol, 1e-14 * out.norm_g);
  GravesState<FieldPair, SampledField> st;
  try {
    st = graves_solve(p, g, gopt);
  } catch (const Error&) {
    rethrow_with_prefix("split-mul");
  }
  out.graves = st.report;
  const auto& d = st.report.defects;
  if (out.norm_g >= opt.eps0 && d.size() >= 3 && !(d[2] < 0.9 * d[1]))
    throw NumericalError("split-mul", "‖g‖ = " + std::to_string(out.norm_g) +
                                          " ≥ ε0 and the first two defects do not certify ratio < 0.9");
  out.norm_g1 = st.sum.g1.max_norm();
  out.norm_g2 = st.sum.g2.max_norm();
  if (!(out.norm_g1 < 1.0) || !(out.norm_g2 < 1.0))
    throw NumericalError("split-mul", "factor left the unit ball (‖g1‖ = " + std::to_string(out.norm_g1) +
                                          ", ‖g2‖ = " + std::to_string(out.norm_g2) + ")");
  auto shift = [&](const SampledField& x) {
    return map_values(x, [&](const Matrix& m) { return Matrix(one + m); });
  };
  out.f1 = shift(st.sum.g1);
  out.f2 = shift(st.sum.g2);
  // Solve-based invertibility check at every node.
  for (const auto* fld : {&out.f1, &out.f2})
    for (const auto& v : fld->values) checked_inverse(v, "split-mul");
  SampledField a = out.f1.restricted(geo.go), b = out.f2.restricted(geo.go);
  out.residual = max_distance(f, multiply(a, b));
  return out;
}

}  // namespace garbe
