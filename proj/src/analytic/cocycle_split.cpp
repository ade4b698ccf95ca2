#include "garbe/analytic/cocycle_split.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "garbe/error.hpp"

namespace garbe {

RectangleCover RectangleCover::make(const Grid& master, const std::vector<Rectangle>& rects) {
  RectangleCover rc;
  rc.master = master;
  rc.rects = rects;
  std::vector<Region> members;
  for (std::size_t m = 0; m < rects.size(); ++m) {
    Grid w;
    try {
      w = master.window(rects[m]);
    } catch (const StructureError& e) {
      throw StructureError("rectangle cover member " + std::to_string(m + 1) + ": " + e.what());
    }
    std::vector<PointId> ids;
    for (std::size_t k = 0; k < w.size(); ++k)
      ids.push_back(static_cast<PointId>(master.index(w.abs_i(k), w.abs_j(k))));
    members.emplace_back(std::move(ids));
  }
  rc.cover = Cover(std::move(members));
  return rc;
}

Rectangle RectangleCover::bounding_rectangle(const Region& r) const {
  if (r.empty()) throw StructureError("rectangle cover: empty node set");
  int i0 = master.i1(), i1 = master.i0(), j0 = master.j1(), j1 = master.j0();
  for (PointId p : r) {
    int i = master.abs_i(static_cast<std::size_t>(p)), j = master.abs_j(static_cast<std::size_t>(p));
    i0 = std::min(i0, i);
    i1 = std::max(i1, i);
    j0 = std::min(j0, j);
    j1 = std::max(j1, j);
  }
  if (i0 == i1 || j0 == j1 ||
      r.size() != static_cast<std::size_t>(i1 - i0 + 1) * static_cast<std::size_t>(j1 - j0 + 1))
    throw StructureError("rectangle cover: node set is not a full rectangle of grid nodes");
  return master.window(i0, i1, j0, j1).rectangle();
}

SampledField RectangleCover::field_on(const Section<Matrix>& s) const {
  Grid w = master.window(bounding_rectangle(s.domain));
  const int n = static_cast<int>(s.values.front().rows());
  // Sorted ids are row-major within the window.
  return SampledField(w, n, s.values);
}

Section<Matrix> RectangleCover::section_of(const SampledField& f) const {
  std::vector<PointId> ids;
  for (std::size_t k = 0; k < f.size(); ++k)
    ids.push_back(static_cast<PointId>(master.index(f.grid.abs_i(k), f.grid.abs_j(k))));
  return Section<Matrix>(Region(std::move(ids)), f.values);
}

PairSplitter<Matrix> rectangle_pair_splitter(const RectangleCover& rc, double eps, const FactorPairOptions& opt) {
  return [rc, eps, opt](const Section<Matrix>& f, const Region& a, const Region& b) {
    Rectangle ra = rc.bounding_rectangle(a), rb = rc.bounding_rectangle(b);
    SampledField fo = rc.field_on(f);
    FactorPairResult r = factor_pair_closed(fo, ra, rb, eps, opt);
    return SplitPair<Matrix>{rc.section_of(r.f1), rc.section_of(r.f2)};
  };
}

namespace {

void check_chain_geometry(const RectangleCover& rc, const std::vector<std::size_t>& chain, Rectangle& uni) {
  uni = rc.rects[chain[0]];
  for (std::size_t s = 1; s < chain.size(); ++s) {
    const Rectangle& next = rc.rects[chain[s]];
    if (!open_overlap(uni, next))
      throw StructureError("rectangle chain: member " + std::to_string(chain[s] + 1) +
                           " does not overlap the union of its predecessors");
    auto u = rectangle_union(uni, next);
    if (!u) throw StructureError("rectangle chain: union is not a rectangle at member " +
                                 std::to_string(chain[s] + 1));
    uni = *u;
  }
}

}  // namespace

SplitResult<Matrix> split_rectangle_cocycle(const RectangleCover& rc, const Cochain1<Matrix>& f, double eps,
                                            const RectangleSplitOptions& opt) {
  if (!(f.cover == rc.cover)) throw StructureError("split_rectangle_cocycle: cochain is not over the cover");
  std::vector<std::vector<std::size_t>> chains = opt.chains;
  if (chains.empty()) {
    chains.emplace_back();
    for (std::size_t i = 0; i < rc.rects.size(); ++i) chains[0].push_back(i);
  }
  for (const auto& c : chains)
    for (std::size_t i : c)
      if (i >= rc.rects.size()) throw StructureError("split_rectangle_cocycle: chain index out of range");
  std::vector<Rectangle> unions;
  for (const auto& c : chains) {
    if (c.empty()) throw StructureError("split_rectangle_cocycle: empty chain");
    Rectangle u;
    check_chain_geometry(rc, c, u);
    unions.push_back(u);
  }
  if (unions.size() > 1) {
    RectangleCover tmp;
    tmp.rects = unions;
    std::vector<std::size_t> order(unions.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rectangle u;
    check_chain_geometry(tmp, order, u);
  }
  SplitOptions so;
  so.tol = eps;
  auto splitter = rectangle_pair_splitter(rc, eps, opt.pair);
  int dim = 0;
  for (const auto& s : f.sections)
    if (!s.values.empty()) {
      dim = static_cast<int>(s.values.front().rows());
      break;
    }
  if (dim == 0) throw StructureError("split_rectangle_cocycle: cochain has no values");
  MatrixGroup g(dim);
  return field_split(g, f, chains, splitter, so);
}

std::vector<Rectangle> nested_exhaustion(const Rectangle& r, double C, int N) {
  if (!(C > 0) || N < 1) throw InputError("nested exhaustion needs C > 0 and N ≥ 1");
  std::vector<Rectangle> out;
  for (int n = 1; n <= N; ++n) out.push_back(r.shrunk(1.0 / (C * n)));
  return out;
}

ExhaustionResult exhaustion_cocycle_split(const std::vector<Rectangle>& rects, const std::vector<HoloMap>& f,
                                          double cells_per_unit, double eps, const EntireOptions& opt_in) {
  const int N = static_cast<int>(rects.size());
  if (N < 1) throw InputError("exhaustion: need at least one level");
  if (static_cast<int>(f.size()) != N - 1)
    throw StructureError("exhaustion: need one transition map per consecutive pair of levels");
  for (int n = 1; n < N; ++n) {
    const Rectangle &in = rects[static_cast<std::size_t>(n - 1)], &out = rects[static_cast<std::size_t>(n)];
    if (!(out.a < in.a && in.b < out.b && out.c < in.c && in.d < out.d))
      throw StructureError("exhaustion: closure of level " + std::to_string(n) + " not inside level " +
                           std::to_string(n + 1));
  }
  EntireOptions opt = opt_in;
  opt.runge.method = RungeMethod::node_fit;
  auto R = [&](int n) -> const Rectangle& { return rects[static_cast<std::size_t>(std::max(n, 1) - 1)]; };
  auto fmap = [&](int n) -> const HoloMap& { return f[static_cast<std::size_t>(n - 1)]; };
  std::vector<Grid> grids;
  for (int n = 1; n <= N; ++n) grids.push_back(Grid::with_density(R(n), cells_per_unit));
  auto grid = [&](int n) -> const Grid& { return grids[static_cast<std::size_t>(std::max(n, 1) - 1)]; };

  ExhaustionResult res;
  res.levels.resize(static_cast<std::size_t>(N));
  const int dim = static_cast<int>(N > 1 ? fmap(1)(R(1).center()).rows() : 1);
  std::vector<EntireMap> g{EntireMap::identity_map(dim)};  // g[n − 1] = g_n
  for (int n = 1; n <= N - 1; ++n) {
    const EntireMap gn = g.back();
    const HoloMap& fn = fmap(n);
    HoloMap prod = [gn, fn](Complex z) { return Matrix(gn.evaluate(z) * fn(z)); };
    const double budget = std::min(std::ldexp(1.0, -(n + 1)), eps);
    EntireResult ent;
    try {
      ent = entire_approx(prod, grid(n - 1), budget, opt);  // on R̄_{n−1}, R_0 := R_1
    } catch (const Error&) {
      rethrow_with_prefix("exhaustion level " + std::to_string(n));
    }
    g.push_back(ent.map);
    auto& lv = res.levels[static_cast<std::size_t>(n - 1)];
    lv.budget = budget;
    lv.entire_error = ent.error;
  }
  const Matrix one = identity(dim);
  // h_n(z) = Π_{k=n}^{N−1} g_k f_{k,k+1} g_{k+1}⁻¹ ; w_n = h_n⁻¹ g_n.
  auto h = [&](int n, Complex z) {
    Matrix acc = one;
    for (int k = n; k <= N - 1; ++k)
      acc = acc * g[static_cast<std::size_t>(k - 1)].evaluate(z) * fmap(k)(z) *
            g[static_cast<std::size_t>(k)].evaluate_inverse(z);
    return acc;
  };
  auto w = [&](int n, Complex z) {
    return Matrix(checked_inverse(h(n, z), "exhaustion h_n") * g[static_cast<std::size_t>(n - 1)].evaluate(z));
  };
  for (int n = 1; n <= N; ++n) {
    auto& lv = res.levels[static_cast<std::size_t>(n - 1)];
    lv.rect = R(n);
    lv.tail_bound = std::ldexp(1.0, -n) * std::exp(std::ldexp(1.0, -n));
    const Grid& gprev = grid(n - 1);
    for (std::size_t q = 0; q < gprev.size(); ++q) lv.tail_norm = std::max(lv.tail_norm, norm(one - h(n, gprev.node(q))));
    if (!(lv.tail_norm < lv.tail_bound))
      throw BoundViolation("exhaustion level " + std::to_string(n) + ": ‖1 − h_n‖ = " +
                           std::to_string(lv.tail_norm) + " not below 2^-n e^(2^-n) = " +
                           std::to_string(lv.tail_bound));
    res.w.push_back(SampledField::sample(grid(n), [&](Complex z) { return w(n, z); }));
    if (n < N) {
      const Grid& gn = grid(n);
      for (std::size_t q = 0; q < gn.size(); ++q) {
        Complex z = gn.node(q);
        Matrix v = checked_inverse(res.w.back().values[q], "exhaustion w_n") * w(n + 1, z);
        lv.residual = std::max(lv.residual, norm(fmap(n)(z) - v));
      }
    }
  }
  return res;
}

}  // namespace garbe
