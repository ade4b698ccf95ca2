#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "functions.hpp"
#include "garbe/analytic/additive_split.hpp"
#include "garbe/analytic/cocycle_split.hpp"
#include "garbe/analytic/dbar.hpp"
#include "garbe/analytic/entire_approx.hpp"
#include "garbe/analytic/factor_pair.hpp"
#include "garbe/analytic/multiplicative_split.hpp"
#include "garbe/analytic/polynomial.hpp"
#include "garbe/cech/cochain_json.hpp"
#include "garbe/continuous/dugundji.hpp"
#include "garbe/error.hpp"

namespace garbe::cli {

namespace {

const Rectangle kUnit(0, 1, 0, 1);
const Rectangle kRight(0.5, 1.5, 0, 1);

std::string level_name(const char* prefix, std::size_t n) { return prefix + std::to_string(n); }

FunctionSpec function_at(const Config& cfg, const std::string& key) { return parse_function(cfg.at(key)); }

double max_inverse_residual(const SampledField& f) {
  double worst = 0.0;
  for (const auto& v : f.values) {
    auto inv = try_inverse(v);
    if (!inv) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, inverse_residual(v, *inv));
  }
  return worst;
}

double max_inverse_residual(const Section<Matrix>& f) {
  double worst = 0.0;
  for (const auto& v : f.values) {
    auto inv = try_inverse(v);
    if (!inv) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, inverse_residual(v, *inv));
  }
  return worst;
}

// ---- Čech -----------------------------------------------------------------

void op_verify(Context& ctx) {
  const Config& cfg = ctx.cfg;
  cfg.allow({"cochain", "tol"});
  const double tol = cfg.number("tol", 0.0);
  if (tol < 0) throw InputError("config: tol must be nonnegative");
  CochainDocument doc = read_cochain_file(cfg.resolve(cfg.string("cochain", "")));
  CocycleReport r = std::visit(
      [&](const auto& f) -> CocycleReport {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Cochain1<S3::Element>>) return is_cocycle(S3{}, f, tol);
        else if constexpr (std::is_same_v<F, Cochain1<GL2F5::Element>>) return is_cocycle(GL2F5{}, f, tol);
        else return is_cocycle(MatrixGroup(doc.dim), f, tol);
      },
      doc.cochain1);
  ctx.report.info("verify", "cover_members", static_cast<double>(doc.cover.size()));
  ctx.report.verdict("verify", "worst_violation", r.worst, "<= " + format_number(tol), r.cocycle,
                     "f_ii = 1, f_ji = f_ij^-1, f_ij f_jk = f_ik");
  ctx.err << describe(r, doc.cover);
  if (!r.cocycle && r.point >= 0 && static_cast<std::size_t>(r.point) < doc.point_names.size())
    ctx.err << " (" << doc.point_names[static_cast<std::size_t>(r.point)] << ")";
  ctx.err << "\n";
}

// ---- analytic engine ------------------------------------------------------

void op_dbar(Context& ctx) {
  const Config& cfg = ctx.cfg;
  cfg.allow({"phi", "grids", "rectangle", "margin", "ratio_range"});
  FunctionSpec phi = cfg.has("phi") ? function_at(cfg, "phi") : parse_function(json{{"kind", "constant"}, {"value", 1}});
  const Rectangle rect = cfg.rect("rectangle", kUnit);
  const int margin = cfg.integer("margin", 1);
  const auto grids = cfg.integers("grids", {32, 64});
  double prev = -1.0;
  int prev_n = 0;
  for (int n : grids) {
    if (n < 2 + 2 * margin) throw InputError("config: grid too coarse for the margin");
    Grid g = Grid::uniform(rect, n, n);
    SampledField f = SampledField::sample(g, phi.f);
    ResidualStats r = dbar_residual_against(pompeiu_solve(f), f, margin);
    const std::string stage = "grid " + std::to_string(n);
    ctx.report.info(stage, "spacing", g.hx());
    ctx.report.info(stage, "residual_max", r.max);
    ctx.report.info(stage, "residual_l2", r.l2);
    if (prev > 0) {
      const double ratio = r.l2 / prev;
      const std::string rs = "ratio " + std::to_string(prev_n) + "/" + std::to_string(n);
      if (cfg.has("ratio_range")) {
        auto range = cfg.at("ratio_range").get<std::vector<double>>();
        if (range.size() != 2) throw InputError("config: ratio_range is [lo, hi]");
        ctx.report.within(rs, "l2_ratio", ratio, range[0], range[1], "first-order residual decay under halving");
      } else {
        ctx.report.info(rs, "l2_ratio", ratio);
      }
    }
    prev = r.l2;
    prev_n = n;
  }
}

struct PairSetup {
  FunctionSpec f;
  Rectangle r1, r2;
  double cells;
};

PairSetup pair_setup(const Config& cfg, double default_cells) {
  return {function_at(cfg, "f"), cfg.rect("r1", kUnit), cfg.rect("r2", kRight),
          cfg.number("cells_per_unit", default_cells)};
}

void op_split_add(Context& ctx) {
  const Config& cfg = ctx.cfg;
  cfg.allow({"f", "r1", "r2", "cells_per_unit", "tol", "holomorphy_tol"});
  PairSetup s = pair_setup(cfg, 16);
  auto geo = PairGeometry::with_density(s.r1, s.r2, s.cells);
  AdditiveOptions opt;
  opt.check_holomorphy = s.f.holomorphic;
  opt.holomorphy_tol = cfg.number("holomorphy_tol", opt.holomorphy_tol);
  auto r = additive_split(SampledField::sample(geo.go, s.f.f), geo, opt);
  ctx.report.info("additive", "spacing", geo.grid.hx());
  ctx.report.le("additive", "telescoping", r.telescoping, cfg.number("tol", 1e-10), "f = f1 - f2 on the overlap");
  ctx.report.info("additive", "dbar_f1", dbar_residual(r.f1));
  ctx.report.info("additive", "dbar_f2", dbar_residual(r.f2));
}

void op_split_mul(Context& ctx) {
  const Config& cfg = ctx.cfg;
  cfg.allow({"f", "r1", "r2", "cells_per_unit", "tol", "eps_max", "max_iter", "eps0"});
  PairSetup s = pair_setup(cfg, 16);
  auto geo = PairGeometry::with_density(s.r1, s.r2, s.cells);
  MultiplicativeOptions opt;
  opt.graves.eps_max = cfg.number("eps_max", 0.9);
  opt.graves.max_iter = cfg.integer("max_iter", 50);
  opt.eps0 = cfg.number("eps0", opt.eps0);
  auto r = multiplicative_split_near_identity(SampledField::sample(geo.go, s.f.f), geo, opt);
  const auto& g = r.graves;
  ctx.report.info("graves", "norm_g", r.norm_g);
  ctx.report.info("graves", "K", g.K);
  ctx.report.le("graves", "iterations", g.iterations, opt.graves.max_iter, "iteration budget");
  ctx.report.le("graves", "eps", g.eps, opt.graves.eps_max, "certified contraction eps <= eps_max");
  if (!g.x_norms.empty()) {
    const double x1 = g.x_norms.front();
    for (int n = 1; n <= g.iterations; ++n)
      ctx.report.le("graves step " + std::to_string(n), "K_defect", g.K * g.defect(n),
                    std::pow(g.eps, n) * x1 * (1 + 1e-12), "K |y_{n+1}| <= eps^n |x_1|");
  }
  ctx.report.le("graves", "residual", r.residual, cfg.number("tol", 1e-6), "|f - (1 + g1)(1 + g2)| on the overlap");
  ctx.report.info("graves", "norm_g1", r.norm_g1);
  ctx.report.info("graves", "norm_g2", r.norm_g2);
  ctx.report.history("graves_defects", g.defects);
}

void op_runge(Context& ctx) {
  const Config& cfg = ctx.cfg;
  cfg.allow({"f", "rectangle", "nx", "ny", "eps", "method", "kappa", "max_degree"});
  FunctionSpec f = function_at(cfg, "f");
  Grid g = Grid::uniform(cfg.rect("rectangle", kUnit), cfg.integer("nx", 16), cfg.integer("ny", 16));
  const double eps = cfg.number("eps", 1e-6);
  const std::string method = cfg.string("method", "contour");
  RungeResult r;
  if (method == "contour") {
    RungeOptions opt;
    opt.kappa = cfg.number("kappa", opt.kappa);
    opt.max_degree = cfg.integer("max_degree", opt.max_degree);
    r = runge_polynomial(f.f, g, eps, opt);
  } else if (method == "node_fit") {
    r = fit_polynomial(SampledField::sample(g, f.f), eps, cfg.integer("max_degree", 40));
  } else {
    throw InputError("config: runge method is contour or node_fit");
  }
  ctx.report.info("runge", "degree", r.poly.degree());
  ctx.report.lt("runge", "max_error", r.error, eps, "max |f - p| < eps at the nodes");
}

void op_entire(Context& ctx) {
  const Config& cfg = ctx.cfg;
  cfg.allow({"f", "rectangle", "cells", "eps", "delta"});
  FunctionSpec f = function_at(cfg, "f");
  const int cells = cfg.integer("cells", 32);
  Grid g = Grid::uniform(cfg.rect("rectangle", kUnit), cells, cells);
  const double eps = cfg.number("eps", 1e-3);
  EntireOptions opt;
  opt.path.delta = cfg.number("delta", opt.path.delta);
  auto r = entire_approx(f.f, g, eps, opt);
  ctx.report.info("entire", "factors", r.factors);
  ctx.report.info("entire", "attempts", r.attempts);
  ctx.report.info("entire", "runge_budget", r.budget);
  ctx.report.lt("entire", "error", r.error, eps, "|1 - f ftilde^-1| < eps at the nodes");
}

void op_pair_closed(Context& ctx) {
  const Config& cfg = ctx.cfg;
  cfg.allow({"f", "r1", "r2", "cells_per_unit", "eps", "oracle", "oracle_factor"});
  PairSetup s = pair_setup(cfg, 64);
  const double eps = cfg.number("eps", 1e-3);
  auto r = factor_pair_closed(s.f.f, s.r1, s.r2, s.cells, eps);
  ctx.report.info("pair", "spacing", r.geo.grid.hx());
  ctx.report.info("pair", "entire_error", r.entire_error);
  ctx.report.info("pair", "graves_iterations", r.mult.graves.iterations);
  ctx.report.le("pair", "residual", r.residual, eps, "|f - f1^-1 f2| <= eps on the overlap");
  ctx.report.le("pair", "inverse_residual_f1", max_inverse_residual(r.f1), 1e-8, "f1 invertible");
  ctx.report.le("pair", "inverse_residual_f2", max_inverse_residual(r.f2), 1e-8, "f2 invertible");
  ctx.report.history("graves_defects", r.mult.graves.defects);
  if (cfg.has("oracle")) {
    const std::string mode = cfg.string("oracle", "");
    auto o = commutative_oracle(SampledField::sample(r.geo.go, s.f.f), r.geo);
    if (mode == "max_residual") {
      ctx.report.le("oracle", "residual", o.residual, eps, "commutative splitting residual <= eps");
    } else if (mode == "min_ratio") {
      const double k = cfg.number("oracle_factor", 10.0);
      ctx.report.ge("oracle", "residual", o.residual, k * r.residual,
                    "commutative splitting is at least " + format_number(k) + "x worse");
    } else {
      throw InputError("config: oracle is max_residual or min_ratio");
    }
  }
}

void op_pair_open(Context& ctx) {
  const Config& cfg = ctx.cfg;
  cfg.allow({"f", "r1", "r2", "cells_per_unit", "eps", "depth"});
  PairSetup s = pair_setup(cfg, 32);
  auto r = factor_pair_open(s.f.f, s.r1, s.r2, cfg.integer("depth", 4), s.cells, cfg.number("eps", 1e-3));
  std::vector<double> tails;
  for (std::size_t k = 0; k < r.levels.size(); ++k) {
    const auto& lv = r.levels[k];
    const std::string st = level_name("level ", k + 1);
    ctx.report.lt(st, "entire_error", lv.entire_error, lv.budget, "|1 - (g_n v_n) g_{n+1}^-1| < min(2^-(n+1), eps)");
    ctx.report.lt(st, "tail_norm", lv.tail_norm, lv.tail_bound, "|1 - h_n| < 2^-n e^(2^-n)");
    ctx.report.info(st, "factor_residual", lv.factor_residual);
    ctx.report.info(st, "residual", lv.residual);
    tails.push_back(lv.tail_norm);
  }
  ctx.report.history("tail_norms", tails);
}

HoloMap checked_holo(const json& j, int dim) {
  FunctionSpec s = parse_function(j);
  if (s.dim != dim) throw InputError("config: all maps must share one matrix size");
  return s.f;
}

void op_split_cocycle(Context& ctx) {
  const Config& cfg = ctx.cfg;
  cfg.allow({"master", "rects", "h", "chains", "eps"});
  const json& m = cfg.at("master");
  Grid master = Grid::uniform(parse_rect(m.at("rectangle")), m.value("nx", 16), m.value("ny", 16));
  auto rects = cfg.rects("rects");
  const json& hs = cfg.at("h");
  if (!hs.is_array() || hs.size() != rects.size()) throw InputError("config: one h per rectangle");
  const int dim = parse_function(hs[0]).dim;
  std::vector<HoloMap> h;
  for (const auto& j : hs) h.push_back(checked_holo(j, dim));
  auto rc = RectangleCover::make(master, rects);
  // f_ij = h_i⁻¹ h_j at the overlap nodes
  Cochain1<Matrix> f{rc.cover, {}};
  for (std::size_t i = 0; i < rects.size(); ++i)
    for (std::size_t j = 0; j < rects.size(); ++j) {
      Region dom = rc.cover.overlap(i, j);
      std::vector<Matrix> v;
      for (PointId p : dom) {
        Complex z = master.node(static_cast<std::size_t>(p));
        v.push_back(checked_inverse(h[i](z), "fixture") * h[j](z));
      }
      f.sections.emplace_back(dom, std::move(v));
    }
  RectangleSplitOptions opt;
  if (cfg.has("chains")) opt.chains = cfg.at("chains").get<std::vector<std::vector<std::size_t>>>();
  const double eps = cfg.number("eps", 1e-3);
  auto r = split_rectangle_cocycle(rc, f, eps, opt);
  const double bound = eps * std::max(1, r.splitter_calls);
  ctx.report.info("cocycle", "splitter_calls", r.splitter_calls);
  ctx.report.le("cocycle", "residual", r.residual, bound, "|f_ij - g_i^-1 g_j| <= eps per splitter call");
  ctx.report.le("cocycle", "orbit_residual", split_residual(MatrixGroup(dim), f, r.g), bound,
                "independent recheck of f_ij = g_i^-1 g_j");
}

void op_exhaustion(Context& ctx) {
  const Config& cfg = ctx.cfg;
  cfg.allow({"rectangle", "C", "levels", "f", "cells_per_unit", "eps"});
  const int N = cfg.integer("levels", 4);
  if (N < 2) throw InputError("config: exhaustion needs at least 2 levels");
  auto rects = nested_exhaustion(cfg.rect("rectangle", kUnit), cfg.number("C", 4.0), N);
  const json& fs = cfg.at("f");
  std::vector<HoloMap> f;
  if (fs.is_array()) {
    if (fs.size() != static_cast<std::size_t>(N - 1)) throw InputError("config: exhaustion needs levels - 1 maps");
    const int dim = parse_function(fs[0]).dim;
    for (const auto& j : fs) f.push_back(checked_holo(j, dim));
  } else {
    f.assign(static_cast<std::size_t>(N - 1), parse_function(fs).f);
  }
  auto r = exhaustion_cocycle_split(rects, f, cfg.number("cells_per_unit", 16), cfg.number("eps", 1e-3));
  std::vector<double> tails;
  for (std::size_t k = 0; k < r.levels.size(); ++k) {
    const auto& lv = r.levels[k];
    const std::string st = level_name("level ", k + 1);
    ctx.report.lt(st, "tail_norm", lv.tail_norm, lv.tail_bound, "|1 - h_n| < 2^-n e^(2^-n)");
    if (k + 1 < r.levels.size()) {
      ctx.report.lt(st, "entire_error", lv.entire_error, lv.budget, "|1 - (g_n f_{n,n+1}) g_{n+1}^-1| < budget");
      ctx.report.info(st, "residual", lv.residual);
    }
    tails.push_back(lv.tail_norm);
  }
  ctx.report.history("tail_norms", tails);
}

// ---- continuous engine ----------------------------------------------------

Region subset_or_all(const Config& cfg, const char* key, const CloudSetup& c) {
  return cfg.has(key) ? parse_subset(cfg.at(key), c) : c.cloud.all();
}

void op_urysohn(Context& ctx) {
  const Config& cfg = ctx.cfg;
  cfg.allow({"cloud", "X", "A", "B"});
  CloudSetup c = parse_cloud(cfg.at("cloud"), cfg, ctx.rng);
  Region x = subset_or_all(cfg, "X", c);
  Region a = parse_subset(cfg.at("A"), c), b = parse_subset(cfg.at("B"), c);
  Section<double> chi;
  try {
    chi = urysohn(c.cloud, x, a, b);
  } catch (const StructureError& e) {
    throw InputError(std::string("urysohn: ") + e.what());
  }
  double lo = 1.0, hi = 0.0, on_a = 0.0, on_b = 0.0;
  std::string table = "point,chi\n";
  for (std::size_t q = 0; q < chi.domain.size(); ++q) {
    PointId p = chi.domain.points()[q];
    double v = chi.values[q];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    if (a.contains(p)) on_a = std::max(on_a, std::abs(v));
    if (b.contains(p)) on_b = std::max(on_b, std::abs(1.0 - v));
    table += c.cloud.name(p) + "," + format_number(v) + "\n";
  }
  ctx.report.info("urysohn", "points", static_cast<double>(x.size()));
  ctx.report.ge("urysohn", "min_chi", lo, 0.0, "chi >= 0");
  ctx.report.le("urysohn", "max_chi", hi, 1.0, "chi <= 1");
  ctx.report.le("urysohn", "max_chi_on_A", on_a, 0.0, "chi = 0 on A");
  ctx.report.le("urysohn", "max_one_minus_chi_on_B", on_b, 0.0, "chi = 1 on B");
  ctx.report.artifact("values.csv", table);
}

struct DugundjiStats {
  double restriction = 0.0, min_weight = 0.0, sum_error = 0.0, anchor_ratio = 0.0, hull = 0.0, min_alpha = 1.0;
  bool any_exterior = false;

  void add(const DugundjiExtension& e, const Section<Matrix>& h) {
    double hmax = 0.0;
    for (const auto& v : h.values) hmax = std::max(hmax, v.norm());
    for (std::size_t q = 0; q < h.domain.size(); ++q)
      restriction = std::max(restriction, (e.value.at(h.domain.points()[q]) - h.values[q]).norm());
    if (!e.cover.exterior.empty()) {
      min_weight = any_exterior ? std::min(min_weight, e.cover.min_weight()) : e.cover.min_weight();
      for (double a : e.cover.alpha) min_alpha = std::min(min_alpha, a);
      any_exterior = true;
    }
    sum_error = std::max(sum_error, e.cover.max_weight_sum_error());
    for (double r : e.cover.anchor_ratio) anchor_ratio = std::max(anchor_ratio, r);
    for (const auto& v : e.value.values)
      if (hmax > 0) hull = std::max(hull, v.norm() / hmax);
  }

  void write(Report& rep, const std::string& st) const {
    rep.le(st, "restriction_error", restriction, 0.0, "extension equals h on Omega");
    rep.ge(st, "min_weight", min_weight, 0.0, "partition weights >= 0");
    rep.le(st, "weight_sum_error", sum_error, 1e-12, "|sum of weights - 1| <= 1e-12");
    rep.lt(st, "max_anchor_ratio", anchor_ratio, 2.0, "dist(V, anchor) < 2 dist(V, Omega)");
    if (any_exterior) rep.info(st, "min_alpha", min_alpha);
    rep.le(st, "hull_ratio", hull, 1.0 + 1e-12, "|extension| <= max |h|");
  }
};

Section<Matrix> random_section(const Region& r, int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Matrix> v;
  for (std::size_t q = 0; q < r.size(); ++q) {
    Matrix m(dim, dim);
    for (int e = 0; e < dim * dim; ++e) {
      double re = g(rng);
      m.data()[e] = Complex(re, g(rng));
    }
    v.push_back(m);
  }
  return Section<Matrix>(r, std::move(v));
}

void op_dugundji(Context& ctx) {
  const Config& cfg = ctx.cfg;
  cfg.allow({"cloud", "X", "omega", "h", "trials", "max_points", "omega_fraction", "dim"});
  DugundjiStats stats;
  if (cfg.has("trials")) {
    // Random clouds in the unit square with random Ω and random h.
    const int trials = cfg.integer("trials", 100);
    const int max_points = cfg.integer("max_points", 100);
    const double frac = cfg.number("omega_fraction", 0.3);
    const int dim = cfg.integer("dim", 2);
    if (trials < 1 || max_points < 2 || !(frac > 0 && frac <= 1) || dim < 1)
      throw InputError("config: bad dugundji trial parameters");
    std::uniform_int_distribution<int> size(2, max_points);
    std::bernoulli_distribution in(frac);
    int largest = 0;
    for (int t = 0; t < trials; ++t) {
      const int n = size(ctx.rng);
      largest = std::max(largest, n);
      json spec = {{"random", {{"n", n}, {"width", 1.0}, {"height", 1.0}}}};
      CloudSetup c = parse_cloud(spec, cfg, ctx.rng);
      std::vector<PointId> om{0};
      for (int p = 1; p < n; ++p)
        if (in(ctx.rng)) om.push_back(p);
      Section<Matrix> h = random_section(Region(om), dim, ctx.rng);
      stats.add(dugundji_extend(c.cloud, c.cloud.all(), h), h);
    }
    ctx.report.info("dugundji", "trials", trials);
    ctx.report.info("dugundji", "largest_cloud", largest);
  } else {
    CloudSetup c = parse_cloud(cfg.at("cloud"), cfg, ctx.rng);
    Region x = subset_or_all(cfg, "X", c);
    Region omega = parse_subset(cfg.at("omega"), c);
    Section<Matrix> h = cfg.has("h") ? parse_cloud_map(cfg.at("h"), c, omega).f
                                     : random_section(omega, cfg.integer("dim", 2), ctx.rng);
    DugundjiExtension e;
    try {
      e = dugundji_extend(c.cloud, x, h);
    } catch (const StructureError& err) {
      throw InputError(std::string("dugundji: ") + err.what());
    }
    stats.add(e, h);
    ctx.report.info("dugundji", "exterior_points", static_cast<double>(e.cover.exterior.size()));
  }
  stats.write(ctx.report, "dugundji");
}

NearIdentityCloudOptions factor_options(const Config& cfg) {
  NearIdentityCloudOptions o;
  o.delta = cfg.number("delta", o.delta);
  o.endpoint_tol = cfg.number("endpoint_tol", o.endpoint_tol);
  return o;
}

void op_extend(Context& ctx) {
  const Config& cfg = ctx.cfg;
  cfg.allow({"cloud", "X", "omega", "map", "delta", "endpoint_tol"});
  CloudSetup c = parse_cloud(cfg.at("cloud"), cfg, ctx.rng);
  Region x = subset_or_all(cfg, "X", c);
  Region omega = parse_subset(cfg.at("omega"), c);
  CloudMap m = parse_cloud_map(cfg.at("map"), c, omega);
  auto opt = factor_options(cfg);
  auto e = extend_from_compact(c.cloud, x, m.f, m.path, opt);
  ctx.report.info("extend", "factors", static_cast<double>(e.factors.factors.size()));
  ctx.report.le("extend", "max_h", e.factors.max_h, opt.delta, "|h_j| <= delta");
  ctx.report.le("extend", "max_hhat", e.max_hhat, opt.delta * (1 + 1e-12), "|hhat_j| <= delta");
  ctx.report.le("extend", "restriction_error", e.restriction_error, 0.0, "ftilde = f on Omega");
  ctx.report.le("extend", "product_error", e.product_error, opt.endpoint_tol, "prod (1 + hhat_j) = f on Omega");
  ctx.report.le("extend", "inverse_residual", e.max_inverse_residual, 1e-8, "ftilde invertible on X");
}

void op_cont_pair(Context& ctx) {
  const Config& cfg = ctx.cfg;
  cfg.allow({"cloud", "U1", "U2", "map", "tol", "delta", "endpoint_tol", "inverse_tol", "scalar_oracle"});
  CloudSetup c = parse_cloud(cfg.at("cloud"), cfg, ctx.rng);
  Region u1 = parse_subset(cfg.at("U1"), c), u2 = parse_subset(cfg.at("U2"), c);
  Region overlap = intersect(u1, u2);
  CloudMap m = parse_cloud_map(cfg.at("map"), c, overlap);
  ContinuousPairOptions opt;
  opt.factors = factor_options(cfg);
  opt.inverse_tol = cfg.number("inverse_tol", opt.inverse_tol);
  auto r = continuous_factor_pair(c.cloud, u1, u2, m.f, m.path, opt);
  const double tol = cfg.number("tol", 1e-10);
  ctx.report.info("pair", "overlap_points", static_cast<double>(overlap.size()));
  ctx.report.info("pair", "seam_points", static_cast<double>(r.seam.size()));
  ctx.report.info("pair", "factor_count", r.factor_count);
  ctx.report.le("pair", "residual", r.residual, tol, "|f - f1^-1 f2| on U1 and U2 overlap");
  ctx.report.le("pair", "inverse_residual", r.max_inverse_residual, opt.inverse_tol, "f1, f2 invertible");
  if (cfg.flag("scalar_oracle", false)) {
    if (m.f.values.front().rows() != 1) throw InputError("config: scalar_oracle needs a 1x1 map");
    std::vector<double> v;
    for (const auto& x : m.f.values) {
      if (x(0, 0).imag() != 0.0) throw InputError("config: scalar_oracle needs real values");
      v.push_back(x(0, 0).real());
    }
    auto s = scalar_real_factorize(c.cloud, u1, u2, Section<double>(overlap, v));
    ctx.report.le("scalar", "residual", s.residual, tol, "|f - f2/f1| for the real scalar route");
  }
}

void op_cont_cocycle(Context& ctx) {
  const Config& cfg = ctx.cfg;
  cfg.allow({"cloud", "cover", "h", "tol", "delta", "endpoint_tol", "inverse_tol"});
  CloudSetup c = parse_cloud(cfg.at("cloud"), cfg, ctx.rng);
  const json& cov = cfg.at("cover");
  const json& hs = cfg.at("h");
  if (!cov.is_array() || cov.empty() || !hs.is_array() || hs.size() != cov.size())
    throw InputError("config: 'cover' and 'h' are lists of equal length");
  std::vector<Region> members;
  for (const auto& s : cov) members.push_back(parse_subset(s, c));
  Cover cover(members);
  std::vector<Section<PathedMatrix>> h;
  int dim = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    CloudMap m = parse_cloud_map(hs[i], c, members[i]);
    if (members[i].empty()) throw InputError("config: empty cover member");
    int d = static_cast<int>(m.f.values.front().rows());
    if (dim != 0 && d != dim) throw InputError("config: all maps must share one matrix size");
    dim = d;
    h.push_back(attach_path(m.f, m.path));
  }
  PathedMatrixGroup g(dim);
  auto f = coboundary(g, Cochain0<PathedMatrix>{cover, h});
  ContinuousPairOptions opt;
  opt.factors = factor_options(cfg);
  opt.inverse_tol = cfg.number("inverse_tol", opt.inverse_tol);
  const double tol = cfg.number("tol", 1e-9);
  auto r = split_continuous_cocycle(c.cloud, f, tol, opt);
  Cochain1<Matrix> fv{cover, {}};
  for (const auto& s : f.sections) fv.sections.push_back(values_of(s));
  ctx.report.info("cocycle", "splitter_calls", r.splitter_calls);
  ctx.report.le("cocycle", "residual", r.residual, tol, "|f_ij - g_i^-1 g_j| <= tol");
  ctx.report.le("cocycle", "orbit_residual", split_residual(MatrixGroup(dim), fv, r.g), tol,
                "independent recheck of f_ij = g_i^-1 g_j");
}

const std::map<std::string, std::function<void(Context&)>>& table() {
  static const std::map<std::string, std::function<void(Context&)>> t = {
      {"verify", op_verify},
      {"dbar", op_dbar},
      {"split-add", op_split_add},
      {"split-mul", op_split_mul},
      {"runge", op_runge},
      {"entire-approx", op_entire},
      {"split-pair-closed", op_pair_closed},
      {"split-pair-open", op_pair_open},
      {"split-cocycle", op_split_cocycle},
      {"exhaustion-split", op_exhaustion},
      {"urysohn", op_urysohn},
      {"dugundji", op_dugundji},
      {"extend", op_extend},
      {"cont-split-pair", op_cont_pair},
      {"cont-split-cocycle", op_cont_cocycle},
  };
  return t;
}

}  // namespace

void run_operation(const std::string& op, Context& ctx) {
  auto it = table().find(op);
  if (it == table().end()) throw InputError("unknown operation '" + op + "'");
  try {
    it->second(ctx);
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
}

}  // namespace garbe::cli
