#include "garbe/continuous/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace garbe {

PointPath make_point_path(std::function<Matrix(double)> f) {
  return std::make_shared<const std::function<Matrix(double)>>(std::move(f));
}

PointPath constant_path(const Matrix& c) {
  return make_point_path([c](double) { return c; });
}

namespace {

const PointPath& need_path(const PathedMatrix& a) {
  if (!a.path) throw StructureError("pathed matrix without a path");
  return a.path;
}

}  // namespace

PathedMatrix PathedMatrixGroup::identity() const {
  Matrix one = garbe::identity(dim_);
  return {one, constant_path(one)};
}

PathedMatrix PathedMatrixGroup::multiply(const PathedMatrix& a, const PathedMatrix& b) const {
  PointPath pa = need_path(a), pb = need_path(b);
  return {a.value * b.value, make_point_path([pa, pb](double t) -> Matrix { return (*pa)(t) * (*pb)(t); })};
}

PathedMatrix PathedMatrixGroup::invert(const PathedMatrix& a) const {
  PointPath pa = need_path(a);
  return {checked_inverse(a.value, "pathed matrix group"),
          make_point_path([pa](double t) { return checked_inverse((*pa)(t), "pathed matrix group"); })};
}

// ---- GroupPath ----

GroupPath::GroupPath(Region domain, std::vector<PointPath> paths, std::vector<double> knots)
    : domain_(std::move(domain)), paths_(std::move(paths)), knots_(std::move(knots)) {
  if (paths_.size() != domain_.size()) throw StructureError("group path: one path per point");
  for (const auto& p : paths_)
    if (!p) throw StructureError("group path: missing point path");
  if (knots_.size() < 2 || knots_.front() != 0.0 || knots_.back() != 1.0)
    throw StructureError("group path: knots must run from 0 to 1");
  for (std::size_t k = 1; k < knots_.size(); ++k)
    if (!(knots_[k] > knots_[k - 1])) throw StructureError("group path: knots must increase strictly");
}

GroupPath GroupPath::from_samples(const std::vector<double>& t, const std::vector<Section<Matrix>>& values) {
  if (t.size() != values.size() || t.size() < 2)
    throw StructureError("group path: need at least two samples, one per parameter");
  const Region& dom = values.front().domain;
  for (const auto& v : values)
    if (!(v.domain == dom)) throw StructureError("group path: samples live on different domains");
  std::vector<PointPath> paths;
  for (std::size_t q = 0; q < dom.size(); ++q) {
    std::vector<Matrix> s;
    for (const auto& v : values) s.push_back(v.values[q]);
    paths.push_back(make_point_path([t, s = std::move(s)](double x) -> Matrix {
      if (x <= t.front()) return s.front();
      if (x >= t.back()) return s.back();
      std::size_t k = std::upper_bound(t.begin(), t.end(), x) - t.begin();
      double w = (x - t[k - 1]) / (t[k] - t[k - 1]);
      return (1.0 - w) * s[k - 1] + w * s[k];
    }));
  }
  return GroupPath(dom, std::move(paths), t);
}

GroupPath GroupPath::from_function(const Region& domain, const std::function<Matrix(PointId, double)>& f,
                                   std::vector<double> knots) {
  std::vector<PointPath> paths;
  for (PointId p : domain) paths.push_back(make_point_path([f, p](double t) { return f(p, t); }));
  return GroupPath(domain, std::move(paths), std::move(knots));
}

GroupPath GroupPath::of(const Section<PathedMatrix>& s) {
  std::vector<PointPath> paths;
  for (const auto& v : s.values) paths.push_back(need_path(v));
  return GroupPath(s.domain, std::move(paths));
}

Matrix GroupPath::at(PointId p, double t) const {
  auto k = domain_.index_of(p);
  if (!k) throw StructureError("group path: point " + std::to_string(p) + " outside domain");
  return (*paths_[*k])(t);
}

Section<Matrix> GroupPath::at(double t) const {
  std::vector<Matrix> v;
  v.reserve(paths_.size());
  for (const auto& p : paths_) v.push_back((*p)(t));
  return Section<Matrix>(domain_, std::move(v));
}

GroupPath GroupPath::restricted(const Region& sub) const {
  if (!sub.subset_of(domain_)) throw StructureError("group path: restriction to a non-subregion");
  std::vector<PointPath> paths;
  for (PointId p : sub) paths.push_back(paths_[*domain_.index_of(p)]);
  return GroupPath(sub, std::move(paths), knots_);
}

GroupPath GroupPath::inverse() const {
  std::vector<PointPath> paths;
  for (const auto& p : paths_)
    paths.push_back(make_point_path([p](double t) { return checked_inverse((*p)(t), "group path inverse"); }));
  return GroupPath(domain_, std::move(paths), knots_);
}

double GroupPath::max_knot_step() const {
  double worst = 0.0;
  for (const auto& p : paths_) {
    Matrix prev = (*p)(knots_.front());
    for (std::size_t k = 1; k < knots_.size(); ++k) {
      Matrix cur = (*p)(knots_[k]);
      Matrix h = cur * checked_inverse(prev, "group path step") - identity(static_cast<int>(cur.rows()));
      worst = std::max(worst, h.norm());
      prev = std::move(cur);
    }
  }
  return worst;
}

Section<PathedMatrix> attach_path(const Section<Matrix>& f, const GroupPath& path) {
  if (!(f.domain == path.domain())) throw StructureError("attach_path: path and map domains differ");
  std::vector<PathedMatrix> v;
  for (std::size_t q = 0; q < f.domain.size(); ++q) v.push_back({f.values[q], path.paths()[q]});
  return Section<PathedMatrix>(f.domain, std::move(v));
}

Section<Matrix> values_of(const Section<PathedMatrix>& s) {
  std::vector<Matrix> v;
  for (const auto& e : s.values) v.push_back(e.value);
  return Section<Matrix>(s.domain, std::move(v));
}

// ---- scalar case ----

namespace {

// χ with χ = 0 on U1∖U2 and 1 on U2∖U1; constant when one difference is empty.
Section<double> partition_function(const MetricPointCloud& cloud, const Region& u1, const Region& u2) {
  Region x = unite(u1, u2), a = subtract(u1, u2), b = subtract(u2, u1);
  if (!a.empty() && !b.empty()) return urysohn(cloud, x, a, b);
  double c = a.empty() && b.empty() ? 0.5 : (a.empty() ? 1.0 : 0.0);
  return Section<double>::constant(x, c);
}

void check_pair_domains(const MetricPointCloud& cloud, const Region& u1, const Region& u2, const Region& f,
                        const char* who) {
  if (!cloud.contains(u1) || !cloud.contains(u2))
    throw StructureError(std::string(who) + ": sets are not subsets of the cloud");
  Region ov = intersect(u1, u2);
  if (ov.empty()) throw StructureError(std::string(who) + ": U1 ∩ U2 is empty");
  if (!(f == ov)) throw StructureError(std::string(who) + ": map is not defined on U1 ∩ U2");
}

}  // namespace

ScalarPair scalar_real_factorize(const MetricPointCloud& cloud, const Region& u1, const Region& u2,
                                 const Section<double>& f) {
  check_pair_domains(cloud, u1, u2, f.domain, "scalar_real_factorize");
  ScalarPair out;
  const double f0 = f.values.front();
  for (std::size_t q = 0; q < f.values.size(); ++q) {
    if (f.values[q] == 0.0 || !std::isfinite(f.values[q]))
      throw InputError("scalar_real_factorize: f vanishes at point " + cloud.name(f.domain.points()[q]));
    if ((f.values[q] > 0) != (f0 > 0))
      throw InputError("scalar_real_factorize: f changes sign on the overlap");
  }
  out.base = f0 < 0 ? f0 : 1.0;
  out.chi = partition_function(cloud, u1, u2);
  std::vector<double> v1, v2;
  for (PointId p : u1) {
    double g1 = f.domain.contains(p) ? out.chi.at(p) * std::log(f.at(p) / out.base) : 0.0;
    v1.push_back(std::exp(-g1));
  }
  for (PointId p : u2) {
    double g2 = f.domain.contains(p) ? (1.0 - out.chi.at(p)) * std::log(f.at(p) / out.base) : 0.0;
    v2.push_back(out.base * std::exp(g2));
  }
  out.f1 = Section<double>(u1, std::move(v1));
  out.f2 = Section<double>(u2, std::move(v2));
  for (PointId p : f.domain)
    out.residual = std::max(out.residual, std::abs(f.at(p) - out.f2.at(p) / out.f1.at(p)));
  return out;
}

// ---- near-identity factors ----

namespace {

struct Refiner {
  const GroupPath& path;
  const Section<Matrix>& f;
  const NearIdentityCloudOptions& opt;
  int dim;
  std::vector<Section<Matrix>> steps;  // F_1, F_2, ... in parameter order
  std::vector<double> t{0.0};
  double max_h = 0.0;

  Section<Matrix> value(double s) const {
    if (s == 0.0) return Section<Matrix>::constant(f.domain, identity(dim));
    if (s == 1.0) return f;
    return path.at(s);
  }

  void run(double a, const Section<Matrix>& fa, double b, const Section<Matrix>& fb) {
    std::vector<Matrix> step;
    double worst = 0.0;
    for (std::size_t q = 0; q < fa.values.size(); ++q) {
      Matrix inv = checked_inverse(fa.values[q], "extract_near_identity_factors");
      step.push_back(fb.values[q] * inv);
      worst = std::max(worst, (step.back() - identity(dim)).norm());
    }
    if (worst <= opt.delta) {
      if (worst > 0.0) steps.emplace_back(f.domain, std::move(step));
      max_h = std::max(max_h, worst);
      t.push_back(b);
      return;
    }
    if ((b - a) / 2 < opt.min_step)
      throw NumericalError("extract_near_identity_factors",
                           "bound δ unreachable above the minimum step near t = " + std::to_string(a));
    double m = 0.5 * (a + b);
    Section<Matrix> fm = value(m);
    run(a, fa, m, fm);
    run(m, fm, b, fb);
  }
};

}  // namespace

CloudFactors extract_near_identity_factors(const Section<Matrix>& f, const GroupPath& path,
                                           const NearIdentityCloudOptions& opt) {
  if (!(opt.delta > 0.0 && opt.delta < 1.0)) throw InputError("extract_near_identity_factors: δ must lie in (0, 1)");
  if (!(f.domain == path.domain())) throw StructureError("extract_near_identity_factors: path and map domains differ");
  CloudFactors out;
  if (f.domain.empty()) {
    out.t = {0.0, 1.0};
    return out;
  }
  const int dim = static_cast<int>(f.values.front().rows());
  const Matrix one = identity(dim);
  for (std::size_t q = 0; q < f.domain.size(); ++q) {
    const auto& p = *path.paths()[q];
    if ((p(0.0) - one).norm() > opt.endpoint_tol * one.norm())
      throw StructureError("extract_near_identity_factors: path does not start at 1");
    if ((p(1.0) - f.values[q]).norm() > opt.endpoint_tol * std::max(1.0, f.values[q].norm()))
      throw StructureError("extract_near_identity_factors: path does not end at f");
  }
  Refiner r{path, f, opt, dim, {}, {0.0}, 0.0};
  const auto& knots = path.knots();
  Section<Matrix> prev = r.value(knots.front());
  for (std::size_t k = 1; k < knots.size(); ++k) {
    Section<Matrix> cur = r.value(knots[k]);
    r.run(knots[k - 1], prev, knots[k], cur);
    prev = std::move(cur);
  }
  out.factors.assign(r.steps.rbegin(), r.steps.rend());
  out.t = std::move(r.t);
  out.max_h = r.max_h;
  for (std::size_t q = 0; q < f.domain.size(); ++q) {
    Matrix prod = one;
    for (const auto& F : out.factors) prod = prod * F.values[q];
    out.product_error = std::max(out.product_error, (prod - f.values[q]).norm());
  }
  return out;
}

// ---- compact extension ----

CompactExtension extend_from_compact(const MetricPointCloud& cloud, const Region& x, const Section<Matrix>& f,
                                     const GroupPath& path, const NearIdentityCloudOptions& opt) {
  if (f.domain.empty()) throw StructureError("extend_from_compact: Ω is empty");
  CompactExtension out;
  out.factors = extract_near_identity_factors(f, path, opt);
  out.cover = dugundji_cover(cloud, x, f.domain);
  const int dim = static_cast<int>(f.values.front().rows());
  const Matrix one = identity(dim);

  for (const auto& F : out.factors.factors) {
    std::vector<Matrix> h;
    double bound = 0.0;
    for (const auto& v : F.values) {
      h.push_back(v - one);
      bound = std::max(bound, h.back().norm());
    }
    Section<Matrix> hh = dugundji_apply(out.cover, Section<Matrix>(f.domain, std::move(h)));
    for (const auto& v : hh.values) {
      double nv = v.norm();
      out.max_hhat = std::max(out.max_hhat, nv);
      if (nv > bound * (1.0 + 1e-12))
        throw BoundViolation("extend_from_compact: extension leaves the convex hull (‖ĥ‖ = " +
                             std::to_string(nv) + " > " + std::to_string(bound) + ")");
    }
    out.hhat.push_back(std::move(hh));
  }

  std::vector<Matrix> vals;
  std::vector<PointPath> paths;
  for (std::size_t q = 0; q < x.size(); ++q) {
    const PointId p = x.points()[q];
    std::vector<Matrix> hs;
    Matrix prod = one;
    for (const auto& hh : out.hhat) {
      hs.push_back(hh.values[q]);
      prod = prod * (one + hh.values[q]);
    }
    if (f.domain.contains(p)) {
      const Matrix& fp = f.at(p);
      double err = (prod - fp).norm();
      out.product_error = std::max(out.product_error, err);
      if (err > opt.endpoint_tol * std::max(1.0, fp.norm()))
        throw VerificationError("extend_from_compact: factor product misses f at point " + cloud.name(p));
      prod = fp;
    }
    auto inv = try_inverse(prod, 1e-8);
    if (!inv)
      throw NumericalError("extend_from_compact", "extension not invertible at point " + cloud.name(p));
    out.max_inverse_residual = std::max(out.max_inverse_residual, inverse_residual(prod, *inv));
    vals.push_back(std::move(prod));
    paths.push_back(hs.empty() ? constant_path(one) : make_point_path([hs, one](double t) {
      Matrix m = one;
      for (const auto& h : hs) m = m * (one + t * h);
      return m;
    }));
  }
  out.ftilde = Section<Matrix>(x, std::move(vals));
  out.path = GroupPath(x, std::move(paths));
  for (PointId p : f.domain) out.restriction_error = std::max(out.restriction_error, (out.ftilde.at(p) - f.at(p)).norm());
  return out;
}

// ---- two-set factorization ----

namespace {

bool same(const Matrix& a, const Matrix& b) { return a.rows() == b.rows() && a.cols() == b.cols() && a == b; }

struct PairChecks {
  const MetricPointCloud& cloud;
  double tol;
  double worst = 0.0;

  Matrix inverse(const Matrix& m, PointId p, const char* which) {
    auto inv = try_inverse(m, tol);
    if (!inv)
      throw NumericalError("continuous_factor_pair", std::string(which) + " not invertible at point " + cloud.name(p));
    worst = std::max(worst, inverse_residual(m, *inv));
    return *inv;
  }
};

}  // namespace

ContinuousPair continuous_factor_pair(const MetricPointCloud& cloud, const Region& u1, const Region& u2,
                                      const Section<Matrix>& f, const GroupPath& path,
                                      const ContinuousPairOptions& opt) {
  check_pair_domains(cloud, u1, u2, f.domain, "continuous_factor_pair");
  if (!(path.domain() == f.domain)) throw StructureError("continuous_factor_pair: path is not defined on U1 ∩ U2");
  const int dim = static_cast<int>(f.values.front().rows());
  const Matrix one = identity(dim);
  const Region x = unite(u1, u2), a = subtract(u1, u2), b = subtract(u2, u1);
  ContinuousPair out;
  out.chi = partition_function(cloud, u1, u2);
  PairChecks chk{cloud, opt.inverse_tol};

  if (a.empty() || b.empty()) {
    if (a.empty() && b.empty()) {
      out.f1 = Section<Matrix>::constant(u1, one);
      out.path1 = GroupPath(u1, std::vector<PointPath>(u1.size(), constant_path(one)));
      out.f2 = f;
      out.path2 = path;
    } else if (a.empty()) {
      // U1 ⊆ U2: f1 = 1, f2 extends f from U1 to U2.
      CompactExtension ext = extend_from_compact(cloud, u2, f, path, opt.factors);
      out.f1 = Section<Matrix>::constant(u1, one);
      out.path1 = GroupPath(u1, std::vector<PointPath>(u1.size(), constant_path(one)));
      out.f2 = std::move(ext.ftilde);
      out.path2 = std::move(ext.path);
      out.factor_count = static_cast<int>(ext.factors.factors.size());
    } else {
      // U2 ⊆ U1: f2 = 1, f1 extends f⁻¹ from U2 to U1.
      std::vector<Matrix> inv;
      for (std::size_t q = 0; q < f.values.size(); ++q) inv.push_back(chk.inverse(f.values[q], f.domain.points()[q], "f"));
      CompactExtension ext =
          extend_from_compact(cloud, u1, Section<Matrix>(f.domain, std::move(inv)), path.inverse(), opt.factors);
      out.f1 = std::move(ext.ftilde);
      out.path1 = std::move(ext.path);
      out.f2 = Section<Matrix>::constant(u2, one);
      out.path2 = GroupPath(u2, std::vector<PointPath>(u2.size(), constant_path(one)));
      out.factor_count = static_cast<int>(ext.factors.factors.size());
    }
  } else {
    std::vector<PointId> w1, w2;
    for (std::size_t q = 0; q < x.size(); ++q) {
      if (out.chi.values[q] <= 0.75) w1.push_back(x.points()[q]);
      if (out.chi.values[q] >= 0.25) w2.push_back(x.points()[q]);
    }
    out.w1 = Region(std::move(w1));
    out.w2 = Region(std::move(w2));
    out.seam = intersect(out.w1, out.w2);
    if (out.seam.empty())
      throw StructureError("continuous_factor_pair: W1 ∩ W2 is empty (no overlap point with 1/4 ≤ χ ≤ 3/4)");
    if (!out.seam.subset_of(f.domain)) throw VerificationError("continuous_factor_pair: W1 ∩ W2 leaves U1 ∩ U2");

    CompactExtension ext = extend_from_compact(cloud, x, restrict_section(f, out.seam), path.restricted(out.seam),
                                               opt.factors);
    out.factor_count = static_cast<int>(ext.factors.factors.size());

    // f2 = f on W1 ∩ U2, f̃ on W2; the branches meet on W1 ∩ W2.
    std::vector<Matrix> v2;
    std::vector<PointPath> p2;
    for (PointId p : u2) {
      if (out.w1.contains(p)) {
        if (out.w2.contains(p) && !same(ext.ftilde.at(p), f.at(p)))
          throw VerificationError("continuous_factor_pair: seam disagreement f ≠ f̃ at point " + cloud.name(p));
        v2.push_back(f.at(p));
        p2.push_back(path.paths()[*f.domain.index_of(p)]);
      } else {
        v2.push_back(ext.ftilde.at(p));
        p2.push_back(ext.path.paths()[*x.index_of(p)]);
      }
    }
    out.f2 = Section<Matrix>(u2, std::move(v2));
    out.path2 = GroupPath(u2, std::move(p2));

    // f1 = f2 f⁻¹ on U1 ∩ U2, 1 on U1 ∖ W2; on (U1 ∩ U2) ∖ W2 the first branch
    // is f f⁻¹, so f2 = f is asserted there and the exact 1 is used.
    std::vector<Matrix> v1;
    std::vector<PointPath> p1;
    for (PointId p : u1) {
      if (!out.w2.contains(p)) {
        if (f.domain.contains(p) && !same(out.f2.at(p), f.at(p)))
          throw VerificationError("continuous_factor_pair: seam disagreement f2 ≠ f at point " + cloud.name(p));
        v1.push_back(one);
        p1.push_back(constant_path(one));
      } else {
        v1.push_back(out.f2.at(p) * chk.inverse(f.at(p), p, "f"));
        PointPath pf = path.paths()[*f.domain.index_of(p)];
        PointPath pg = out.path2.paths()[*u2.index_of(p)];
        p1.push_back(make_point_path([pf, pg](double t) -> Matrix {
          return (*pg)(t) * checked_inverse((*pf)(t), "continuous_factor_pair path");
        }));
      }
    }
    out.f1 = Section<Matrix>(u1, std::move(v1));
    out.path1 = GroupPath(u1, std::move(p1));
  }

  for (PointId p : u2) chk.inverse(out.f2.at(p), p, "f2");
  for (PointId p : u1) {
    Matrix inv1 = chk.inverse(out.f1.at(p), p, "f1");
    if (f.domain.contains(p)) out.residual = std::max(out.residual, (f.at(p) - inv1 * out.f2.at(p)).norm());
  }
  out.max_inverse_residual = chk.worst;
  return out;
}

PairSplitter<PathedMatrix> continuous_pair_splitter(const MetricPointCloud& cloud, const ContinuousPairOptions& opt) {
  return [&cloud, opt](const Section<PathedMatrix>& g, const Region& a, const Region& b) {
    ContinuousPair r = continuous_factor_pair(cloud, a, b, values_of(g), GroupPath::of(g), opt);
    return SplitPair<PathedMatrix>{attach_path(r.f1, r.path1), attach_path(r.f2, r.path2)};
  };
}

ContinuousSplit split_continuous_cocycle(const MetricPointCloud& cloud, const Cochain1<PathedMatrix>& f, double tol,
                                         const ContinuousPairOptions& opt) {
  int dim = 0;
  for (const auto& s : f.sections)
    if (!s.values.empty()) {
      dim = static_cast<int>(s.values.front().value.rows());
      break;
    }
  if (dim == 0) dim = 1;
  for (const Region& m : f.cover.members())
    if (!cloud.contains(m)) throw StructureError("split_continuous_cocycle: cover leaves the cloud");
  PathedMatrixGroup g(dim);
  SplitOptions so;
  so.tol = tol;
  SplitResult<PathedMatrix> r = chain_split(g, f, continuous_pair_splitter(cloud, opt), so);
  ContinuousSplit out;
  out.g.cover = r.g.cover;
  for (const auto& s : r.g.sections) out.g.sections.push_back(values_of(s));
  out.residual = r.residual;
  out.splitter_calls = r.splitter_calls;
  return out;
}

}  // namespace garbe
