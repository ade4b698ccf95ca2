#include "garbe/continuous/cloud.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace garbe {

namespace {

std::vector<std::string> default_names(std::vector<std::string> names, std::size_t n) {
  if (names.empty())
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  if (names.size() != n) throw StructureError("cloud: name count does not match point count");
  return names;
}

}  // namespace

MetricPointCloud MetricPointCloud::from_matrix(const std::vector<std::vector<double>>& d,
                                               std::vector<std::string> names, double tol) {
  MetricPointCloud c;
  c.n_ = d.size();
  c.names_ = default_names(std::move(names), c.n_);
  c.d_.assign(c.n_ * c.n_, 0.0);
  double scale = 0.0;
  for (std::size_t i = 0; i < c.n_; ++i) {
    if (d[i].size() != c.n_) throw StructureError("cloud: distance table is not square");
    for (std::size_t j = 0; j < c.n_; ++j) {
      double v = d[i][j];
      if (!std::isfinite(v) || v < 0) throw StructureError("cloud: distances must be finite and nonnegative");
      c.d_[i * c.n_ + j] = v;
      scale = std::max(scale, v);
    }
  }
  for (std::size_t i = 0; i < c.n_; ++i) {
    if (c.d_[i * c.n_ + i] != 0.0) throw StructureError("cloud: nonzero diagonal at point " + c.names_[i]);
    for (std::size_t j = i + 1; j < c.n_; ++j) {
      if (c.d_[i * c.n_ + j] != c.d_[j * c.n_ + i])
        throw StructureError("cloud: distance table is not symmetric at (" + c.names_[i] + ", " + c.names_[j] + ")");
      if (c.d_[i * c.n_ + j] == 0.0)
        throw StructureError("cloud: distinct points " + c.names_[i] + ", " + c.names_[j] + " at distance 0");
    }
  }
  const double slack = tol * scale;
  for (std::size_t i = 0; i < c.n_; ++i)
    for (std::size_t j = 0; j < c.n_; ++j)
      for (std::size_t k = 0; k < c.n_; ++k)
        if (c.d_[i * c.n_ + k] > c.d_[i * c.n_ + j] + c.d_[j * c.n_ + k] + slack)
          throw StructureError("cloud: triangle inequality fails for (" + c.names_[i] + ", " + c.names_[j] +
                               ", " + c.names_[k] + ")");
  return c;
}

MetricPointCloud MetricPointCloud::from_coordinates(const std::vector<std::vector<double>>& coords,
                                                    std::vector<std::string> names) {
  MetricPointCloud c;
  c.n_ = coords.size();
  c.names_ = default_names(std::move(names), c.n_);
  c.coords_ = coords;
  c.d_.assign(c.n_ * c.n_, 0.0);
  const std::size_t dim = c.n_ ? coords[0].size() : 0;
  for (std::size_t i = 0; i < c.n_; ++i) {
    if (coords[i].size() != dim) throw StructureError("cloud: coordinate rows differ in length");
    for (double v : coords[i])
      if (!std::isfinite(v)) throw StructureError("cloud: coordinates must be finite");
  }
  for (std::size_t i = 0; i < c.n_; ++i)
    for (std::size_t j = i + 1; j < c.n_; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) s += (coords[i][k] - coords[j][k]) * (coords[i][k] - coords[j][k]);
      double v = std::sqrt(s);
      if (v == 0.0) throw StructureError("cloud: duplicate points " + c.names_[i] + ", " + c.names_[j]);
      c.d_[i * c.n_ + j] = c.d_[j * c.n_ + i] = v;
    }
  return c;
}

Region MetricPointCloud::all() const {
  std::vector<PointId> p(n_);
  for (std::size_t i = 0; i < n_; ++i) p[i] = static_cast<PointId>(i);
  return Region(std::move(p));
}

bool MetricPointCloud::contains(const Region& r) const {
  return r.empty() || (r.points().front() >= 0 && static_cast<std::size_t>(r.points().back()) < n_);
}

double MetricPointCloud::dist_to_set(PointId x, const Region& s) const {
  double best = std::numeric_limits<double>::infinity();
  for (PointId p : s) best = std::min(best, distance(x, p));
  return best;
}

double MetricPointCloud::dist_between(const Region& a, const Region& b) const {
  double best = std::numeric_limits<double>::infinity();
  for (PointId p : a) best = std::min(best, dist_to_set(p, b));
  return best;
}

double MetricPointCloud::diameter(const Region& s) const {
  double best = 0.0;
  for (PointId p : s)
    for (PointId q : s) best = std::max(best, distance(p, q));
  return best;
}

Section<double> urysohn(const MetricPointCloud& cloud, const Region& x, const Region& a, const Region& b) {
  if (!cloud.contains(x)) throw StructureError("urysohn: X is not a subset of the cloud");
  if (a.empty() || b.empty()) throw StructureError("urysohn: A and B must be nonempty");
  if (!a.subset_of(x) || !b.subset_of(x)) throw StructureError("urysohn: A and B must lie in X");
  if (!intersect(a, b).empty()) throw StructureError("urysohn: A and B overlap");
  std::vector<double> v;
  v.reserve(x.size());
  for (PointId p : x) {
    double da = cloud.dist_to_set(p, a), db = cloud.dist_to_set(p, b);
    v.push_back(da / (da + db));
  }
  return Section<double>(x, std::move(v));
}

}  // namespace garbe
