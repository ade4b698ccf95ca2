#include "garbe/continuous/dugundji.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "garbe/util/parallel.hpp"

namespace garbe {

double DugundjiCover::max_weight_sum_error() const {
  double worst = 0.0;
  for (const auto& w : weights) {
    double s = 0.0;
    for (const auto& [l, v] : w) s += v;
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

double DugundjiCover::min_weight() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& w : weights)
    for (const auto& [l, v] : w) m = std::min(m, v);
  return m;
}

DugundjiCover dugundji_cover(const MetricPointCloud& cloud, const Region& x, const Region& omega) {
  if (omega.empty()) throw StructureError("dugundji: Ω is empty");
  if (!cloud.contains(x)) throw StructureError("dugundji: X is not a subset of the cloud");
  if (!omega.subset_of(x)) throw StructureError("dugundji: Ω is not a subset of X");
  DugundjiCover c;
  c.space = x;
  c.omega = omega;
  c.exterior = subtract(x, omega);
  const std::size_t L = c.exterior.size();
  const auto& ext = c.exterior.points();
  c.radius.resize(L);
  c.members.resize(L);
  c.anchors.resize(L);
  c.anchor_ratio.resize(L);
  for (std::size_t l = 0; l < L; ++l) {
    const PointId xl = ext[l];
    PointId anchor = omega.points().front();
    double best = cloud.distance(xl, anchor);
    for (PointId w : omega)
      if (cloud.distance(xl, w) < best) {
        best = cloud.distance(xl, w);
        anchor = w;
      }
    c.radius[l] = 0.25 * best;
    c.anchors[l] = anchor;
    std::vector<PointId> ball;
    for (PointId y : x)
      if (cloud.distance(xl, y) < c.radius[l]) ball.push_back(y);
    c.members[l] = Region(std::move(ball));
    double to_anchor = std::numeric_limits<double>::infinity(), to_omega = to_anchor;
    for (PointId v : c.members[l]) {
      to_anchor = std::min(to_anchor, cloud.distance(v, anchor));
      to_omega = std::min(to_omega, cloud.dist_to_set(v, omega));
    }
    c.anchor_ratio[l] = to_anchor / to_omega;
    if (!(c.anchor_ratio[l] < 2.0))
      throw VerificationError("dugundji: anchor of the ball at point " + cloud.name(xl) +
                              " violates dist(V, ω) < 2 dist(V, Ω)");
  }

  c.alpha.assign(L, 0.0);
  c.weights.assign(L, {});
  parallel_for(L, [&](std::size_t begin, std::size_t end) {
    for (std::size_t e = begin; e < end; ++e) {
      const PointId p = ext[e];
      auto& w = c.weights[e];
      double alpha = 0.0;
      for (std::size_t l = 0; l < L; ++l) {
        if (!c.members[l].contains(p)) continue;
        // dist(p, X ∖ V_λ); the complement contains Ω, so it is finite.
        double d = std::numeric_limits<double>::infinity();
        for (PointId y : x)
          if (!c.members[l].contains(y)) d = std::min(d, cloud.distance(p, y));
        w.emplace_back(l, d);
        alpha += d;
      }
      if (!(alpha > 0.0)) throw VerificationError("dugundji: α vanishes at point " + cloud.name(p));
      c.alpha[e] = alpha;
      for (auto& [l, v] : w) v /= alpha;
    }
  });
  return c;
}

Section<Matrix> dugundji_apply(const DugundjiCover& cover, const Section<Matrix>& h) {
  if (!(h.domain == cover.omega)) throw StructureError("dugundji: map is not defined on Ω");
  const Matrix zero = Matrix::Zero(h.values.front().rows(), h.values.front().cols());
  std::vector<Matrix> out(cover.space.size(), zero);
  std::vector<PointId> ext = cover.exterior.points();
  std::size_t e = 0;
  for (std::size_t q = 0; q < cover.space.size(); ++q) {
    PointId p = cover.space.points()[q];
    if (e < ext.size() && ext[e] == p) {
      Matrix s = zero;
      for (const auto& [l, w] : cover.weights[e]) s += w * h.at(cover.anchors[l]);
      out[q] = std::move(s);
      ++e;
    } else {
      out[q] = h.at(p);
    }
  }
  return Section<Matrix>(cover.space, std::move(out));
}

DugundjiExtension dugundji_extend(const MetricPointCloud& cloud, const Region& x, const Section<Matrix>& h) {
  DugundjiCover c = dugundji_cover(cloud, x, h.domain);
  Section<Matrix> v = dugundji_apply(c, h);
  return {std::move(v), std::move(c)};
}

}  // namespace garbe
