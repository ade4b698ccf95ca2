#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cloud_support.hpp"
#include "doctest.h"

using namespace garbe;

namespace {

Section<Matrix> scalar_section(const Region& r, const std::vector<double>& v) {
  std::vector<Matrix> m;
  for (double x : v) m.push_back(Matrix::Constant(1, 1, Complex(x, 0)));
  return Section<Matrix>(r, std::move(m));
}

// Direct evaluation of Σ_λ dist(x, X∖U(x_λ)) h(ω_λ) / α(x) from the
// definitions, without the cover structure.
double brute_force_value(const MetricPointCloud& c, const Region& omega, const std::vector<double>& h, PointId x) {
  double num = 0.0, alpha = 0.0;
  for (PointId xl : c.all()) {
    if (omega.contains(xl)) continue;
    double dl = std::numeric_limits<double>::infinity();
    PointId anchor = -1;
    for (PointId w : omega)
      if (c.distance(xl, w) < dl) {
        dl = c.distance(xl, w);
        anchor = w;
      }
    double r = dl / 4;
    if (!(c.distance(x, xl) < r)) continue;
    double d = std::numeric_limits<double>::infinity();
    for (PointId y : c.all())
      if (!(c.distance(y, xl) < r)) d = std::min(d, c.distance(x, y));
    num += d * h[*omega.index_of(anchor)];
    alpha += d;
  }
  return num / alpha;
}

}  // namespace

TEST_CASE("dugundji reproduces h on Ω and constants everywhere") {
  auto c = MetricPointCloud::from_coordinates({{0.0}, {0.1}, {0.5}, {0.9}, {2.0}, {3.5}});
  Region omega({0, 1});
  auto ext = dugundji_extend(c, c.all(), scalar_section(omega, {2.5, 2.5}));
  CHECK(ext.value.at(0)(0, 0) == Complex(2.5, 0));
  CHECK(ext.value.at(1)(0, 0) == Complex(2.5, 0));
  for (PointId p : c.all()) CHECK(std::abs(ext.value.at(p)(0, 0) - 2.5) <= 1e-14);
  CHECK(ext.cover.exterior == Region({2, 3, 4, 5}));
  CHECK(ext.cover.anchors[0] == 1);
  CHECK(ext.cover.radius[0] == doctest::Approx(0.1));
}

TEST_CASE("two-point Ω against the brute-force weight oracle") {
  auto c = MetricPointCloud::from_coordinates({{0.0, 0.0}, {2.0, 0.0}, {1.0, 0.1}, {1.0, -0.1}, {1.0, 0.8},
                                               {0.4, 0.3}, {1.7, 0.5}, {1.0, 2.0}});
  Region omega({0, 1});
  std::vector<double> h{0.0, 1.0};
  auto ext = dugundji_extend(c, c.all(), scalar_section(omega, h));
  for (PointId x : ext.cover.exterior) {
    double expect = brute_force_value(c, omega, h, x);
    CHECK(ext.value.at(x)(0, 0).real() == doctest::Approx(expect).epsilon(1e-13));
    CHECK(ext.value.at(x)(0, 0).imag() == 0.0);
  }
  // Ties go to the lower id: point 7 at (1, 2) is equidistant from 0 and 1.
  auto it = std::find(ext.cover.exterior.begin(), ext.cover.exterior.end(), 7);
  CHECK(ext.cover.anchors[it - ext.cover.exterior.begin()] == 0);
}

TEST_CASE("dugundji properties on random clouds") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(2, 100);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = size(rng);
    auto c = testing::random_plane_cloud(n, 1.0, 1.0, rng);
    std::vector<PointId> om;
    std::bernoulli_distribution in(0.3);
    for (int p = 0; p < n; ++p)
      if (in(rng) || p == 0) om.push_back(p);
    Region omega(om);
    std::normal_distribution<double> g;
    std::vector<Matrix> vals;
    double hmax = 0.0;
    for (std::size_t q = 0; q < omega.size(); ++q) {
      Matrix m(2, 2);
      m << Complex(g(rng), g(rng)), Complex(g(rng), g(rng)), Complex(g(rng), g(rng)), Complex(g(rng), g(rng));
      hmax = std::max(hmax, m.norm());
      vals.push_back(m);
    }
    Section<Matrix> h(omega, vals);
    auto ext = dugundji_extend(c, c.all(), h);
    for (PointId p : omega) CHECK((ext.value.at(p) - h.at(p)).norm() == 0.0);
    CHECK(ext.cover.max_weight_sum_error() <= 1e-12);
    if (!ext.cover.exterior.empty()) {
      CHECK(ext.cover.min_weight() >= 0.0);
    }
    for (double r : ext.cover.anchor_ratio) CHECK(r < 2.0);
    for (double a : ext.cover.alpha) CHECK(a > 0.0);
    for (PointId p : c.all()) CHECK(ext.value.at(p).norm() <= hmax * (1 + 1e-12));
  }
}

TEST_CASE("dugundji on a subspace X") {
  auto c = MetricPointCloud::from_coordinates({{0.0}, {1.0}, {2.0}, {10.0}});
  Region x({0, 1, 2});
  auto ext = dugundji_extend(c, x, scalar_section(Region({0}), {4.0}));
  CHECK(ext.value.domain == x);
  CHECK(ext.value.at(2)(0, 0).real() == doctest::Approx(4.0));
}

TEST_CASE("dugundji input errors") {
  auto c = MetricPointCloud::from_coordinates({{0.0}, {1.0}});
  CHECK_THROWS_AS(dugundji_cover(c, c.all(), Region()), StructureError);
  CHECK_THROWS_AS(dugundji_cover(c, Region({0}), Region({1})), StructureError);
  auto cover = dugundji_cover(c, c.all(), Region({0}));
  CHECK_THROWS_AS(dugundji_apply(cover, scalar_section(Region({1}), {1.0})), StructureError);
}
