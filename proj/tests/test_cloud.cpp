#include <random>

#include "cloud_support.hpp"
#include "doctest.h"
#include "garbe/continuous/cloud_json.hpp"

using namespace garbe;

TEST_CASE("cloud from a distance table validates the metric axioms") {
  std::vector<std::vector<double>> ok{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}};
  auto c = MetricPointCloud::from_matrix(ok, {"a", "b", "c"});
  CHECK(c.size() == 3);
  CHECK(c.distance(0, 2) == 2.0);
  CHECK(c.name(1) == "b");
  CHECK(c.diameter(c.all()) == 2.0);
  CHECK(c.dist_between(Region({0}), Region({1, 2})) == 1.0);

  auto bad = ok;
  bad[0][1] = 1.5;
  CHECK_THROWS_AS(MetricPointCloud::from_matrix(bad), StructureError);  // asymmetric
  bad = ok;
  bad[1][1] = 0.1;
  CHECK_THROWS_AS(MetricPointCloud::from_matrix(bad), StructureError);
  bad = {{0, 1, 3}, {1, 0, 1}, {3, 1, 0}};
  CHECK_THROWS_AS(MetricPointCloud::from_matrix(bad), StructureError);  // 3 > 1 + 1
  bad = {{0, 0}, {0, 0}};
  CHECK_THROWS_AS(MetricPointCloud::from_matrix(bad), StructureError);
  CHECK_THROWS_AS(MetricPointCloud::from_matrix({{0, 1}, {1, 0}}, {"x"}), StructureError);
}

TEST_CASE("coordinate clouds use the euclidean distance") {
  auto c = MetricPointCloud::from_coordinates({{0, 0}, {3, 4}, {3, 0}});
  CHECK(c.distance(0, 1) == 5.0);
  CHECK(c.distance(1, 2) == 4.0);
  CHECK(c.dist_to_set(0, Region({1, 2})) == 3.0);
  CHECK_THROWS_AS(MetricPointCloud::from_coordinates({{1, 1}, {1, 1}}), StructureError);
  CHECK_THROWS_AS(MetricPointCloud::from_coordinates({{1, 1}, {1}}), StructureError);
}

TEST_CASE("urysohn hand values") {
  auto c = MetricPointCloud::from_coordinates({{0.0}, {0.3}, {1.0}});
  auto chi = urysohn(c, c.all(), Region({0}), Region({2}));
  CHECK(chi.at(0) == 0.0);
  CHECK(chi.at(2) == 1.0);
  CHECK(chi.at(1) == doctest::Approx(0.3).epsilon(1e-15));

  auto sym = MetricPointCloud::from_coordinates({{-1.0}, {0.0}, {1.0}});
  CHECK(urysohn(sym, sym.all(), Region({0}), Region({2})).at(1) == 0.5);

  CHECK_THROWS_AS(urysohn(c, c.all(), Region({0, 1}), Region({1, 2})), StructureError);
  CHECK_THROWS_AS(urysohn(c, c.all(), Region(), Region({2})), StructureError);
  CHECK_THROWS_AS(urysohn(c, Region({0, 1}), Region({0}), Region({2})), StructureError);
}

TEST_CASE("urysohn stays in [0,1] and is exact on A and B") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    auto c = testing::random_plane_cloud(30, 2.0, 1.0, rng);
    Region a = testing::select(c, [](const auto& x) { return x[0] < 0.6; });
    Region b = testing::select(c, [](const auto& x) { return x[0] > 1.4; });
    if (a.empty() || b.empty()) continue;
    auto chi = urysohn(c, c.all(), a, b);
    for (PointId p : c.all()) {
      CHECK(chi.at(p) >= 0.0);
      CHECK(chi.at(p) <= 1.0);
    }
    for (PointId p : a) CHECK(chi.at(p) == 0.0);
    for (PointId p : b) CHECK(chi.at(p) == 1.0);
  }
}

TEST_CASE("cloud document parsing") {
  const char* text = R"({
    "points": ["p", "q", "r"],
    "metric": {"coordinates": [[0], [1], [2]], "euclidean": true},
    "subsets": {"U1": ["p", "q"], "U2": ["q", "r"]},
    "maps": {"one": {"q": [1, 0, 0, 1]}, "f": {"q": [[2, 0], 0, 0, [1, 1]]}},
    "paths": {"f": [[0, "one"], [1, "f"]]}
  })";
  auto doc = parse_cloud_document(text);
  CHECK(doc.cloud.size() == 3);
  CHECK(doc.dim == 2);
  CHECK(doc.subset("U1") == Region({0, 1}));
  CHECK(doc.subset("U2") == Region({1, 2}));
  const auto& f = doc.map("f");
  CHECK(f.domain == Region({1}));
  CHECK(f.at(1)(1, 1) == Complex(1, 1));
  CHECK(doc.path("f").at(1, 0.5)(0, 0) == Complex(1.5, 0));
  CHECK_THROWS_AS(doc.subset("nope"), InputError);

  auto again = parse_cloud_document(serialize_cloud_document(doc));
  CHECK(again.cloud.distance(0, 2) == 2.0);
  CHECK(again.subset("U2") == doc.subset("U2"));
  CHECK(again.map("f").at(1) == f.at(1));

  auto table = parse_cloud_document(R"({"points": [1, 2], "metric": [[0, 0.5], [0.5, 0]]})");
  CHECK(table.cloud.distance(0, 1) == 0.5);
  CHECK(table.cloud.name(1) == "2");
}

TEST_CASE("malformed cloud documents") {
  CHECK_THROWS_AS(parse_cloud_document("{"), InputError);
  CHECK_THROWS_AS(parse_cloud_document(R"({"points": ["a", "a"], "metric": [[0, 1], [1, 0]]})"), InputError);
  CHECK_THROWS_AS(parse_cloud_document(R"({"points": ["a", "b"], "metric": [[0, 1], [2, 0]]})"), InputError);
  CHECK_THROWS_AS(parse_cloud_document(R"({"points": ["a"], "metric": [[0]], "subsets": {"U": ["z"]}})"),
                  InputError);
  CHECK_THROWS_AS(
      parse_cloud_document(R"({"points": ["a"], "metric": [[0]], "maps": {"f": {"a": 1}, "g": {"a": [1, 0, 0, 1]}}})"),
      InputError);
  CHECK_THROWS_AS(parse_cloud_document(R"({"points": ["a"], "metric": [[0]], "maps": {"f": {"a": [1, 2, 3]}}})"),
                  InputError);
  CHECK_THROWS_AS(parse_cloud_document(
                      R"({"points": ["a"], "metric": [[0]], "maps": {"f": {"a": 1}}, "paths": {"f": [[0.5, "f"], [1, "f"]]}})"),
                  InputError);
  CHECK_THROWS_AS(parse_cloud_document(R"({"points": ["a"], "metric": {"coordinates": [[0]], "euclidean": false}})"),
                  InputError);
}
