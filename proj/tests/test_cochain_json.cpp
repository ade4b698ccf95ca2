#include <random>

#include "doctest.h"
#include "garbe/cech/cochain_json.hpp"
#include "support.hpp"

using namespace garbe;

namespace {

const char* kS3Doc = R"({
  "points": ["a", "b", "c"],
  "cover": {"U1": ["a", "b"], "U2": ["b", "c"]},
  "group": "S3",
  "cochain1": {
    "U1,U1": {"a": [1,2,3], "b": [1,2,3]},
    "U1,U2": {"b": [2,1,3]},
    "U2,U1": {"b": [2,1,3]},
    "U2,U2": {"b": [1,2,3], "c": [1,2,3]}
  }
})";

}  // namespace

TEST_CASE("S3 document parses to 0-based one-line form") {
  auto doc = parse_cochain_document(kS3Doc);
  CHECK(doc.group == "S3");
  CHECK(doc.cover.size() == 2);
  const auto& f = std::get<Cochain1<S3::Element>>(doc.cochain1);
  CHECK(f(0, 1).at(1) == S3::Element{1, 0, 2});
  CHECK(is_cocycle(S3{}, f).cocycle);
  CHECK_FALSE(doc.cochain0.has_value());
}

TEST_CASE("round trip preserves random cochains") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    Cover c = testing::random_cover(6, 3, rng);
    CochainDocument doc;
    for (int p = 0; p < 6; ++p) doc.point_names.push_back("p" + std::to_string(p));
    doc.cover = c;
    GL2F5 g;
    auto h = testing::random_cochain0(g, c, rng);
    doc.group = "GL2_F5";
    doc.cochain1 = coboundary(g, h);
    doc.cochain0 = h;
    auto back = parse_cochain_document(serialize_cochain_document(doc));
    CHECK(back.cover == c);
    CHECK(cochain_distance(g, std::get<Cochain1<GL2F5::Element>>(back.cochain1),
                           std::get<Cochain1<GL2F5::Element>>(doc.cochain1)) == 0.0);
    CHECK(serialize_cochain_document(back) == serialize_cochain_document(doc));
  }
}

TEST_CASE("matrix documents infer their size") {
  const char* text = R"({"points": [0], "cover": {"U1": [0]}, "group": "matrix",
    "cochain1": {"U1,U1": {"0": [[1,0],[0,0],[0,0],[1,0]]}}})";
  auto doc = parse_cochain_document(text);
  CHECK(doc.dim == 2);
  const auto& f = std::get<Cochain1<Matrix>>(doc.cochain1);
  CHECK(norm(f(0, 0).at(0) - identity(2)) == 0.0);
  const char* reals = R"({"points": [0], "cover": {"U1": [0]}, "group": "matrix",
    "cochain1": {"U1,U1": {"0": [1]}}})";
  CHECK(parse_cochain_document(reals).dim == 1);
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(parse_cochain_document("{"), InputError);
  CHECK_THROWS_AS(parse_cochain_document(R"({"cover": {}})"), InputError);
  CHECK_THROWS_AS(parse_cochain_document(R"({"points": [0], "cover": {"U1": [0]}, "group": "Z7",
    "cochain1": {}})"),
                  InputError);
  // not a permutation
  CHECK_THROWS_AS(parse_cochain_document(R"({"points": [0], "cover": {"U1": [0]}, "group": "S3",
    "cochain1": {"U1,U1": {"0": [1,1,3]}}})"),
                  InputError);
  // singular matrix over F5
  CHECK_THROWS_AS(parse_cochain_document(R"({"points": [0], "cover": {"U1": [0]}, "group": "GL2_F5",
    "cochain1": {"U1,U1": {"0": [[1,2],[2,4]]}}})"),
                  InputError);
  // missing overlap entry
  CHECK_THROWS_AS(parse_cochain_document(R"({"points": [0, 1], "cover": {"U1": [0, 1], "U2": [1]},
    "group": "S3", "cochain1": {"U1,U1": {"0": [1,2,3], "1": [1,2,3]}}})"),
                  StructureError);
  // point outside the overlap
  CHECK_THROWS_AS(parse_cochain_document(R"({"points": [0, 1], "cover": {"U1": [0], "U2": [1]},
    "group": "S3", "cochain1": {"U1,U1": {"0": [1,2,3], "1": [1,2,3]}, "U2,U2": {"1": [1,2,3]}}})"),
                  StructureError);
  CHECK_THROWS_AS(read_cochain_file("/nonexistent/cochain.json"), InputError);
}
