#include <random>

#include "doctest.h"
#include "garbe/cech/group.hpp"
#include "support.hpp"

using namespace garbe;

TEST_CASE("S3 composition is right-to-left on one-line arrays") {
  S3 g;
  S3::Element cyc{1, 2, 0};    // 1->2, 2->3, 3->1
  S3::Element swap12{1, 0, 2};
  // (1 2 3)∘(1 2): 1 -> 2 -> 3, 2 -> 1 -> 2, 3 -> 3 -> 1
  CHECK(g.multiply(cyc, swap12) == S3::Element{2, 1, 0});
  CHECK(g.invert(cyc) == S3::Element{2, 0, 1});
}

TEST_CASE("GL(2,F5) inverse via adjugate") {
  GL2F5 g;
  GL2F5::Element m{1, 2, 3, 4};  // det = -2 = 3 mod 5
  CHECK(GL2F5::det(m) == 3);
  CHECK(g.multiply(m, g.invert(m)) == g.identity());
  CHECK(g.multiply(g.invert(m), m) == g.identity());
}

TEST_CASE_TEMPLATE("group axioms on random samples", G, S3, GL2F5) {
  G g;
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    auto a = testing::random_element(g, rng);
    auto b = testing::random_element(g, rng);
    auto c = testing::random_element(g, rng);
    CHECK(g.multiply(a, g.invert(a)) == g.identity());
    CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
    CHECK(g.multiply(g.identity(), a) == a);
  }
}

TEST_CASE("GL(2,F5) has 480 elements") {
  int count = 0;
  for (int k = 0; k < 625; ++k) {
    GL2F5::Element e{static_cast<std::uint8_t>(k % 5), static_cast<std::uint8_t>(k / 5 % 5),
                     static_cast<std::uint8_t>(k / 25 % 5), static_cast<std::uint8_t>(k / 125)};
    if (GL2F5::det(e) != 0) ++count;
  }
  CHECK(count == 480);
}

TEST_CASE("matrix group distance and inverse") {
  MatrixGroup g(2);
  Matrix a(2, 2);
  a << 2.0, 1.0, 0.0, 1.0;
  CHECK(g.distance(g.multiply(a, g.invert(a)), g.identity()) < 1e-14);
  Matrix singular = Matrix::Zero(2, 2);
  CHECK_THROWS_AS(g.invert(singular), NumericalError);
}
