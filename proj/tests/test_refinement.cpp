#include <random>

#include "doctest.h"
#include "garbe/cech/refinement.hpp"
#include "support.hpp"

using namespace garbe;

namespace {

struct RandomRefinement {
  Cover coarse;
  Cover fine;
  std::vector<std::size_t> phi;
  std::vector<std::size_t> psi;
};

// Each coarse member is cut into at most two nonempty pieces; ψ picks any
// coarse member containing the piece.
RandomRefinement random_refinement(std::mt19937_64& rng) {
  RandomRefinement r;
  r.coarse = testing::random_cover(7, 3, rng);
  std::vector<Region> pieces;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < r.coarse.size(); ++i) {
    std::vector<PointId> a, b;
    for (PointId p : r.coarse.member(i)) (coin(rng) ? a : b).push_back(p);
    for (auto* part : {&a, &b}) {
      if (part->empty()) continue;
      pieces.emplace_back(*part);
      r.phi.push_back(i);
    }
  }
  r.fine = Cover(pieces);
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    std::vector<std::size_t> options;
    for (std::size_t i = 0; i < r.coarse.size(); ++i)
      if (pieces[j].subset_of(r.coarse.member(i))) options.push_back(i);
    r.psi.push_back(options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
  }
  return r;
}

}  // namespace

TEST_CASE("refine along the identity and to a singleton subcover") {
  S3 g;
  std::mt19937_64 rng(5);
  Cover u({Region({0, 1, 2}), Region({2, 3})});
  auto f = coboundary(g, testing::random_cochain0(g, u, rng));
  RefinementMap id(u, u, {0, 1});
  CHECK(cochain_distance(g, refine(id, f), f) == 0.0);

  RefinementMap single(Cover({Region({2, 3})}), u, {1});
  auto r = refine(single, f);
  CHECK(r.size() == 1);
  for (const auto& v : r(0, 0).values) CHECK(v == g.identity());
}

TEST_CASE("refinement of a 2-set cover on 6 points matches hand restriction") {
  S3 g;
  std::mt19937_64 rng(6);
  Cover u({Region({0, 1, 2, 3}), Region({2, 3, 4, 5})});
  auto f = coboundary(g, testing::random_cochain0(g, u, rng));
  Cover v({Region({0, 1}), Region({2, 3}), Region({3, 4}), Region({4, 5})});
  RefinementMap phi(v, u, {0, 0, 1, 1});
  auto r = refine(phi, f);
  CHECK(r(1, 2).domain == Region({3}));
  CHECK(r(1, 2).at(3) == f(0, 1).at(3));
  CHECK(r(2, 1).at(3) == f(1, 0).at(3));
  CHECK(r(0, 3).domain.empty());
  CHECK(r(2, 3).at(4) == f(1, 1).at(4));
  CHECK(r(1, 1).at(2) == f(0, 0).at(2));
  CHECK(is_cocycle(g, r).cocycle);
}

TEST_CASE("invalid refinement maps are rejected") {
  Cover u({Region({0, 1}), Region({1, 2})});
  Cover v({Region({0, 2})});
  CHECK_THROWS_AS(RefinementMap(v, u, {0}), StructureError);
}

TEST_CASE("choice witness: equal maps and identity cocycle give h = 1") {
  S3 g;
  std::mt19937_64 rng(7);
  auto r = random_refinement(rng);
  RefinementMap phi(r.fine, r.coarse, r.phi);
  auto f = coboundary(g, testing::random_cochain0(g, r.coarse, rng));
  auto h = refinement_choice_witness(g, phi, phi, f);
  for (const auto& s : h.sections)
    for (const auto& v : s.values) CHECK(v == g.identity());
  RefinementMap psi(r.fine, r.coarse, r.psi);
  auto h1 = refinement_choice_witness(g, phi, psi, identity_cochain1(g, r.coarse));
  for (const auto& s : h1.sections)
    for (const auto& v : s.values) CHECK(v == g.identity());
}

TEST_CASE("choice witness rejects non-cocycles") {
  S3 g;
  Cover u({Region({0}), Region({0})});
  auto f = identity_cochain1(g, u);
  f(0, 1).at(0) = S3::Element{1, 0, 2};  // f_10 left at identity
  Cover v({Region({0}), Region({0})});
  RefinementMap phi(v, u, {0, 0});
  RefinementMap psi(v, u, {1, 0});
  CHECK_THROWS_AS(refinement_choice_witness(g, phi, psi, f), VerificationError);
}

TEST_CASE_TEMPLATE("choice witness round trips on random refinements", G, S3, GL2F5) {
  G g;
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    auto r = random_refinement(rng);
    RefinementMap phi(r.fine, r.coarse, r.phi);
    RefinementMap psi(r.fine, r.coarse, r.psi);
    auto f = coboundary(g, testing::random_cochain0(g, r.coarse, rng));
    auto h = refinement_choice_witness(g, phi, psi, f);
    CHECK(cochain_distance(g, refine(psi, f), box_action(g, h, refine(phi, f))) == 0.0);
  }
}

TEST_CASE_TEMPLATE("injectivity witness round trips on random equivalent pairs", G, S3, GL2F5) {
  G g;
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    auto r = random_refinement(rng);
    RefinementMap phi(r.fine, r.coarse, r.phi);
    auto f = coboundary(g, testing::random_cochain0(g, r.coarse, rng));
    auto rr = testing::random_cochain0(g, r.coarse, rng);
    auto gg = box_action(g, rr, f);
    Cochain0<typename G::Element> h{r.fine, {}};
    for (std::size_t j = 0; j < r.fine.size(); ++j)
      h.sections.push_back(restrict_section(rr[r.phi[j]], r.fine.member(j)));
    auto l = refinement_injectivity_witness(g, phi, f, gg, h);
    CHECK(cochain_distance(g, gg, box_action(g, l, f)) == 0.0);
  }
}

TEST_CASE("injectivity witness with f = g and h = 1 gives l = 1") {
  S3 g;
  std::mt19937_64 rng(10);
  auto r = random_refinement(rng);
  RefinementMap phi(r.fine, r.coarse, r.phi);
  auto f = coboundary(g, testing::random_cochain0(g, r.coarse, rng));
  auto l = refinement_injectivity_witness(g, phi, f, f, identity_cochain0(g, r.fine));
  for (const auto& s : l.sections)
    for (const auto& v : s.values) CHECK(v == g.identity());
}

TEST_CASE("injectivity witness detects an inconsistent h") {
  S3 g;
  Cover u({Region({0, 1})});
  Cover v({Region({0, 1}), Region({1})});
  RefinementMap phi(v, u, {0, 0});
  auto f = identity_cochain1(g, u);
  auto h = identity_cochain0(g, v);
  h[1].at(1) = S3::Element{1, 0, 2};
  CHECK_THROWS_AS(refinement_injectivity_witness(g, phi, f, f, h), VerificationError);
}

TEST_CASE("gluing local splittings") {
  S3 g;
  std::mt19937_64 rng(12);
  SUBCASE("trivial data") {
    Cover u({Region({0, 1, 2}), Region({2, 3})});
    Cover v({Region({0, 1}), Region({1, 2}), Region({2, 3})});
    RefinementMap phi(v, u, {0, 0, 1});
    std::vector<Cochain0<S3::Element>> locals;
    for (std::size_t n = 0; n < u.size(); ++n)
      locals.push_back(identity_cochain0(g, v.restricted(u.member(n))));
    auto out = glue_from_local_splittings(g, phi, identity_cochain1(g, v), locals);
    CHECK(cochain_distance(g, out.g, identity_cochain1(g, u)) == 0.0);
    CHECK(cochain_distance(g, out.witness, identity_cochain0(g, v)) == 0.0);
  }
  SUBCASE("single-set cover") {
    Cover u({Region({0, 1, 2})});
    Cover v({Region({0, 1}), Region({1, 2})});
    RefinementMap phi(v, u, {0, 0});
    auto k = testing::random_cochain0(g, v, rng);
    auto f = coboundary(g, k);
    std::vector<Cochain0<S3::Element>> locals{k};
    auto out = glue_from_local_splittings(g, phi, f, locals);
    CHECK(out.g.size() == 1);
    for (const auto& x : out.g(0, 0).values) CHECK(x == g.identity());
  }
  SUBCASE("2-set coarse cover, 4-set fine cover") {
    Cover u({Region({0, 1, 2, 3}), Region({2, 3, 4, 5})});
    Cover v({Region({0, 1, 2}), Region({2, 3}), Region({3, 4}), Region({4, 5})});
    RefinementMap phi(v, u, {0, 0, 1, 1});
    for (int t = 0; t < 20; ++t) {
      auto k = testing::random_cochain0(g, v, rng);
      auto a = testing::random_cochain0(g, u, rng);
      auto f = coboundary(g, k);
      // h_jn := a_n k_j, so that g_mn = a_m a_n^{-1}.
      std::vector<Cochain0<S3::Element>> locals;
      for (std::size_t n = 0; n < u.size(); ++n) {
        Cochain0<S3::Element> loc{v.restricted(u.member(n)), {}};
        for (std::size_t j = 0; j < v.size(); ++j) {
          Region d = intersect(v.member(j), u.member(n));
          std::vector<S3::Element> vals;
          for (PointId p : d) vals.push_back(g.multiply(a[n].at(p), k[j].at(p)));
          loc.sections.emplace_back(d, vals);
        }
        locals.push_back(loc);
      }
      auto out = glue_from_local_splittings(g, phi, f, locals);
      CHECK(is_cocycle(g, out.g).cocycle);
      auto a_inv = a;
      for (auto& sec : a_inv.sections)
        for (auto& x : sec.values) x = g.invert(x);
      CHECK(cochain_distance(g, out.g, coboundary(g, a_inv)) == 0.0);
      CHECK(cochain_distance(g, refine(phi, out.g), box_action(g, out.witness, f)) == 0.0);
    }
  }
}
