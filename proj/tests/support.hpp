#pragma once

#include <random>
#include <vector>

#include "garbe/cech/cochain.hpp"

namespace garbe::testing {

inline S3::Element random_element(const S3&, std::mt19937_64& rng) {
  S3::Element e{0, 1, 2};
  std::shuffle(e.begin(), e.end(), rng);
  return e;
}

inline GL2F5::Element random_element(const GL2F5&, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 4);
  while (true) {
    GL2F5::Element e{static_cast<std::uint8_t>(d(rng)), static_cast<std::uint8_t>(d(rng)),
                     static_cast<std::uint8_t>(d(rng)), static_cast<std::uint8_t>(d(rng))};
    if (GL2F5::det(e) != 0) return e;
  }
}

template <class G>
Cochain0<typename G::Element> random_cochain0(const G& g, const Cover& cover, std::mt19937_64& rng) {
  Cochain0<typename G::Element> h{cover, {}};
  for (std::size_t i = 0; i < cover.size(); ++i) {
    std::vector<typename G::Element> v;
    for (std::size_t q = 0; q < cover.member(i).size(); ++q) v.push_back(random_element(g, rng));
    h.sections.emplace_back(cover.member(i), std::move(v));
  }
  return h;
}

// Random cover of {0..points-1} by `sets` members; every point lies in some
// member and each member is nonempty.
inline Cover random_cover(int points, int sets, std::mt19937_64& rng) {
  std::vector<std::vector<PointId>> m(sets);
  std::uniform_int_distribution<int> pick(0, sets - 1);
  std::bernoulli_distribution extra(0.35);
  for (int p = 0; p < points; ++p) {
    int home = pick(rng);
    for (int s = 0; s < sets; ++s)
      if (s == home || extra(rng)) m[s].push_back(p);
  }
  for (int s = 0; s < sets; ++s)
    if (m[s].empty()) m[s].push_back(std::uniform_int_distribution<int>(0, points - 1)(rng));
  std::vector<Region> regions;
  for (auto& v : m) regions.emplace_back(std::move(v));
  return Cover(std::move(regions));
}

}  // namespace garbe::testing
