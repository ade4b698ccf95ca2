#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "garbe/cech/group.hpp"
#include "garbe/cech/region.hpp"
#include "garbe/error.hpp"

namespace garbe {

// Group-valued map on a region; values[k] belongs to domain.points()[k].
template <class E>
struct Section {
  Region domain;
  std::vector<E> values;

  Section() = default;
  Section(Region d, std::vector<E> v) : domain(std::move(d)), values(std::move(v)) {
    if (values.size() != domain.size())
      throw StructureError("section: value count does not match domain size");
  }
  static Section constant(const Region& d, const E& e) {
    return Section(d, std::vector<E>(d.size(), e));
  }

  const E& at(PointId p) const {
    auto k = domain.index_of(p);
    if (!k) throw StructureError("section: point " + std::to_string(p) + " outside domain");
    return values[*k];
  }
  E& at(PointId p) {
    auto k = domain.index_of(p);
    if (!k) throw StructureError("section: point " + std::to_string(p) + " outside domain");
    return values[*k];
  }
};

// Restriction to a subregion of the domain.
template <class E>
Section<E> restrict_section(const Section<E>& s, const Region& sub) {
  if (!sub.subset_of(s.domain)) throw StructureError("restriction to a non-subregion");
  std::vector<E> v;
  v.reserve(sub.size());
  for (PointId p : sub) v.push_back(s.at(p));
  return Section<E>(sub, std::move(v));
}

template <class E>
struct Cochain0 {
  Cover cover;
  std::vector<Section<E>> sections;

  const Section<E>& operator[](std::size_t i) const { return sections[i]; }
  Section<E>& operator[](std::size_t i) { return sections[i]; }
};

// Ordered-pair storage: entry (i, j) lives at i * n + j; empty overlaps keep
// empty sections.
template <class E>
struct Cochain1 {
  Cover cover;
  std::vector<Section<E>> sections;

  std::size_t size() const { return cover.size(); }
  const Section<E>& operator()(std::size_t i, std::size_t j) const {
    return sections[i * cover.size() + j];
  }
  Section<E>& operator()(std::size_t i, std::size_t j) { return sections[i * cover.size() + j]; }
};

template <Group G>
Cochain0<typename G::Element> identity_cochain0(const G& g, const Cover& cover) {
  Cochain0<typename G::Element> h{cover, {}};
  for (std::size_t i = 0; i < cover.size(); ++i)
    h.sections.push_back(Section<typename G::Element>::constant(cover.member(i), g.identity()));
  return h;
}

template <Group G>
Cochain1<typename G::Element> identity_cochain1(const G& g, const Cover& cover) {
  Cochain1<typename G::Element> f{cover, {}};
  for (std::size_t i = 0; i < cover.size(); ++i)
    for (std::size_t j = 0; j < cover.size(); ++j)
      f.sections.push_back(
          Section<typename G::Element>::constant(cover.overlap(i, j), g.identity()));
  return f;
}

template <class E>
void check_cochain_shape(const Cochain1<E>& f) {
  const std::size_t n = f.cover.size();
  if (f.sections.size() != n * n) throw StructureError("cochain: expected n×n sections");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(f(i, j).domain == f.cover.overlap(i, j)))
        throw StructureError("cochain: section (" + f.cover.name(i) + "," + f.cover.name(j) +
                             ") is not defined on the overlap");
}

template <class E>
void check_cochain_shape(const Cochain0<E>& h) {
  if (h.sections.size() != h.cover.size()) throw StructureError("0-cochain: one section per member");
  for (std::size_t i = 0; i < h.cover.size(); ++i)
    if (!(h[i].domain == h.cover.member(i)))
      throw StructureError("0-cochain: section " + h.cover.name(i) + " is not defined on its member");
}

// f|_Y := (f_ij restricted to U_ij ∩ Y) over the cover U|_Y.
template <class E>
Cochain1<E> restrict(const Cochain1<E>& f, const Region& y) {
  Cochain1<E> out{f.cover.restricted(y), {}};
  for (const auto& s : f.sections) out.sections.push_back(restrict_section(s, intersect(s.domain, y)));
  return out;
}

// (h□f)_ij := h_i⁻¹ f_ij h_j.
template <Group G>
Cochain1<typename G::Element> box_action(const G& g, const Cochain0<typename G::Element>& h,
                                         const Cochain1<typename G::Element>& f) {
  if (!(h.cover == f.cover)) throw StructureError("box action: cochains over different covers");
  check_cochain_shape(h);
  check_cochain_shape(f);
  Cochain1<typename G::Element> out{f.cover, {}};
  const std::size_t n = f.cover.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& s = f(i, j);
      std::vector<typename G::Element> v;
      v.reserve(s.domain.size());
      for (std::size_t k = 0; k < s.domain.size(); ++k) {
        PointId p = s.domain.points()[k];
        v.push_back(g.multiply(g.multiply(g.invert(h[i].at(p)), s.values[k]), h[j].at(p)));
      }
      out.sections.emplace_back(s.domain, std::move(v));
    }
  }
  return out;
}

template <Group G>
Cochain1<typename G::Element> coboundary(const G& g, const Cochain0<typename G::Element>& h) {
  return box_action(g, h, identity_cochain1(g, h.cover));
}

// Pointwise products; these are not closed on cocycles in the nonabelian case.
template <Group G>
Cochain1<typename G::Element> pointwise_product(const G& g, const Cochain1<typename G::Element>& a,
                                                const Cochain1<typename G::Element>& b) {
  if (!(a.cover == b.cover)) throw StructureError("product: cochains over different covers");
  Cochain1<typename G::Element> out{a.cover, {}};
  for (std::size_t k = 0; k < a.sections.size(); ++k) {
    std::vector<typename G::Element> v;
    for (std::size_t q = 0; q < a.sections[k].values.size(); ++q)
      v.push_back(g.multiply(a.sections[k].values[q], b.sections[k].values[q]));
    out.sections.emplace_back(a.sections[k].domain, std::move(v));
  }
  return out;
}

template <Group G>
Cochain0<typename G::Element> pointwise_product(const G& g, const Cochain0<typename G::Element>& a,
                                                const Cochain0<typename G::Element>& b) {
  if (!(a.cover == b.cover)) throw StructureError("product: cochains over different covers");
  Cochain0<typename G::Element> out{a.cover, {}};
  for (std::size_t k = 0; k < a.sections.size(); ++k) {
    std::vector<typename G::Element> v;
    for (std::size_t q = 0; q < a.sections[k].values.size(); ++q)
      v.push_back(g.multiply(a.sections[k].values[q], b.sections[k].values[q]));
    out.sections.emplace_back(a.sections[k].domain, std::move(v));
  }
  return out;
}

enum class ViolationKind { none, identity, inverse, triple };

struct CocycleReport {
  bool cocycle = true;
  double worst = 0.0;
  ViolationKind kind = ViolationKind::none;
  std::size_t i = 0, j = 0, k = 0;
  PointId point = -1;
};

inline std::string describe(const CocycleReport& r, const Cover& cover) {
  if (r.cocycle) return "cocycle";
  std::string kind = r.kind == ViolationKind::identity  ? "f_ii != 1"
                     : r.kind == ViolationKind::inverse ? "f_ji != f_ij^-1"
                                                        : "f_ij f_jk != f_ik";
  return kind + " at (" + cover.name(r.i) + "," + cover.name(r.j) + "," + cover.name(r.k) +
         ") point " + std::to_string(r.point) + ", distance " + std::to_string(r.worst);
}

// Checks f_ii = 1, f_ji = f_ij⁻¹ and f_ij f_jk = f_ik pointwise. The report
// names the worst violation; ties keep the first found in that check order.
template <Group G>
CocycleReport is_cocycle(const G& g, const Cochain1<typename G::Element>& f, double tol = 0.0) {
  check_cochain_shape(f);
  CocycleReport r;
  auto note = [&](double d, ViolationKind kind, std::size_t i, std::size_t j, std::size_t k,
                  PointId p) {
    if (d > tol && d > r.worst) {
      r.cocycle = false;
      r.worst = d;
      r.kind = kind;
      r.i = i;
      r.j = j;
      r.k = k;
      r.point = p;
    }
  };
  const std::size_t n = f.cover.size();
  const auto one = g.identity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t q = 0; q < f(i, i).domain.size(); ++q)
      note(g.distance(f(i, i).values[q], one), ViolationKind::identity, i, i, i,
           f(i, i).domain.points()[q]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t q = 0; q < f(i, j).domain.size(); ++q) {
        PointId p = f(i, j).domain.points()[q];
        note(g.distance(g.multiply(f(i, j).values[q], f(j, i).at(p)), one), ViolationKind::inverse,
             i, j, i, p);
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Region t = intersect(f(i, j).domain, f.cover.member(k));
        for (PointId p : t)
          note(g.distance(g.multiply(f(i, j).at(p), f(j, k).at(p)), f(i, k).at(p)),
               ViolationKind::triple, i, j, k, p);
      }
  return r;
}

// max over overlaps of distance(f_ij, h_i⁻¹ h_j).
template <Group G>
double split_residual(const G& g, const Cochain1<typename G::Element>& f,
                      const Cochain0<typename G::Element>& h) {
  double worst = 0.0;
  const std::size_t n = f.cover.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t q = 0; q < f(i, j).domain.size(); ++q) {
        PointId p = f(i, j).domain.points()[q];
        worst = std::max(worst, g.distance(f(i, j).values[q],
                                           g.multiply(g.invert(h[i].at(p)), h[j].at(p))));
      }
  return worst;
}

// max over all stored points of the distance between two cochains.
template <Group G, class C>
double cochain_distance(const G& g, const C& a, const C& b) {
  if (a.sections.size() != b.sections.size()) throw StructureError("cochain shapes differ");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.sections.size(); ++k) {
    if (!(a.sections[k].domain == b.sections[k].domain)) throw StructureError("cochain domains differ");
    for (std::size_t q = 0; q < a.sections[k].values.size(); ++q)
      worst = std::max(worst, g.distance(a.sections[k].values[q], b.sections[k].values[q]));
  }
  return worst;
}

}  // namespace garbe
