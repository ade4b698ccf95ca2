#pragma once

#include <string>
#include <utility>
#include <vector>

#include "garbe/cech/cochain.hpp"

namespace garbe {

// φ: J → I with V_j ⊆ U_{φ(j)}.
struct RefinementMap {
  Cover fine;
  Cover coarse;
  std::vector<std::size_t> map;

  RefinementMap(Cover fine_cover, Cover coarse_cover, std::vector<std::size_t> phi)
      : fine(std::move(fine_cover)), coarse(std::move(coarse_cover)), map(std::move(phi)) {
    if (map.size() != fine.size()) throw StructureError("refinement: one image per fine index");
    for (std::size_t j = 0; j < map.size(); ++j) {
      if (map[j] >= coarse.size()) throw StructureError("refinement: image index out of range");
      if (!fine.member(j).subset_of(coarse.member(map[j])))
        throw StructureError("refinement: " + fine.name(j) + " is not contained in " +
                             coarse.name(map[j]));
    }
  }
};

// (φ*f)_ij := f_{φi,φj} restricted to V_ij.
template <class E>
Cochain1<E> refine(const RefinementMap& phi, const Cochain1<E>& f) {
  if (!(f.cover == phi.coarse)) throw StructureError("refine: cochain is not over the coarse cover");
  check_cochain_shape(f);
  Cochain1<E> out{phi.fine, {}};
  for (std::size_t i = 0; i < phi.fine.size(); ++i)
    for (std::size_t j = 0; j < phi.fine.size(); ++j)
      out.sections.push_back(restrict_section(f(phi.map[i], phi.map[j]), phi.fine.overlap(i, j)));
  return out;
}

// h_j := f_{φj,ψj}|V_j, so that ψ*f = h□(φ*f).
template <Group G>
Cochain0<typename G::Element> refinement_choice_witness(const G& g, const RefinementMap& phi,
                                                        const RefinementMap& psi,
                                                        const Cochain1<typename G::Element>& f,
                                                        double tol = 0.0) {
  if (!(phi.fine == psi.fine) || !(phi.coarse == psi.coarse))
    throw StructureError("choice witness: refinements between different covers");
  Cochain0<typename G::Element> h{phi.fine, {}};
  for (std::size_t j = 0; j < phi.fine.size(); ++j)
    h.sections.push_back(restrict_section(f(phi.map[j], psi.map[j]), phi.fine.member(j)));
  double d = cochain_distance(g, refine(psi, f), box_action(g, h, refine(phi, f)));
  if (d > tol)
    throw VerificationError("choice witness: psi*f != h box phi*f (distance " + std::to_string(d) +
                            "); input is not a cocycle");
  return h;
}

// Given φ*g = h□(φ*f), returns l with g = l□f:
// l_k on U_k ∩ V_j is f_{k,φj} h_j g_{φj,k}.
template <Group G>
Cochain0<typename G::Element> refinement_injectivity_witness(
    const G& g, const RefinementMap& phi, const Cochain1<typename G::Element>& f,
    const Cochain1<typename G::Element>& gg, const Cochain0<typename G::Element>& h,
    double tol = 0.0) {
  using E = typename G::Element;
  if (!(f.cover == phi.coarse) || !(gg.cover == phi.coarse) || !(h.cover == phi.fine))
    throw StructureError("injectivity witness: covers do not match the refinement");
  double pre = cochain_distance(g, refine(phi, gg), box_action(g, h, refine(phi, f)));
  if (pre > tol)
    throw VerificationError("injectivity witness: precondition phi*g = h box phi*f fails (distance " +
                            std::to_string(pre) + ")");
  const Cover& U = phi.coarse;
  const Cover& V = phi.fine;
  Cochain0<E> l{U, {}};
  for (std::size_t k = 0; k < U.size(); ++k) {
    std::vector<E> vals;
    for (PointId p : U.member(k)) {
      bool found = false;
      E first{};
      for (std::size_t j = 0; j < V.size(); ++j) {
        if (!V.member(j).contains(p)) continue;
        const std::size_t m = phi.map[j];
        E cand = g.multiply(g.multiply(f(k, m).at(p), h[j].at(p)), gg(m, k).at(p));
        if (!found) {
          first = cand;
          found = true;
        } else if (g.distance(first, cand) > tol) {
          throw VerificationError("injectivity witness: l_" + U.name(k) + " not well defined at point " +
                                  std::to_string(p));
        }
      }
      if (!found)
        throw StructureError("injectivity witness: point " + std::to_string(p) +
                             " not covered by the fine cover");
      vals.push_back(first);
    }
    l.sections.emplace_back(U.member(k), std::move(vals));
  }
  double post = cochain_distance(g, gg, box_action(g, l, f));
  if (post > tol)
    throw VerificationError("injectivity witness: g != l box f (distance " + std::to_string(post) + ")");
  return l;
}

template <class E>
struct GluedCocycle {
  Cochain1<E> g;        // over the coarse cover
  Cochain0<E> witness;  // over the fine cover, φ*g = witness□f
};

// locals[n] is a 0-cochain over V|_{U_n} with f_ij = h_in⁻¹ h_jn on V_ij ∩ U_n.
// g_mn := h_jm h_jn⁻¹ on U_mn ∩ V_j (lowest j evaluated, the rest asserted
// equal); witness h_k := h_{k,φk}⁻¹.
template <Group G>
GluedCocycle<typename G::Element> glue_from_local_splittings(
    const G& g, const RefinementMap& phi, const Cochain1<typename G::Element>& f,
    const std::vector<Cochain0<typename G::Element>>& locals, double tol = 0.0) {
  using E = typename G::Element;
  const Cover& U = phi.coarse;
  const Cover& V = phi.fine;
  if (!(f.cover == V)) throw StructureError("glue: cochain is not over the fine cover");
  if (locals.size() != U.size()) throw StructureError("glue: one local splitting per coarse member");
  for (std::size_t n = 0; n < U.size(); ++n) {
    if (!(locals[n].cover == V.restricted(U.member(n))))
      throw StructureError("glue: local splitting " + U.name(n) + " is not over V|U_n");
    for (std::size_t i = 0; i < V.size(); ++i)
      for (std::size_t j = 0; j < V.size(); ++j)
        for (PointId p : intersect(V.overlap(i, j), U.member(n))) {
          E rhs = g.multiply(g.invert(locals[n][i].at(p)), locals[n][j].at(p));
          if (g.distance(f(i, j).at(p), rhs) > tol)
            throw VerificationError("glue: local splitting " + U.name(n) + " does not split f at point " +
                                    std::to_string(p));
        }
  }
  GluedCocycle<E> out{Cochain1<E>{U, {}}, Cochain0<E>{V, {}}};
  for (std::size_t m = 0; m < U.size(); ++m) {
    for (std::size_t n = 0; n < U.size(); ++n) {
      Region dom = U.overlap(m, n);
      std::vector<E> vals;
      for (PointId p : dom) {
        bool found = false;
        E first{};
        for (std::size_t j = 0; j < V.size(); ++j) {
          if (!V.member(j).contains(p)) continue;
          E cand = g.multiply(locals[m][j].at(p), g.invert(locals[n][j].at(p)));
          if (!found) {
            first = cand;
            found = true;
          } else if (g.distance(first, cand) > tol) {
            throw VerificationError("glue: g_" + U.name(m) + U.name(n) +
                                    " depends on the choice of j at point " + std::to_string(p));
          }
        }
        if (!found)
          throw StructureError("glue: point " + std::to_string(p) + " not covered by the fine cover");
        vals.push_back(first);
      }
      out.g.sections.emplace_back(dom, std::move(vals));
    }
  }
  for (std::size_t k = 0; k < V.size(); ++k) {
    std::vector<E> vals;
    for (PointId p : V.member(k)) vals.push_back(g.invert(locals[phi.map[k]][k].at(p)));
    out.witness.sections.emplace_back(V.member(k), std::move(vals));
  }
  auto report = is_cocycle(g, out.g, tol);
  if (!report.cocycle) throw VerificationError("glue: result is not a cocycle: " + describe(report, U));
  double d = cochain_distance(g, refine(phi, out.g), box_action(g, out.witness, f));
  if (d > tol)
    throw VerificationError("glue: phi*g != witness box f (distance " + std::to_string(d) + ")");
  return out;
}

}  // namespace garbe
