#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "garbe/cech/cochain.hpp"

namespace garbe {

template <class E>
struct SplitPair {
  Section<E> first;   // over A
  Section<E> second;  // over B
};

// split(f over A∩B, A, B) returns (f1, f2) with f = f1⁻¹ f2 on A∩B.
template <class E>
using PairSplitter = std::function<SplitPair<E>(const Section<E>&, const Region&, const Region&)>;

// Splitter for the sheaf of all G-valued functions: f1 := 1 on A, f2 := f on
// A∩B and 1 on B∖A.
template <Group G>
PairSplitter<typename G::Element> function_sheaf_splitter(const G& g) {
  using E = typename G::Element;
  return [g](const Section<E>& f, const Region& a, const Region& b) {
    if (!(f.domain == intersect(a, b))) throw StructureError("splitter: section not over A∩B");
    SplitPair<E> out{Section<E>::constant(a, g.identity()), Section<E>::constant(b, g.identity())};
    for (std::size_t q = 0; q < f.domain.size(); ++q) out.second.at(f.domain.points()[q]) = f.values[q];
    return out;
  };
}

struct SplitOptions {
  // Per-stage tolerance for metric groups; exact groups always use 0.
  double tol = 0.0;
};

template <class E>
struct SplitResult {
  Cochain0<E> g;
  double residual = 0.0;  // max distance(f_ij, g_i⁻¹ g_j)
  int splitter_calls = 0;
};

namespace detail {

template <Group G>
double stage_tol(const SplitOptions& opt) {
  return G::exact ? 0.0 : opt.tol;
}

template <Group G>
void check_pair(const G& g, const Section<typename G::Element>& f,
                const SplitPair<typename G::Element>& s, const Region& a, const Region& b, double tol,
                const std::string& stage) {
  if (!(s.first.domain == a) || !(s.second.domain == b))
    throw StructureError(stage + ": splitter returned sections over the wrong regions");
  for (std::size_t q = 0; q < f.domain.size(); ++q) {
    PointId p = f.domain.points()[q];
    double d = g.distance(f.values[q], g.multiply(g.invert(s.first.at(p)), s.second.at(p)));
    if (d > tol)
      throw VerificationError(stage + ": splitter output violates f = f1^-1 f2 at point " +
                              std::to_string(p) + " (distance " + std::to_string(d) + ")");
  }
}

// Chain induction over the members listed in `order`; returns sections for
// those members in the same order.
template <Group G>
std::vector<Section<typename G::Element>> chain_split_members(
    const G& g, const Cochain1<typename G::Element>& f, const std::vector<std::size_t>& order,
    const PairSplitter<typename G::Element>& splitter, const SplitOptions& opt, int& calls,
    const std::string& label) {
  using E = typename G::Element;
  const Cover& cover = f.cover;
  const double tol = stage_tol<G>(opt);
  std::vector<Section<E>> h;
  h.push_back(Section<E>::constant(cover.member(order[0]), g.identity()));
  Region v = cover.member(order[0]);
  for (std::size_t s = 1; s < order.size(); ++s) {
    const std::size_t n = order[s];
    const std::string stage = label + " stage " + std::to_string(s);
    Region w = intersect(v, cover.member(n));
    // g(x) := h_i(x) f_in(x); independent of i up to the accumulated tolerance.
    std::vector<E> gw;
    for (PointId p : w) {
      bool found = false;
      E first{};
      for (std::size_t a = 0; a < s; ++a) {
        const std::size_t i = order[a];
        if (!cover.member(i).contains(p)) continue;
        E cand = g.multiply(h[a].at(p), f(i, n).at(p));
        if (!found) {
          first = cand;
          found = true;
        } else if (g.distance(first, cand) > tol * static_cast<double>(s)) {
          throw VerificationError(stage + ": h_i f_in depends on i at point " + std::to_string(p));
        }
      }
      gw.push_back(first);
    }
    Section<E> gsec(w, std::move(gw));
    SplitPair<E> pair;
    try {
      pair = splitter(gsec, v, cover.member(n));
    } catch (const Error&) {
      rethrow_with_prefix(stage);
    }
    ++calls;
    check_pair(g, gsec, pair, v, cover.member(n), tol, stage);
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t q = 0; q < h[a].domain.size(); ++q)
        h[a].values[q] = g.multiply(pair.first.at(h[a].domain.points()[q]), h[a].values[q]);
    h.push_back(std::move(pair.second));
    v = unite(v, cover.member(n));
  }
  return h;
}

}  // namespace detail

// Splits a cocycle over the chain (U_1, ..., U_n) given by the cover order.
template <Group G>
SplitResult<typename G::Element> chain_split(const G& g, const Cochain1<typename G::Element>& f,
                                             const PairSplitter<typename G::Element>& splitter,
                                             const SplitOptions& opt = {}) {
  using E = typename G::Element;
  check_cochain_shape(f);
  const std::size_t n = f.cover.size();
  if (n == 0) throw StructureError("chain_split: empty chain");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  SplitResult<E> out;
  auto sections = detail::chain_split_members(g, f, order, splitter, opt, out.splitter_calls, "chain_split");
  out.g = Cochain0<E>{f.cover, std::move(sections)};
  out.residual = split_residual(g, f, out.g);
  double allowed = detail::stage_tol<G>(opt) * static_cast<double>(std::max<std::size_t>(1, n - 1));
  if (out.residual > allowed)
    throw VerificationError("chain_split: residual " + std::to_string(out.residual) +
                            " exceeds tolerance " + std::to_string(allowed));
  return out;
}

// Field of chains: `chains` partitions the cover indices; chain m lists its
// members in order. The unions U^1, ..., U^m must form a chain themselves.
template <Group G>
SplitResult<typename G::Element> field_split(const G& g, const Cochain1<typename G::Element>& f,
                                             const std::vector<std::vector<std::size_t>>& chains,
                                             const PairSplitter<typename G::Element>& splitter,
                                             const SplitOptions& opt = {}) {
  using E = typename G::Element;
  check_cochain_shape(f);
  const Cover& cover = f.cover;
  const std::size_t n = cover.size();
  std::vector<int> seen(n, 0);
  for (const auto& c : chains) {
    if (c.empty()) throw StructureError("field_split: empty chain in field");
    for (std::size_t i : c) {
      if (i >= n) throw StructureError("field_split: chain index out of range");
      seen[i]++;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (seen[i] != 1)
      throw StructureError("field_split: chains must partition the cover (member " + cover.name(i) + ")");
  if (chains.size() == 1) {
    // Reorder the cover along the single chain and delegate.
    SplitResult<E> out;
    auto sections = detail::chain_split_members(g, f, chains[0], splitter, opt, out.splitter_calls,
                                                "field_split chain 1");
    out.g = Cochain0<E>{cover, std::vector<Section<E>>(n)};
    for (std::size_t a = 0; a < chains[0].size(); ++a) out.g[chains[0][a]] = std::move(sections[a]);
    out.residual = split_residual(g, f, out.g);
    double allowed = detail::stage_tol<G>(opt) * static_cast<double>(std::max<std::size_t>(1, n - 1));
    if (out.residual > allowed)
      throw VerificationError("field_split: residual " + std::to_string(out.residual) +
                              " exceeds tolerance " + std::to_string(allowed));
    return out;
  }

  const double tol = detail::stage_tol<G>(opt);
  SplitResult<E> out;
  std::vector<Section<E>> g_all(n);
  std::vector<std::size_t> done;  // members already split (the V part)
  Region v;
  for (std::size_t m = 0; m < chains.size(); ++m) {
    const std::string label = "field_split chain " + std::to_string(m + 1);
    auto hl = detail::chain_split_members(g, f, chains[m], splitter, opt, out.splitter_calls, label);
    Region u;
    for (std::size_t i : chains[m]) u = unite(u, cover.member(i));
    if (m == 0) {
      for (std::size_t a = 0; a < chains[0].size(); ++a) g_all[chains[0][a]] = std::move(hl[a]);
      done = chains[0];
      v = u;
      continue;
    }
    const std::string stage = "field_split union stage " + std::to_string(m);
    Region w = intersect(v, u);
    // Cross term h := h_k f_kl h_l⁻¹ on V_k ∩ U_l, independent of (k, l).
    std::vector<E> hw;
    for (PointId p : w) {
      bool found = false;
      E first{};
      for (std::size_t k : done) {
        if (!cover.member(k).contains(p)) continue;
        for (std::size_t b = 0; b < chains[m].size(); ++b) {
          const std::size_t l = chains[m][b];
          if (!cover.member(l).contains(p)) continue;
          E cand = g.multiply(g.multiply(g_all[k].at(p), f(k, l).at(p)), g.invert(hl[b].at(p)));
          if (!found) {
            first = cand;
            found = true;
          } else if (g.distance(first, cand) > tol * static_cast<double>(n)) {
            throw VerificationError(stage + ": cross term depends on (k,l) at point " + std::to_string(p));
          }
        }
      }
      hw.push_back(first);
    }
    Section<E> hsec(w, std::move(hw));
    SplitPair<E> pair;
    try {
      pair = splitter(hsec, v, u);
    } catch (const Error&) {
      rethrow_with_prefix(stage);
    }
    ++out.splitter_calls;
    detail::check_pair(g, hsec, pair, v, u, tol, stage);
    for (std::size_t k : done)
      for (std::size_t q = 0; q < g_all[k].domain.size(); ++q)
        g_all[k].values[q] = g.multiply(pair.first.at(g_all[k].domain.points()[q]), g_all[k].values[q]);
    for (std::size_t b = 0; b < chains[m].size(); ++b) {
      const std::size_t l = chains[m][b];
      for (std::size_t q = 0; q < hl[b].domain.size(); ++q)
        hl[b].values[q] = g.multiply(pair.second.at(hl[b].domain.points()[q]), hl[b].values[q]);
      g_all[l] = std::move(hl[b]);
      done.push_back(l);
    }
    v = unite(v, u);
  }
  out.g = Cochain0<E>{cover, std::move(g_all)};
  out.residual = split_residual(g, f, out.g);
  double allowed = tol * static_cast<double>(std::max(1, out.splitter_calls));
  if (out.residual > allowed)
    throw VerificationError("field_split: residual " + std::to_string(out.residual) +
                            " exceeds tolerance " + std::to_string(allowed));
  return out;
}

}  // namespace garbe
