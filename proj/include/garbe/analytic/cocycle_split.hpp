#pragma once

#include <vector>

#include "garbe/analytic/factor_pair.hpp"
#include "garbe/cech/splitting.hpp"

namespace garbe {

// Finite cover of a rectangle by lattice-aligned rectangles; member i is the
// set of master node ids (row-major local indices) in the closed R_i.
struct RectangleCover {
  Grid master;
  std::vector<Rectangle> rects;
  Cover cover;

  static RectangleCover make(const Grid& master, const std::vector<Rectangle>& rects);
  SampledField field_on(const Section<Matrix>& s) const;  // section over a full rectangle of nodes
  Section<Matrix> section_of(const SampledField& f) const;
  Rectangle bounding_rectangle(const Region& r) const;    // throws unless r is all nodes of a rectangle
};

// PairSplitter backed by factor_pair_closed on the sampled overlap data.
PairSplitter<Matrix> rectangle_pair_splitter(const RectangleCover& rc, double eps,
                                             const FactorPairOptions& opt = {});

struct RectangleSplitOptions {
  // Field of chains; empty means one chain in cover order.
  std::vector<std::vector<std::size_t>> chains;
  FactorPairOptions pair{};
};

// Splits f_{ij} = g_i⁻¹g_j with residual ≤ eps·(splitter calls).
SplitResult<Matrix> split_rectangle_cocycle(const RectangleCover& rc, const Cochain1<Matrix>& f, double eps,
                                            const RectangleSplitOptions& opt = {});

// R_n = {z ∈ R : dist(z, ∂R) > 1/(C n)}, n = 1..N.
std::vector<Rectangle> nested_exhaustion(const Rectangle& r, double C, int N);

struct ExhaustionLevel {
  Rectangle rect;
  double budget = 0.0;        // min(2^{−(n+1)}, eps), levels n < N
  double entire_error = 0.0;  // ‖1 − (g_n f_{n,n+1}) g_{n+1}⁻¹‖ on R̄_{n−1}
  double tail_norm = 0.0;     // ‖1 − h_n‖ on R̄_{n−1}
  double tail_bound = 0.0;    // 2^{−n} e^{2^{−n}}
  double residual = 0.0;      // ‖f_{n,n+1} − w_n⁻¹w_{n+1}‖ on R_n nodes
};

struct ExhaustionResult {
  std::vector<SampledField> w;  // w_n on R̄_n, n = 1..N
  std::vector<ExhaustionLevel> levels;
};

// f[n − 1] = f_{n,n+1} on R_n for n = 1..N−1 (N = rects.size()).
ExhaustionResult exhaustion_cocycle_split(const std::vector<Rectangle>& rects, const std::vector<HoloMap>& f,
                                          double cells_per_unit, double eps, const EntireOptions& opt = {});

}  // namespace garbe
