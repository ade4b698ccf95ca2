#pragma once

#include "garbe/analytic/additive_split.hpp"
#include "garbe/analytic/graves.hpp"

namespace garbe {

struct FieldPair {
  SampledField g1;  // over R̄1
  SampledField g2;  // over R̄2
};

FieldPair operator+(const FieldPair& a, const FieldPair& b);

struct MultiplicativeOptions {
  GravesOptions graves{};
  // Accept ‖g‖ below eps0 outright; above it the first two defects must
  // certify a ratio below 0.9.
  double eps0 = 0.1;
  AdditiveOptions additive{};
};

struct MultiplicativeSplit {
  SampledField f1;  // 1 + g1 over R̄1
  SampledField f2;  // 1 + g2 over R̄2
  double residual = 0.0;  // max ‖f − (1 + g1)(1 + g2)‖ on overlap nodes
  double norm_g = 0.0, norm_g1 = 0.0, norm_g2 = 0.0;
  GravesReport graves;
};

// f = 1 + g near the identity on the closed overlap: (1 + g1)(1 + g2) = f,
// by the Graves iteration for Θ(g1, g2) = g1 + g2 + g1g2 with the additive
// split as right inverse.
MultiplicativeSplit multiplicative_split_near_identity(const SampledField& f, const PairGeometry& geo,
                                                       const MultiplicativeOptions& opt = {});

}  // namespace garbe
