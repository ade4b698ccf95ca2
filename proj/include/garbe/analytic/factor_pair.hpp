#pragma once

#include <vector>

#include "garbe/analytic/entire_approx.hpp"
#include "garbe/analytic/multiplicative_split.hpp"

namespace garbe {

struct FactorPairOptions {
  double entire_eps = 1e-3;  // ‖g‖ = ‖1 − f f̃⁻¹‖ handed to the near-identity split
  EntireOptions entire{};
  MultiplicativeOptions mult{};
};

struct FactorPairResult {
  PairGeometry geo;
  SampledField f1;  // over R̄1
  SampledField f2;  // over R̄2
  EntireMap ftilde;
  double residual = 0.0;      // max ‖f − f1⁻¹f2‖ on overlap nodes
  double entire_error = 0.0;  // ‖1 − f f̃⁻¹‖
  MultiplicativeSplit mult;   // the near-identity split of f f̃⁻¹
};

// f = f1⁻¹f2 on the closed overlap via f f̃⁻¹ = 1 + g = (1 + g1)(1 + g2),
// f1 = (1 + g1)⁻¹, f2 = (1 + g2)f̃. BoundViolation if the residual exceeds eps.
FactorPairResult factor_pair_closed(const SampledField& f, const Rectangle& r1, const Rectangle& r2, double eps,
                                    const FactorPairOptions& opt = {});
FactorPairResult factor_pair_closed(const HoloMap& f, const Rectangle& r1, const Rectangle& r2,
                                    double cells_per_unit, double eps, const FactorPairOptions& opt = {});
FactorPairResult factor_pair_closed(const HoloMap& f, const PairGeometry& geo, double eps,
                                    const FactorPairOptions& opt = {});

// Reference splitting that treats values as commuting: log f = L1 + L2
// additively, f1 = exp(−L1), f2 = exp(L2). Exact only in the scalar case.
struct OracleResult {
  SampledField f1, f2;
  double residual = 0.0;
};
OracleResult commutative_oracle(const SampledField& f, const PairGeometry& geo);

struct OpenPairLevel {
  Rectangle r1, r2;
  double factor_residual = 0.0;  // level factorization f = f_{1n}⁻¹ f_{2n}
  double entire_error = 0.0;     // ‖1 − (g_n v_n) g_{n+1}⁻¹‖
  double budget = 0.0;           // min(2^{−(n+1)}, eps)
  double tail_norm = 0.0;        // ‖1 − h_n‖ at level-n union nodes
  double tail_bound = 0.0;       // 2^{−n} e^{2^{−n}}
  double residual = 0.0;         // ‖f − F1⁻¹F2‖ with F_j = h_n⁻¹ g_n f_{jn}
};

struct OpenPairResult {
  SampledField f1, f2;  // at level N − 1
  std::vector<OpenPairLevel> levels;  // n = 1 .. N − 1
};

// Open-pair factorization truncated at depth N ≥ 2: levels R_{jn} shrink R_j
// by (N + 1 − n) cells. Every tail bound is asserted (BoundViolation).
OpenPairResult factor_pair_open(const HoloMap& f, const Rectangle& r1, const Rectangle& r2, int depth,
                                double cells_per_unit, double eps, const FactorPairOptions& opt = {});

}  // namespace garbe
