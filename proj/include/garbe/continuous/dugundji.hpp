#pragma once

#include <utility>
#include <vector>

#include "garbe/algebra/matrix.hpp"
#include "garbe/continuous/cloud.hpp"

namespace garbe {

// One open ball V_λ = U(x_λ) of radius ¼·dist(x_λ, Ω) per exterior point x_λ.
// On a finite cloud this family is already locally finite, so it serves as
// its own refinement.
struct DugundjiCover {
  Region space;                    // X
  Region omega;                    // Ω ⊆ X
  Region exterior;                 // X ∖ Ω; λ indexes these points
  std::vector<double> radius;      // ϱ_λ
  std::vector<Region> members;     // V_λ
  std::vector<PointId> anchors;    // ω_λ: nearest Ω point, lowest id on ties
  std::vector<double> anchor_ratio;  // dist(V_λ, ω_λ) / dist(V_λ, Ω), asserted < 2
  // Per exterior point: α(x) and the nonzero weights (λ, dist(x, X∖V_λ)/α(x)).
  std::vector<double> alpha;
  std::vector<std::vector<std::pair<std::size_t, double>>> weights;

  double max_weight_sum_error() const;
  double min_weight() const;
};

DugundjiCover dugundji_cover(const MetricPointCloud& cloud, const Region& x, const Region& omega);

// ĥ = h on Ω (copied), Σ_λ w_λ(x) h(ω_λ) outside.
Section<Matrix> dugundji_apply(const DugundjiCover& cover, const Section<Matrix>& h);

struct DugundjiExtension {
  Section<Matrix> value;
  DugundjiCover cover;
};

DugundjiExtension dugundji_extend(const MetricPointCloud& cloud, const Region& x, const Section<Matrix>& h);

}  // namespace garbe
