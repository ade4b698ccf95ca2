#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "garbe/cech/splitting.hpp"
#include "garbe/continuous/dugundji.hpp"

namespace garbe {

// t ↦ value of one point's path, t ∈ [0, 1], from 1 to the point's value.
using PointPath = std::shared_ptr<const std::function<Matrix(double)>>;

PointPath make_point_path(std::function<Matrix(double)> f);
PointPath constant_path(const Matrix& c);

// Group value that carries a path to 1; products and inverses act on paths
// pointwise, so cochains built by the chain induction keep their paths.
struct PathedMatrix {
  Matrix value;
  PointPath path;
};

class PathedMatrixGroup {
 public:
  using Element = PathedMatrix;
  static constexpr bool exact = false;

  explicit PathedMatrixGroup(int dim) : dim_(dim) {}
  int dim() const { return dim_; }

  Element identity() const;
  Element multiply(const Element& a, const Element& b) const;
  Element invert(const Element& a) const;
  double distance(const Element& a, const Element& b) const { return (a.value - b.value).norm(); }

 private:
  int dim_;
};

// Homotopy t ↦ f_t on a point set. Knots are the coarse partition that step
// refinement starts from.
class GroupPath {
 public:
  GroupPath() = default;
  GroupPath(Region domain, std::vector<PointPath> paths, std::vector<double> knots = {0.0, 1.0});

  // Piecewise linear between the samples; t must run 0 = t_0 < ... < t_m = 1.
  static GroupPath from_samples(const std::vector<double>& t, const std::vector<Section<Matrix>>& values);
  static GroupPath from_function(const Region& domain, const std::function<Matrix(PointId, double)>& f,
                                 std::vector<double> knots = {0.0, 1.0});
  static GroupPath of(const Section<PathedMatrix>& s);

  const Region& domain() const { return domain_; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<PointPath>& paths() const { return paths_; }

  Matrix at(PointId p, double t) const;
  Section<Matrix> at(double t) const;
  GroupPath restricted(const Region& sub) const;
  GroupPath inverse() const;  // t ↦ f_t⁻¹
  // max over consecutive knots and points of ‖f_{t_k} f_{t_{k−1}}⁻¹ − 1‖
  double max_knot_step() const;

 private:
  Region domain_;
  std::vector<PointPath> paths_;
  std::vector<double> knots_{0.0, 1.0};
};

Section<PathedMatrix> attach_path(const Section<Matrix>& f, const GroupPath& path);
Section<Matrix> values_of(const Section<PathedMatrix>& s);

struct ScalarPair {
  Section<double> f1, f2;
  Section<double> chi;     // partition function on U1 ∪ U2
  double base = 1.0;       // f(x_0) when f < 0, else 1
  double residual = 0.0;   // max |f − f2 / f1| on U1 ∩ U2
};

// Real nonvanishing f on U1 ∩ U2: g = ln f, f1 = exp(−χg), f2 = exp((1 − χ)g).
ScalarPair scalar_real_factorize(const MetricPointCloud& cloud, const Region& u1, const Region& u2,
                                 const Section<double>& f);

struct NearIdentityCloudOptions {
  double delta = 0.5;                   // ‖h_j‖ ≤ δ
  double min_step = 1.0 / (1 << 20);
  double endpoint_tol = 1e-10;          // path(0) = 1 and path(1) = f, relative
};

struct CloudFactors {
  std::vector<Section<Matrix>> factors;  // 1 + h_j, leftmost first: f = F_1 F_2 ⋯ F_m
  std::vector<double> t;                 // accepted partition 0 = t_0 < ... < t_m = 1
  double max_h = 0.0;
  double product_error = 0.0;            // max ‖F_1⋯F_m − f‖
};

// Telescopes f_{t_k} f_{t_{k−1}}⁻¹ along the path, bisecting until each step
// is within δ of 1. Steps with h = 0 are dropped.
CloudFactors extract_near_identity_factors(const Section<Matrix>& f, const GroupPath& path,
                                           const NearIdentityCloudOptions& opt = {});

struct CompactExtension {
  Section<Matrix> ftilde;               // on X, equal to f on Ω
  GroupPath path;                       // t ↦ (1 + tĥ_1)⋯(1 + tĥ_m)
  std::vector<Section<Matrix>> hhat;    // ĥ_j on X
  CloudFactors factors;
  DugundjiCover cover;
  double restriction_error = 0.0;       // max over Ω of ‖f̃ − f‖
  double product_error = 0.0;           // max over Ω of ‖∏(1 + ĥ_j) − f‖
  double max_hhat = 0.0;
  double max_inverse_residual = 0.0;
};

CompactExtension extend_from_compact(const MetricPointCloud& cloud, const Region& x, const Section<Matrix>& f,
                                     const GroupPath& path, const NearIdentityCloudOptions& opt = {});

struct ContinuousPairOptions {
  NearIdentityCloudOptions factors{};
  double inverse_tol = 1e-8;
};

struct ContinuousPair {
  Section<Matrix> f1, f2;
  GroupPath path1, path2;
  Section<double> chi;  // on U1 ∪ U2
  Region w1, w2, seam;  // χ ≤ 3/4, χ ≥ 1/4, and their intersection
  int factor_count = 0;
  double residual = 0.0;  // max over U1 ∩ U2 of ‖f − f1⁻¹f2‖
  double max_inverse_residual = 0.0;
};

ContinuousPair continuous_factor_pair(const MetricPointCloud& cloud, const Region& u1, const Region& u2,
                                      const Section<Matrix>& f, const GroupPath& path,
                                      const ContinuousPairOptions& opt = {});

PairSplitter<PathedMatrix> continuous_pair_splitter(const MetricPointCloud& cloud,
                                                    const ContinuousPairOptions& opt = {});

struct ContinuousSplit {
  Cochain0<Matrix> g;
  double residual = 0.0;
  int splitter_calls = 0;
};

// Chain (U_1, ..., U_n) in cover order; residual ≤ tol·(n − 1).
ContinuousSplit split_continuous_cocycle(const MetricPointCloud& cloud, const Cochain1<PathedMatrix>& f,
                                         double tol, const ContinuousPairOptions& opt = {});

}  // namespace garbe
