#pragma once

#include <string>
#include <vector>

#include "garbe/cech/cochain.hpp"

namespace garbe {

// Finite metric space; point ids are 0..size()-1.
class MetricPointCloud {
 public:
  MetricPointCloud() = default;

  // Full distance table; checks symmetry, zero diagonal, positivity off the
  // diagonal and the triangle inequality on every triple (relative slack tol).
  static MetricPointCloud from_matrix(const std::vector<std::vector<double>>& d,
                                      std::vector<std::string> names = {}, double tol = 1e-12);
  // Euclidean distances between coordinate rows; duplicate points are rejected.
  static MetricPointCloud from_coordinates(const std::vector<std::vector<double>>& coords,
                                           std::vector<std::string> names = {});

  std::size_t size() const { return n_; }
  double distance(PointId a, PointId b) const { return d_[static_cast<std::size_t>(a) * n_ + b]; }
  const std::string& name(PointId p) const { return names_[p]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<double>>& coordinates() const { return coords_; }

  Region all() const;
  bool contains(const Region& r) const;  // every id in range

  // Infimum over the (finite) set; +inf for an empty set.
  double dist_to_set(PointId x, const Region& s) const;
  double dist_between(const Region& a, const Region& b) const;
  double diameter(const Region& s) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> coords_;
};

// χ(x) = dist(x, A) / (dist(x, A) + dist(x, B)) on X; exactly 0 on A and 1 on B.
Section<double> urysohn(const MetricPointCloud& cloud, const Region& x, const Region& a, const Region& b);

}  // namespace garbe
