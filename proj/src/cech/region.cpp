#include "garbe/cech/region.hpp"

#include <algorithm>
#include <iterator>

namespace garbe {

Region::Region(std::vector<PointId> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool Region::contains(PointId p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

std::optional<std::size_t> Region::index_of(PointId p) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

bool Region::subset_of(const Region& other) const {
  return std::includes(other.points_.begin(), other.points_.end(), points_.begin(),
                       points_.end());
}

Region intersect(const Region& a, const Region& b) {
  std::vector<PointId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Region(std::move(out));
}

Region unite(const Region& a, const Region& b) {
  std::vector<PointId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Region(std::move(out));
}

Region subtract(const Region& a, const Region& b) {
  std::vector<PointId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Region(std::move(out));
}

Cover::Cover(std::vector<Region> members, std::vector<std::string> names)
    : members_(std::move(members)), names_(std::move(names)) {
  if (names_.size() != members_.size()) {
    names_.clear();
    for (std::size_t i = 0; i < members_.size(); ++i)
      names_.push_back("U" + std::to_string(i + 1));
  }
}

Region Cover::ambient() const {
  Region out;
  for (const auto& m : members_) out = unite(out, m);
  return out;
}

Region Cover::overlap(std::size_t i, std::size_t j) const {
  return intersect(members_[i], members_[j]);
}

Cover Cover::restricted(const Region& y) const {
  std::vector<Region> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(intersect(m, y));
  return Cover(std::move(out), names_);
}

}  // namespace garbe
