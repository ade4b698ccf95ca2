#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace garbe {

using PointId = int;

// Finite point set, kept sorted and duplicate-free.
class Region {
 public:
  Region() = default;
  explicit Region(std::vector<PointId> points);

  const std::vector<PointId>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool contains(PointId p) const;
  std::optional<std::size_t> index_of(PointId p) const;
  bool subset_of(const Region& other) const;

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  friend bool operator==(const Region&, const Region&) = default;

 private:
  std::vector<PointId> points_;
};

Region intersect(const Region& a, const Region& b);
Region unite(const Region& a, const Region& b);
Region subtract(const Region& a, const Region& b);

class Cover {
 public:
  Cover() = default;
  explicit Cover(std::vector<Region> members, std::vector<std::string> names = {});

  std::size_t size() const { return members_.size(); }
  const Region& member(std::size_t i) const { return members_[i]; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<Region>& members() const { return members_; }
  Region ambient() const;
  Region overlap(std::size_t i, std::size_t j) const;
  // The cover U|_Y = (U_i ∩ Y).
  Cover restricted(const Region& y) const;

  friend bool operator==(const Cover& a, const Cover& b) { return a.members_ == b.members_; }

 private:
  std::vector<Region> members_;
  std::vector<std::string> names_;
};

}  // namespace garbe
