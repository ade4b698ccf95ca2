#pragma once

#include <map>
#include <string>
#include <vector>

#include "garbe/continuous/factorization.hpp"

namespace garbe {

// JSON document:
//   {"points": [ids],
//    "metric": [[d_ij]] | {"coordinates": [[x, ...]], "euclidean": true},
//    "subsets": {name: [ids]},
//    "maps": {name: {id: matrix}},
//    "paths": {name: [[t, map-name], ...]}}
// Matrices are row-major lists of [re, im] pairs or reals; a bare number is 1×1.
struct CloudDocument {
  MetricPointCloud cloud;
  std::map<std::string, Region> subsets;
  std::map<std::string, Section<Matrix>> maps;
  std::map<std::string, GroupPath> paths;
  int dim = 0;  // common matrix size of all maps, 0 if none

  const Region& subset(const std::string& name) const;
  const Section<Matrix>& map(const std::string& name) const;
  const GroupPath& path(const std::string& name) const;
};

CloudDocument parse_cloud_document(const std::string& text);
CloudDocument read_cloud_file(const std::string& path);
// Writes points, metric, subsets and maps; paths are not written back.
std::string serialize_cloud_document(const CloudDocument& doc);

}  // namespace garbe
