#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "config.hpp"
#include "garbe/analytic/sampled_field.hpp"
#include "garbe/continuous/cloud_json.hpp"
#include "garbe/continuous/factorization.hpp"

namespace garbe::cli {

// Functions of z named in configs:
//   {"kind": "identity", "dim": n}
//   {"kind": "constant", "value": M}
//   {"kind": "exp", "M": M, "C": C}           exp(zM)·C, C defaults to 1
//   {"kind": "polynomial", "coeffs": [M0, M1, ...]}
//   {"kind": "near_identity", "N": N, "M": M, "scale": s}   1 + s(N + zM)
//   {"kind": "zbar"}                          conj(z), not holomorphic
struct FunctionSpec {
  HoloMap f;
  int dim = 1;
  bool holomorphic = true;
};

FunctionSpec parse_function(const json& j);

// A cloud plus its optional document (for named subsets, maps and paths).
struct CloudSetup {
  MetricPointCloud cloud;
  std::optional<CloudDocument> doc;
};

// {"file": path} | {"random": {"n", "width", "height"}} | {"coordinates": [[x, y], ...]}
CloudSetup parse_cloud(const json& j, const Config& cfg, std::mt19937_64& rng);

// Doc subset name, id list, or {"x": [lo, hi], "y": [lo, hi]} box on coordinates.
Region parse_subset(const json& j, const CloudSetup& c);

struct CloudMap {
  Section<Matrix> f;
  GroupPath path;
};

// A map on `dom` with a path from 1 to it:
//   {"kind": "identity", "dim": n}
//   {"kind": "noncommuting", "scale": s}      exp(tsA(x)) exp(tsB(x)), 2×2
//   {"kind": "exp_linear", "A0": M, "A1": M, "A2": M}   exp(t(A0 + x0·A1 + x1·A2))
//   {"kind": "document", "map": name, "path": name}
CloudMap parse_cloud_map(const json& j, const CloudSetup& c, const Region& dom);

// The 2×2 noncommuting path value used by the "noncommuting" kind.
Matrix noncommuting_value(const std::vector<double>& x, double t, double scale = 1.0);

}  // namespace garbe::cli
