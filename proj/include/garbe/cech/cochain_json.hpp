#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "garbe/cech/cochain.hpp"

namespace garbe {

// JSON document:
//   {"points": [...], "cover": {"U1": [points], ...}, "group": "S3" | "GL2_F5" | "matrix",
//    "cochain1": {"U1,U2": {point: element, ...}, ...}, "cochain0": {...} (optional)}
// Permutations are 1-based one-line arrays, GL(2,F5) elements 2×2 integer
// arrays, complex matrices row-major lists of [re, im] pairs.
struct CochainDocument {
  using Variant1 = std::variant<Cochain1<S3::Element>, Cochain1<GL2F5::Element>, Cochain1<Matrix>>;
  using Variant0 = std::variant<Cochain0<S3::Element>, Cochain0<GL2F5::Element>, Cochain0<Matrix>>;

  std::vector<std::string> point_names;
  Cover cover;
  std::string group;
  int dim = 0;  // matrix size for "matrix"
  Variant1 cochain1;
  std::optional<Variant0> cochain0;
};

CochainDocument parse_cochain_document(const std::string& text);
CochainDocument read_cochain_file(const std::string& path);
std::string serialize_cochain_document(const CochainDocument& doc);

}  // namespace garbe
