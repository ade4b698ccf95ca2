#pragma once

#include <string>

#include "garbe/analytic/sampled_field.hpp"

namespace garbe {

// {"rectangle": [a, b, c, d], "nx": cells, "ny": cells, "n": dim,
//  "values": [[re, im], ...]} with nodes row-major (j outer) and each matrix
// row-major inside; nodes·n² pairs in total.
SampledField parse_sampled_field(const std::string& text);
SampledField read_sampled_field(const std::string& path);
std::string serialize_sampled_field(const SampledField& f);

}  // namespace garbe
