#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <string>

#include "config.hpp"
#include "report.hpp"

namespace garbe::cli {

struct Context {
  const Config& cfg;
  std::uint64_t seed = 1;
  std::mt19937_64 rng;
  Report& report;
  std::ostream& err;
};

// Runs one operation; failed checks land in the report, hard failures throw.
void run_operation(const std::string& op, Context& ctx);

}  // namespace garbe::cli
