#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "config.hpp"

namespace garbe::cli {

struct Row {
  std::string stage;
  std::string quantity;
  double value = 0.0;
  std::string bound;  // empty for diagnostics
  int pass = -1;      // -1 no check, 0 fail, 1 pass
  std::string check;  // the inequality being asserted, for report.json
};

std::string format_number(double v);

class Report {
 public:
  void info(const std::string& stage, const std::string& quantity, double value);
  // value ≤ bound (resp. <, ≥, within [lo, hi]); records pass/fail.
  bool le(const std::string& stage, const std::string& quantity, double value, double bound,
          const std::string& check);
  bool lt(const std::string& stage, const std::string& quantity, double value, double bound,
          const std::string& check);
  bool ge(const std::string& stage, const std::string& quantity, double value, double bound,
          const std::string& check);
  bool within(const std::string& stage, const std::string& quantity, double value, double lo, double hi,
              const std::string& check);

  // Pass/fail decided by the caller, e.g. an exact predicate.
  bool verdict(const std::string& stage, const std::string& quantity, double value, const std::string& bound, bool ok,
               const std::string& check);

  void history(const std::string& name, std::vector<double> values);
  // Extra output file, written next to the CSV.
  void artifact(const std::string& file, std::string content);

  const std::vector<Row>& rows() const { return rows_; }
  bool any_failed() const;
  std::string csv() const;

  // report.csv, report.json, one SVG per history and the artifacts.
  void write(const std::string& dir, const json& meta) const;

 private:
  std::vector<Row> rows_;
  std::map<std::string, std::vector<double>> histories_;
  std::map<std::string, std::string> artifacts_;
};

// Polyline plot of one series against its index; log scale when all
// values are positive.
std::string svg_plot(const std::string& title, const std::vector<double>& values);

// FNV-1a, 64 bit.
std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 1469598103934665603ULL);

}  // namespace garbe::cli
