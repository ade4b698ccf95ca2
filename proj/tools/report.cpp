#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "garbe/error.hpp"

namespace garbe::cli {

namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot write " + p.string());
  out << content;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Report::info(const std::string& stage, const std::string& quantity, double value) {
  rows_.push_back({stage, quantity, value, "", -1, ""});
}

bool Report::le(const std::string& stage, const std::string& quantity, double value, double bound,
                const std::string& check) {
  bool ok = value <= bound;
  rows_.push_back({stage, quantity, value, "<= " + format_number(bound), ok ? 1 : 0, check});
  return ok;
}

bool Report::lt(const std::string& stage, const std::string& quantity, double value, double bound,
                const std::string& check) {
  bool ok = value < bound;
  rows_.push_back({stage, quantity, value, "< " + format_number(bound), ok ? 1 : 0, check});
  return ok;
}

bool Report::ge(const std::string& stage, const std::string& quantity, double value, double bound,
                const std::string& check) {
  bool ok = value >= bound;
  rows_.push_back({stage, quantity, value, ">= " + format_number(bound), ok ? 1 : 0, check});
  return ok;
}

bool Report::within(const std::string& stage, const std::string& quantity, double value, double lo, double hi,
                    const std::string& check) {
  bool ok = value >= lo && value <= hi;
  rows_.push_back(
      {stage, quantity, value, "in [" + format_number(lo) + " " + format_number(hi) + "]", ok ? 1 : 0, check});
  return ok;
}

bool Report::verdict(const std::string& stage, const std::string& quantity, double value, const std::string& bound,
                     bool ok, const std::string& check) {
  rows_.push_back({stage, quantity, value, bound, ok ? 1 : 0, check});
  return ok;
}

void Report::history(const std::string& name, std::vector<double> values) { histories_[name] = std::move(values); }

void Report::artifact(const std::string& file, std::string content) { artifacts_[file] = std::move(content); }

bool Report::any_failed() const {
  return std::any_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.pass == 0; });
}

std::string Report::csv() const {
  std::string out = "stage,quantity,value,bound,pass\n";
  for (const auto& r : rows_) {
    out += csv_field(r.stage) + "," + csv_field(r.quantity) + "," + format_number(r.value) + "," +
           csv_field(r.bound) + "," + (r.pass < 0 ? std::string() : std::to_string(r.pass)) + "\n";
  }
  return out;
}

void Report::write(const std::string& dir, const json& meta) const {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir + ": " + ec.message());
  write_file(fs::path(dir) / "report.csv", csv());

  json j = meta;
  json rows = json::array();
  for (const auto& r : rows_) {
    json row = {{"stage", r.stage}, {"quantity", r.quantity}, {"value", r.value}};
    if (!std::isfinite(r.value)) row["value"] = format_number(r.value);
    if (!r.bound.empty()) row["bound"] = r.bound;
    if (r.pass >= 0) row["pass"] = r.pass == 1;
    if (!r.check.empty()) row["check"] = r.check;
    rows.push_back(row);
  }
  j["rows"] = rows;
  json hist = json::object();
  for (const auto& [name, v] : histories_) {
    hist[name] = v;
    write_file(fs::path(dir) / (name + ".svg"), svg_plot(name, v));
  }
  j["histories"] = hist;
  for (const auto& [file, content] : artifacts_) write_file(fs::path(dir) / file, content);
  write_file(fs::path(dir) / "report.json", j.dump(2) + "\n");
}

std::string svg_plot(const std::string& title, const std::vector<double>& values) {
  const double W = 480, H = 320, L = 60, R = 20, T = 30, B = 40;
  bool logy = !values.empty() && std::all_of(values.begin(), values.end(), [](double v) { return v > 0; });
  std::vector<double> y;
  for (double v : values) y.push_back(logy ? std::log10(v) : v);
  double lo = y.empty() ? 0.0 : *std::min_element(y.begin(), y.end());
  double hi = y.empty() ? 1.0 : *std::max_element(y.begin(), y.end());
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double n = std::max<double>(1.0, static_cast<double>(values.size()) - 1);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << L << "\" y=\"20\" font-size=\"14\">" << title << (logy ? " (log10)" : "") << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", hi);
  os << "<text x=\"4\" y=\"" << T + 4 << "\" font-size=\"11\">" << buf << "</text>\n";
  std::snprintf(buf, sizeof buf, "%.3g", lo);
  os << "<text x=\"4\" y=\"" << H - B << "\" font-size=\"11\">" << buf << "</text>\n";
  os << "<text x=\"" << W - R - 20 << "\" y=\"" << H - 10 << "\" font-size=\"11\">" << values.size() - (values.empty() ? 0 : 1)
     << "</text>\n";
  os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t k = 0; k < y.size(); ++k) {
    double px = L + (W - L - R) * static_cast<double>(k) / n;
    double py = (H - B) - (H - B - T) * (y[k] - lo) / (hi - lo);
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px, py);
    os << buf;
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace garbe::cli
