#include "config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "garbe/error.hpp"

namespace garbe::cli {

const std::vector<std::string> kOperations = {
    "verify",       "dbar",          "split-add",        "split-mul", "runge",
    "entire-approx", "split-pair-closed", "split-pair-open", "split-cocycle", "exhaustion-split",
    "urysohn",      "dugundji",      "extend",           "cont-split-pair", "cont-split-cocycle"};

bool known_operation(const std::string& op) {
  return std::find(kOperations.begin(), kOperations.end(), op) != kOperations.end();
}

Config Config::empty() { return Config{}; }

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  auto dir = std::filesystem::absolute(path).parent_path().string();
  return parse(ss.str(), dir);
}

Config Config::parse(const std::string& text, const std::string& dir) {
  Config c;
  try {
    c.doc_ = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  if (!c.doc_.is_object()) throw InputError("config: top level must be an object");
  c.text_ = text;
  c.dir_ = dir;
  return c;
}

void Config::allow(std::initializer_list<const char*> allowed) const {
  static const char* common[] = {"operation", "seed", "description", "out"};
  for (const auto& [key, value] : doc_.items()) {
    bool ok = std::any_of(std::begin(common), std::end(common), [&](const char* k) { return key == k; }) ||
              std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; });
    if (!ok) throw InputError("config: unknown key '" + key + "'");
  }
}

const json& Config::at(const std::string& key) const {
  if (!doc_.contains(key)) throw InputError("config: missing key '" + key + "'");
  return doc_.at(key);
}

double Config::number(const std::string& key, double fallback) const {
  if (!doc_.contains(key)) return fallback;
  if (!doc_[key].is_number()) throw InputError("config: '" + key + "' must be a number");
  return doc_[key].get<double>();
}

int Config::integer(const std::string& key, int fallback) const {
  if (!doc_.contains(key)) return fallback;
  if (!doc_[key].is_number_integer()) throw InputError("config: '" + key + "' must be an integer");
  return doc_[key].get<int>();
}

std::string Config::string(const std::string& key, const std::string& fallback) const {
  if (!doc_.contains(key)) return fallback;
  if (!doc_[key].is_string()) throw InputError("config: '" + key + "' must be a string");
  return doc_[key].get<std::string>();
}

bool Config::flag(const std::string& key, bool fallback) const {
  if (!doc_.contains(key)) return fallback;
  if (!doc_[key].is_boolean()) throw InputError("config: '" + key + "' must be true or false");
  return doc_[key].get<bool>();
}

Rectangle Config::rect(const std::string& key, const Rectangle& fallback) const {
  return doc_.contains(key) ? parse_rect(doc_[key]) : fallback;
}

std::vector<Rectangle> Config::rects(const std::string& key) const {
  const json& j = at(key);
  if (!j.is_array() || j.empty()) throw InputError("config: '" + key + "' must be a list of rectangles");
  std::vector<Rectangle> out;
  for (const auto& r : j) out.push_back(parse_rect(r));
  return out;
}

std::vector<int> Config::integers(const std::string& key, std::vector<int> fallback) const {
  if (!doc_.contains(key)) return fallback;
  const json& j = doc_[key];
  if (j.is_number_integer()) return {j.get<int>()};
  if (!j.is_array()) throw InputError("config: '" + key + "' must be an integer or a list of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InputError("config: '" + key + "' must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

std::string Config::resolve(const std::string& name) const {
  std::filesystem::path p(name);
  if (p.is_relative()) p = std::filesystem::path(dir_) / p;
  std::string s = p.lexically_normal().string();
  inputs_.push_back(s);
  return s;
}

Rectangle parse_rect(const json& j) {
  if (!j.is_array() || j.size() != 4) throw InputError("config: rectangles are [a, b, c, d]");
  try {
    return Rectangle(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>());
  } catch (const json::exception& e) {
    throw InputError(std::string("config: rectangle: ") + e.what());
  }
}

Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError("config: complex numbers are reals or [re, im] pairs");
}

Matrix parse_matrix(const json& j) {
  if (j.is_number()) return Matrix::Constant(1, 1, parse_complex(j));
  if (!j.is_array() || j.empty()) throw InputError("config: matrix must be a number or a nonempty list");
  const int rows = static_cast<int>(j.size());
  // A flat list never has n entries that are each lists of length n, so the
  // two layouts cannot be confused.
  bool nested = std::all_of(j.begin(), j.end(), [&](const json& r) {
    return r.is_array() && static_cast<int>(r.size()) == rows;
  });
  if (nested) {
    Matrix m(rows, rows);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < rows; ++c) m(r, c) = parse_complex(j[r][c]);
    return m;
  }
  int n = 0;
  while (static_cast<std::size_t>(n * n) < j.size()) ++n;
  if (static_cast<std::size_t>(n * n) != j.size()) throw InputError("config: matrix entry count is not a square");
  Matrix m(n, n);
  for (int k = 0; k < n * n; ++k) m(k / n, k % n) = parse_complex(j[k]);
  return m;
}

}  // namespace garbe::cli
