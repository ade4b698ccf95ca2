#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "garbe/analytic/grid.hpp"
#include "json.hpp"

namespace garbe::cli {

using json = nlohmann::ordered_json;

extern const std::vector<std::string> kOperations;
bool known_operation(const std::string& op);

// Experiment configuration: a JSON object whose keys depend on the
// operation. Relative file names resolve against the config's directory.
class Config {
 public:
  static Config empty();
  static Config load(const std::string& path);
  static Config parse(const std::string& text, const std::string& dir = ".");

  const json& raw() const { return doc_; }
  const std::string& text() const { return text_; }

  // Throws InputError for keys outside `allowed` (plus the common keys).
  void allow(std::initializer_list<const char*> allowed) const;

  bool has(const std::string& key) const { return doc_.contains(key); }
  const json& at(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  std::string string(const std::string& key, const std::string& fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  Rectangle rect(const std::string& key, const Rectangle& fallback) const;
  std::vector<Rectangle> rects(const std::string& key) const;
  std::vector<int> integers(const std::string& key, std::vector<int> fallback) const;

  // Absolute path for a file named in the config; remembered for the digest.
  std::string resolve(const std::string& name) const;
  const std::vector<std::string>& inputs() const { return inputs_; }

 private:
  json doc_ = json::object();
  std::string text_;
  std::string dir_ = ".";
  mutable std::vector<std::string> inputs_;
};

Rectangle parse_rect(const json& j);
Complex parse_complex(const json& j);
// Bare number (1×1), row-major list of entries, or list of rows.
Matrix parse_matrix(const json& j);

}  // namespace garbe::cli
