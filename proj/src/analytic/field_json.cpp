#include "garbe/analytic/field_json.hpp"

#include <fstream>
#include <sstream>

#include "garbe/error.hpp"
#include "json.hpp"

namespace garbe {

using json = nlohmann::ordered_json;

SampledField parse_sampled_field(const std::string& text) {
  try {
    json doc = json::parse(text);
    const json& r = doc.at("rectangle");
    if (!r.is_array() || r.size() != 4) throw InputError("sampled field: rectangle must be [a, b, c, d]");
    Rectangle rect(r[0].get<double>(), r[1].get<double>(), r[2].get<double>(), r[3].get<double>());
    int nx = doc.at("nx").get<int>(), ny = doc.at("ny").get<int>(), n = doc.value("n", 1);
    if (n < 1) throw InputError("sampled field: n must be positive");
    Grid g = Grid::uniform(rect, nx, ny);
    const json& v = doc.at("values");
    const std::size_t n2 = static_cast<std::size_t>(n) * n;
    if (!v.is_array() || v.size() != g.size() * n2)
      throw InputError("sampled field: expected " + std::to_string(g.size() * n2) + " [re, im] pairs");
    std::vector<Matrix> vals(g.size(), Matrix(n, n));
    for (std::size_t k = 0; k < g.size(); ++k)
      for (std::size_t e = 0; e < n2; ++e) {
        const json& p = v[k * n2 + e];
        Complex z = p.is_array() ? Complex(p.at(0).get<double>(), p.at(1).get<double>())
                                 : Complex(p.get<double>(), 0.0);
        vals[k](static_cast<int>(e / n), static_cast<int>(e % n)) = z;
      }
    SampledField f(g, n, std::move(vals));
    f.closure = doc.value("closure", true);
    return f;
  } catch (const json::exception& e) {
    throw InputError(std::string("sampled field: ") + e.what());
  }
}

SampledField read_sampled_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sampled_field(ss.str());
}

std::string serialize_sampled_field(const SampledField& f) {
  json doc;
  Rectangle r = f.grid.rectangle();
  doc["rectangle"] = {r.a, r.b, r.c, r.d};
  doc["nx"] = f.grid.nx();
  doc["ny"] = f.grid.ny();
  doc["n"] = f.n;
  doc["closure"] = f.closure;
  json v = json::array();
  for (const auto& m : f.values)
    for (int i = 0; i < f.n; ++i)
      for (int j = 0; j < f.n; ++j) v.push_back({m(i, j).real(), m(i, j).imag()});
  doc["values"] = std::move(v);
  return doc.dump();
}

}  // namespace garbe
