#include "garbe/continuous/cloud_json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace garbe {

using json = nlohmann::ordered_json;

const Region& CloudDocument::subset(const std::string& name) const {
  auto it = subsets.find(name);
  if (it == subsets.end()) throw InputError("cloud document: no subset named '" + name + "'");
  return it->second;
}

const Section<Matrix>& CloudDocument::map(const std::string& name) const {
  auto it = maps.find(name);
  if (it == maps.end()) throw InputError("cloud document: no map named '" + name + "'");
  return it->second;
}

const GroupPath& CloudDocument::path(const std::string& name) const {
  auto it = paths.find(name);
  if (it == paths.end()) throw InputError("cloud document: no path named '" + name + "'");
  return it->second;
}

namespace {

std::string point_key(const json& p) {
  if (p.is_string()) return p.get<std::string>();
  if (p.is_number_integer()) return std::to_string(p.get<long long>());
  throw InputError("cloud document: point ids must be strings or integers");
}

Complex parse_entry(const json& e) {
  if (e.is_array() && e.size() == 2) return {e[0].get<double>(), e[1].get<double>()};
  if (e.is_number()) return {e.get<double>(), 0.0};
  throw InputError("cloud document: matrix entries must be [re, im] pairs or reals");
}

Matrix parse_matrix(const json& j) {
  if (j.is_number()) return Matrix::Constant(1, 1, Complex(j.get<double>(), 0.0));
  if (!j.is_array() || j.empty()) throw InputError("cloud document: matrix must be a number or a nonempty array");
  int n = 0;
  while (static_cast<std::size_t>(n * n) < j.size()) ++n;
  if (static_cast<std::size_t>(n * n) != j.size()) throw InputError("cloud document: matrix length is not a square");
  Matrix m(n, n);
  for (int k = 0; k < n * n; ++k) m(k / n, k % n) = parse_entry(j[k]);
  return m;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
  return out;
}

}  // namespace

CloudDocument parse_cloud_document(const std::string& text) {
  try {
    json doc = json::parse(text);
    CloudDocument out;
    std::vector<std::string> ids;
    std::map<std::string, PointId> index;
    for (const auto& p : doc.at("points")) {
      std::string k = point_key(p);
      if (!index.emplace(k, static_cast<PointId>(ids.size())).second)
        throw InputError("cloud document: duplicate point id " + k);
      ids.push_back(k);
    }
    const json& m = doc.at("metric");
    if (m.is_array()) {
      out.cloud = MetricPointCloud::from_matrix(m.get<std::vector<std::vector<double>>>(), ids);
    } else {
      if (!m.value("euclidean", true)) throw InputError("cloud document: only euclidean coordinate metrics are supported");
      out.cloud = MetricPointCloud::from_coordinates(m.at("coordinates").get<std::vector<std::vector<double>>>(), ids);
    }
    if (out.cloud.size() != ids.size()) throw InputError("cloud document: metric size does not match the point list");

    auto region_of = [&](const json& list, const std::string& what) {
      std::vector<PointId> pts;
      for (const auto& p : list) {
        auto it = index.find(point_key(p));
        if (it == index.end()) throw InputError("cloud document: " + what + " names unknown point " + point_key(p));
        pts.push_back(it->second);
      }
      return Region(std::move(pts));
    };
    if (doc.contains("subsets"))
      for (const auto& [name, list] : doc["subsets"].items()) out.subsets[name] = region_of(list, "subset " + name);

    if (doc.contains("maps"))
      for (const auto& [name, vals] : doc["maps"].items()) {
        std::vector<std::pair<PointId, Matrix>> entries;
        for (const auto& [key, v] : vals.items()) {
          auto it = index.find(key);
          if (it == index.end()) throw InputError("cloud document: map " + name + " names unknown point " + key);
          Matrix mv = parse_matrix(v);
          if (out.dim == 0) out.dim = static_cast<int>(mv.rows());
          if (mv.rows() != out.dim) throw InputError("cloud document: map " + name + " changes matrix size");
          entries.emplace_back(it->second, std::move(mv));
        }
        std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<PointId> pts;
        std::vector<Matrix> v;
        for (auto& [p, mv] : entries) {
          pts.push_back(p);
          v.push_back(std::move(mv));
        }
        out.maps[name] = Section<Matrix>(Region(std::move(pts)), std::move(v));
      }

    if (doc.contains("paths"))
      for (const auto& [name, samples] : doc["paths"].items()) {
        std::vector<double> t;
        std::vector<Section<Matrix>> v;
        for (const auto& s : samples) {
          if (!s.is_array() || s.size() != 2) throw InputError("cloud document: path samples are [t, map-name] pairs");
          t.push_back(s[0].get<double>());
          v.push_back(out.map(s[1].get<std::string>()));
        }
        out.paths[name] = GroupPath::from_samples(t, v);
      }
    return out;
  } catch (const json::exception& e) {
    throw InputError(std::string("cloud document: ") + e.what());
  } catch (const StructureError& e) {
    throw InputError(std::string("cloud document: ") + e.what());
  }
}

CloudDocument read_cloud_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_cloud_document(ss.str());
}

std::string serialize_cloud_document(const CloudDocument& doc) {
  json out;
  const auto& names = doc.cloud.names();
  out["points"] = names;
  if (!doc.cloud.coordinates().empty()) {
    out["metric"] = {{"coordinates", doc.cloud.coordinates()}, {"euclidean", true}};
  } else {
    json d = json::array();
    for (std::size_t i = 0; i < doc.cloud.size(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < doc.cloud.size(); ++j)
        row.push_back(doc.cloud.distance(static_cast<PointId>(i), static_cast<PointId>(j)));
      d.push_back(row);
    }
    out["metric"] = d;
  }
  json subsets = json::object();
  for (const auto& [name, r] : doc.subsets) {
    json list = json::array();
    for (PointId p : r) list.push_back(names[p]);
    subsets[name] = list;
  }
  out["subsets"] = subsets;
  json maps = json::object();
  for (const auto& [name, s] : doc.maps) {
    json vals = json::object();
    for (std::size_t q = 0; q < s.domain.size(); ++q) vals[names[s.domain.points()[q]]] = matrix_json(s.values[q]);
    maps[name] = vals;
  }
  out["maps"] = maps;
  return out.dump(2);
}

}  // namespace garbe
