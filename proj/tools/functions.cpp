#include "functions.hpp"

#include <algorithm>

#include "garbe/error.hpp"

namespace garbe::cli {

namespace {

std::string kind_of(const json& j, const char* what) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InputError(std::string("config: ") + what + " needs a string 'kind'");
  return j["kind"].get<std::string>();
}

Matrix matrix_or(const json& j, const char* key, const Matrix& fallback) {
  return j.contains(key) ? parse_matrix(j[key]) : fallback;
}

void same_shape(const Matrix& a, const Matrix& b, const std::string& what) {
  if (a.rows() != b.rows()) throw InputError("config: " + what + ": matrix sizes differ");
}

}  // namespace

FunctionSpec parse_function(const json& j) {
  const std::string kind = kind_of(j, "function");
  FunctionSpec s;
  if (kind == "identity") {
    s.dim = j.value("dim", 1);
    if (s.dim < 1) throw InputError("config: identity dim must be positive");
    const int n = s.dim;
    s.f = [n](Complex) { return identity(n); };
  } else if (kind == "constant") {
    Matrix c = parse_matrix(j.at("value"));
    s.dim = static_cast<int>(c.rows());
    s.f = [c](Complex) { return c; };
  } else if (kind == "exp") {
    if (!j.contains("M")) throw InputError("config: exp needs M");
    Matrix m = parse_matrix(j["M"]);
    Matrix c = matrix_or(j, "C", identity(static_cast<int>(m.rows())));
    same_shape(m, c, "exp");
    s.dim = static_cast<int>(m.rows());
    s.f = [m, c](Complex z) { return Matrix(exp_series(z * m) * c); };
  } else if (kind == "polynomial") {
    if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty())
      throw InputError("config: polynomial needs a nonempty 'coeffs' list");
    std::vector<Matrix> cs;
    for (const auto& c : j["coeffs"]) {
      cs.push_back(parse_matrix(c));
      same_shape(cs.front(), cs.back(), "polynomial");
    }
    s.dim = static_cast<int>(cs.front().rows());
    s.f = [cs](Complex z) {
      Matrix acc = cs.back();
      for (std::size_t k = cs.size() - 1; k-- > 0;) acc = (z * acc + cs[k]).eval();
      return acc;
    };
  } else if (kind == "near_identity") {
    if (!j.contains("N") || !j.contains("M")) throw InputError("config: near_identity needs N and M");
    Matrix nm = parse_matrix(j["N"]), mm = parse_matrix(j["M"]);
    same_shape(nm, mm, "near_identity");
    const double scale = j.value("scale", 0.05);
    s.dim = static_cast<int>(nm.rows());
    const int n = s.dim;
    s.f = [nm, mm, scale, n](Complex z) { return Matrix(identity(n) + scale * (nm + z * mm)); };
  } else if (kind == "zbar") {
    s.holomorphic = false;
    s.f = [](Complex z) { return Matrix::Constant(1, 1, std::conj(z)); };
  } else {
    throw InputError("config: unknown function kind '" + kind + "'");
  }
  return s;
}

CloudSetup parse_cloud(const json& j, const Config& cfg, std::mt19937_64& rng) {
  if (!j.is_object()) throw InputError("config: 'cloud' must be an object");
  CloudSetup out;
  if (j.contains("file")) {
    out.doc = read_cloud_file(cfg.resolve(j["file"].get<std::string>()));
    out.cloud = out.doc->cloud;
  } else if (j.contains("random")) {
    const json& r = j["random"];
    const int n = r.value("n", 30);
    const double w = r.value("width", 1.0), h = r.value("height", 1.0);
    if (n < 1 || !(w > 0) || !(h > 0)) throw InputError("config: random cloud needs n ≥ 1 and a positive box");
    std::uniform_real_distribution<double> ux(0.0, w), uy(0.0, h);
    std::vector<std::vector<double>> c;
    for (int i = 0; i < n; ++i) {
      double x = ux(rng);
      c.push_back({x, uy(rng)});
    }
    try {
      out.cloud = MetricPointCloud::from_coordinates(c);
    } catch (const StructureError& e) {
      throw InputError(std::string("config: random cloud: ") + e.what());
    }
  } else if (j.contains("coordinates")) {
    try {
      out.cloud = MetricPointCloud::from_coordinates(j["coordinates"].get<std::vector<std::vector<double>>>());
    } catch (const json::exception& e) {
      throw InputError(std::string("config: coordinates: ") + e.what());
    } catch (const StructureError& e) {
      throw InputError(std::string("config: coordinates: ") + e.what());
    }
  } else {
    throw InputError("config: cloud needs 'file', 'random' or 'coordinates'");
  }
  return out;
}

Region parse_subset(const json& j, const CloudSetup& c) {
  if (j.is_string()) {
    if (!c.doc) throw InputError("config: named subset '" + j.get<std::string>() + "' needs a cloud file");
    return c.doc->subset(j.get<std::string>());
  }
  if (j.is_array()) {
    std::vector<PointId> ids;
    for (const auto& v : j) {
      if (v.is_number_integer()) {
        ids.push_back(v.get<PointId>());
      } else if (v.is_string()) {
        const auto& names = c.cloud.names();
        auto it = std::find(names.begin(), names.end(), v.get<std::string>());
        if (it == names.end()) throw InputError("config: unknown point '" + v.get<std::string>() + "'");
        ids.push_back(static_cast<PointId>(it - names.begin()));
      } else {
        throw InputError("config: subset lists hold point ids or names");
      }
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    Region r(ids);
    if (!c.cloud.contains(r)) throw InputError("config: subset id out of range");
    return r;
  }
  if (j.is_object()) {
    const auto& coords = c.cloud.coordinates();
    if (coords.empty()) throw InputError("config: box subsets need a coordinate cloud");
    auto range = [&](const char* axis) -> std::pair<double, double> {
      if (!j.contains(axis)) return {-1e300, 1e300};
      auto v = j[axis].get<std::vector<double>>();
      if (v.size() != 2) throw InputError("config: box ranges are [lo, hi]");
      return {v[0], v[1]};
    };
    auto [x0, x1] = range("x");
    auto [y0, y1] = range("y");
    std::vector<PointId> ids;
    for (std::size_t p = 0; p < coords.size(); ++p) {
      double x = coords[p][0], y = coords[p].size() > 1 ? coords[p][1] : 0.0;
      if (x >= x0 && x <= x1 && y >= y0 && y <= y1) ids.push_back(static_cast<PointId>(p));
    }
    return Region(ids);
  }
  throw InputError("config: subsets are names, id lists or boxes");
}

Matrix noncommuting_value(const std::vector<double>& x, double t, double scale) {
  const double x0 = x[0], x1 = x.size() > 1 ? x[1] : 0.0;
  Matrix a(2, 2), b(2, 2);
  a << 0.0, 1.2 * x0, -1.2 * x0, 0.0;
  b << 0.3 * x1, 0.8, 0.1 * x0, -0.4 * x1;
  return exp_series((t * scale) * a) * exp_series((t * scale) * b);
}

CloudMap parse_cloud_map(const json& j, const CloudSetup& c, const Region& dom) {
  const std::string kind = kind_of(j, "cloud map");
  GroupPath path;
  if (kind == "identity") {
    const int n = j.value("dim", 1);
    if (n < 1) throw InputError("config: identity dim must be positive");
    path = GroupPath::from_function(dom, [n](PointId, double) { return identity(n); });
  } else if (kind == "noncommuting" || kind == "exp_linear") {
    const auto& coords = c.cloud.coordinates();
    if (coords.empty()) throw InputError("config: '" + kind + "' maps need a coordinate cloud");
    if (kind == "noncommuting") {
      const double scale = j.value("scale", 1.0);
      path = GroupPath::from_function(
          dom, [coords, scale](PointId p, double t) { return noncommuting_value(coords[p], t, scale); });
    } else {
      if (!j.contains("A0")) throw InputError("config: exp_linear needs A0");
      Matrix a0 = parse_matrix(j["A0"]);
      Matrix zero = Matrix::Zero(a0.rows(), a0.cols());
      Matrix a1 = matrix_or(j, "A1", zero), a2 = matrix_or(j, "A2", zero);
      same_shape(a0, a1, "exp_linear");
      same_shape(a0, a2, "exp_linear");
      path = GroupPath::from_function(dom, [coords, a0, a1, a2](PointId p, double t) {
        const auto& x = coords[p];
        Matrix gen = a0 + x[0] * a1 + (x.size() > 1 ? x[1] : 0.0) * a2;
        return exp_series(t * gen);
      });
    }
  } else if (kind == "document") {
    if (!c.doc) throw InputError("config: document maps need a cloud file");
    const auto& f = c.doc->map(j.at("map").get<std::string>());
    const auto& p = c.doc->path(j.value("path", j.at("map").get<std::string>()));
    if (!dom.subset_of(f.domain) || !dom.subset_of(p.domain()))
      throw InputError("config: document map does not cover the requested set");
    return {restrict_section(f, dom), p.restricted(dom)};
  } else {
    throw InputError("config: unknown cloud map kind '" + kind + "'");
  }
  return {path.at(1.0), path};
}

}  // namespace garbe::cli
