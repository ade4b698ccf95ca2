#include "garbe/cech/cochain_json.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace garbe {

using json = nlohmann::ordered_json;

namespace {

std::string point_key(const json& p) {
  if (p.is_string()) return p.get<std::string>();
  if (p.is_number_integer()) return std::to_string(p.get<long long>());
  throw InputError("cochain document: points must be strings or integers");
}

S3::Element parse_perm(const json& j) {
  if (!j.is_array() || j.size() != 3) throw InputError("S3 element must be a one-line array of length 3");
  S3::Element e{};
  std::array<int, 3> hit{0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    int v = j[i].get<int>();
    if (v < 1 || v > 3 || hit[v - 1]++) throw InputError("S3 element is not a permutation of 1..3");
    e[i] = static_cast<std::uint8_t>(v - 1);
  }
  return e;
}

json perm_json(const S3::Element& e) { return json::array({e[0] + 1, e[1] + 1, e[2] + 1}); }

GL2F5::Element parse_gl2(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() ||
      j[1].size() != 2)
    throw InputError("GL2_F5 element must be a 2x2 integer array");
  GL2F5::Element e{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) e[2 * r + c] = static_cast<std::uint8_t>(GL2F5::mod(j[r][c].get<int>()));
  if (GL2F5::det(e) == 0) throw InputError("GL2_F5 element is singular");
  return e;
}

json gl2_json(const GL2F5::Element& e) {
  return json::array({json::array({e[0], e[1]}), json::array({e[2], e[3]})});
}

int matrix_dim(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix element must be a nonempty array");
  int n = 0;
  while (static_cast<std::size_t>(n * n) < j.size()) ++n;
  if (static_cast<std::size_t>(n * n) != j.size()) throw InputError("matrix element length is not a square");
  return n;
}

Matrix parse_matrix(const json& j, int n) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(n * n))
    throw InputError("matrix element has the wrong number of entries");
  Matrix m(n, n);
  for (int k = 0; k < n * n; ++k) {
    const json& e = j[k];
    if (e.is_array() && e.size() == 2)
      m(k / n, k % n) = Complex(e[0].get<double>(), e[1].get<double>());
    else if (e.is_number())
      m(k / n, k % n) = Complex(e.get<double>(), 0.0);
    else
      throw InputError("matrix entries must be [re, im] pairs or reals");
  }
  return m;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
  return out;
}

struct Context {
  std::vector<std::string> names;
  std::map<std::string, PointId> ids;
  Cover cover;
  std::map<std::string, std::size_t> members;
};

template <class E, class Parse>
Cochain1<E> parse_cochain1(const json& doc, const Context& ctx, Parse parse) {
  if (!doc.contains("cochain1") || !doc["cochain1"].is_object())
    throw InputError("cochain document: missing \"cochain1\" object");
  const std::size_t n = ctx.cover.size();
  std::vector<std::optional<Section<E>>> entries(n * n);
  for (const auto& [key, val] : doc["cochain1"].items()) {
    auto comma = key.find(',');
    if (comma == std::string::npos) throw InputError("cochain1 key must read \"Ui,Uj\": " + key);
    auto a = ctx.members.find(key.substr(0, comma));
    auto b = ctx.members.find(key.substr(comma + 1));
    if (a == ctx.members.end() || b == ctx.members.end())
      throw InputError("cochain1 key names an unknown cover member: " + key);
    Region dom = ctx.cover.overlap(a->second, b->second);
    std::vector<E> vals(dom.size());
    std::vector<int> filled(dom.size(), 0);
    if (!val.is_object()) throw InputError("cochain1 entry must be an object point -> element");
    for (const auto& [pk, ev] : val.items()) {
      auto id = ctx.ids.find(pk);
      if (id == ctx.ids.end()) throw InputError("cochain1 entry uses an unknown point: " + pk);
      auto pos = dom.index_of(id->second);
      if (!pos) throw StructureError("cochain1 entry " + key + " has point " + pk + " outside the overlap");
      vals[*pos] = parse(ev);
      filled[*pos] = 1;
    }
    for (std::size_t q = 0; q < dom.size(); ++q)
      if (!filled[q])
        throw StructureError("cochain1 entry " + key + " misses point " + ctx.names[dom.points()[q]]);
    entries[a->second * n + b->second] = Section<E>(dom, std::move(vals));
  }
  Cochain1<E> f{ctx.cover, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto& e = entries[i * n + j];
      if (e) {
        f.sections.push_back(std::move(*e));
      } else {
        Region dom = ctx.cover.overlap(i, j);
        if (!dom.empty())
          throw StructureError("cochain1 has no entry for the nonempty overlap (" + ctx.cover.name(i) + "," +
                               ctx.cover.name(j) + ")");
        f.sections.emplace_back(dom, std::vector<E>{});
      }
    }
  return f;
}

template <class E, class Parse>
std::optional<Cochain0<E>> parse_cochain0(const json& doc, const Context& ctx, Parse parse) {
  if (!doc.contains("cochain0")) return std::nullopt;
  const json& c0 = doc["cochain0"];
  Cochain0<E> h{ctx.cover, {}};
  for (std::size_t i = 0; i < ctx.cover.size(); ++i) {
    const std::string& name = ctx.cover.name(i);
    if (!c0.contains(name)) throw StructureError("cochain0 misses member " + name);
    const Region& dom = ctx.cover.member(i);
    std::vector<E> vals(dom.size());
    std::vector<int> filled(dom.size(), 0);
    for (const auto& [pk, ev] : c0[name].items()) {
      auto id = ctx.ids.find(pk);
      if (id == ctx.ids.end()) throw InputError("cochain0 uses an unknown point: " + pk);
      auto pos = dom.index_of(id->second);
      if (!pos) throw StructureError("cochain0 entry " + name + " has a point outside the member");
      vals[*pos] = parse(ev);
      filled[*pos] = 1;
    }
    for (int f : filled)
      if (!f) throw StructureError("cochain0 entry " + name + " is incomplete");
    h.sections.emplace_back(dom, std::move(vals));
  }
  return h;
}

template <class Section1, class ToJson>
json cochain1_json(const Section1& f, const std::vector<std::string>& names, ToJson to) {
  json out = json::object();
  const std::size_t n = f.cover.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& s = f(i, j);
      if (s.domain.empty()) continue;
      json entry = json::object();
      for (std::size_t q = 0; q < s.domain.size(); ++q) entry[names[s.domain.points()[q]]] = to(s.values[q]);
      out[f.cover.name(i) + "," + f.cover.name(j)] = entry;
    }
  return out;
}

template <class Section0, class ToJson>
json cochain0_json(const Section0& h, const std::vector<std::string>& names, ToJson to) {
  json out = json::object();
  for (std::size_t i = 0; i < h.cover.size(); ++i) {
    json entry = json::object();
    for (std::size_t q = 0; q < h[i].domain.size(); ++q) entry[names[h[i].domain.points()[q]]] = to(h[i].values[q]);
    out[h.cover.name(i)] = entry;
  }
  return out;
}

}  // namespace

CochainDocument parse_cochain_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("cochain document: ") + e.what());
  }
  try {
    CochainDocument out;
    Context ctx;
    if (!doc.contains("points") || !doc["points"].is_array())
      throw InputError("cochain document: missing \"points\" array");
    for (const auto& p : doc["points"]) {
      std::string key = point_key(p);
      if (ctx.ids.count(key)) throw InputError("cochain document: duplicate point " + key);
      ctx.ids[key] = static_cast<PointId>(ctx.names.size());
      ctx.names.push_back(key);
    }
    if (!doc.contains("cover") || !doc["cover"].is_object())
      throw InputError("cochain document: missing \"cover\" object");
    std::vector<Region> members;
    std::vector<std::string> member_names;
    for (const auto& [name, pts] : doc["cover"].items()) {
      if (name.find(',') != std::string::npos) throw InputError("cover member names may not contain ','");
      std::vector<PointId> ids;
      for (const auto& p : pts) {
        auto it = ctx.ids.find(point_key(p));
        if (it == ctx.ids.end()) throw InputError("cover member " + name + " uses an unknown point");
        ids.push_back(it->second);
      }
      ctx.members[name] = members.size();
      members.emplace_back(std::move(ids));
      member_names.push_back(name);
    }
    ctx.cover = Cover(std::move(members), std::move(member_names));
    out.point_names = ctx.names;
    out.cover = ctx.cover;
    out.group = doc.value("group", std::string());
    if (out.group == "S3") {
      out.cochain1 = parse_cochain1<S3::Element>(doc, ctx, parse_perm);
      if (auto h = parse_cochain0<S3::Element>(doc, ctx, parse_perm)) out.cochain0 = std::move(*h);
    } else if (out.group == "GL2_F5") {
      out.cochain1 = parse_cochain1<GL2F5::Element>(doc, ctx, parse_gl2);
      if (auto h = parse_cochain0<GL2F5::Element>(doc, ctx, parse_gl2)) out.cochain0 = std::move(*h);
    } else if (out.group == "matrix") {
      int n = 0;
      for (const auto& [k, entry] : doc["cochain1"].items()) {
        for (const auto& [pk, ev] : entry.items()) {
          n = matrix_dim(ev);
          break;
        }
        if (n) break;
      }
      if (n == 0) n = doc.value("dim", 1);
      out.dim = n;
      auto parse = [n](const json& j) { return parse_matrix(j, n); };
      out.cochain1 = parse_cochain1<Matrix>(doc, ctx, parse);
      if (auto h = parse_cochain0<Matrix>(doc, ctx, parse)) out.cochain0 = std::move(*h);
    } else {
      throw InputError("cochain document: unknown group \"" + out.group + "\"");
    }
    return out;
  } catch (const json::exception& e) {
    throw InputError(std::string("cochain document: ") + e.what());
  }
}

CochainDocument read_cochain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_cochain_document(ss.str());
}

std::string serialize_cochain_document(const CochainDocument& doc) {
  json out = json::object();
  out["points"] = doc.point_names;
  json cover = json::object();
  for (std::size_t i = 0; i < doc.cover.size(); ++i) {
    json pts = json::array();
    for (PointId p : doc.cover.member(i)) pts.push_back(doc.point_names[p]);
    cover[doc.cover.name(i)] = pts;
  }
  out["cover"] = cover;
  out["group"] = doc.group;
  std::visit(
      [&](const auto& f) {
        using C = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<C, Cochain1<S3::Element>>)
          out["cochain1"] = cochain1_json(f, doc.point_names, perm_json);
        else if constexpr (std::is_same_v<C, Cochain1<GL2F5::Element>>)
          out["cochain1"] = cochain1_json(f, doc.point_names, gl2_json);
        else
          out["cochain1"] = cochain1_json(f, doc.point_names, matrix_json);
      },
      doc.cochain1);
  if (doc.cochain0) {
    std::visit(
        [&](const auto& h) {
          using C = std::decay_t<decltype(h)>;
          if constexpr (std::is_same_v<C, Cochain0<S3::Element>>)
            out["cochain0"] = cochain0_json(h, doc.point_names, perm_json);
          else if constexpr (std::is_same_v<C, Cochain0<GL2F5::Element>>)
            out["cochain0"] = cochain0_json(h, doc.point_names, gl2_json);
          else
            out["cochain0"] = cochain0_json(h, doc.point_names, matrix_json);
        },
        *doc.cochain0);
  }
  return out.dump(2);
}

}  // namespace garbe
