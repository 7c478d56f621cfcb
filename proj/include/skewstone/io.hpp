#ifndef SKEWSTONE_IO_HPP
#define SKEWSTONE_IO_HPP

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "skewstone/adjunction.hpp"
#include "skewstone/algebra.hpp"
#include "skewstone/biglambda.hpp"
#include "skewstone/etale.hpp"
#include "skewstone/hom.hpp"
#include "skewstone/lambda.hpp"
#include "skewstone/stone.hpp"

namespace skewstone {

using json = nlohmann::json;

// Algebra file: {"carrier": m, "zero": 0, "meet": [[..]], "join": [[..]],
// "names": [..]} with row-major tables of element indices.
inline json algebra_to_json(const FiniteLeftSkewBA& s) {
  json meet = json::array(), join = json::array();
  for (int a = 0; a < s.size; ++a) {
    json mrow = json::array(), jrow = json::array();
    for (int b = 0; b < s.size; ++b) {
      mrow.push_back(s.m(a, b));
      jrow.push_back(s.j(a, b));
    }
    meet.push_back(mrow);
    join.push_back(jrow);
  }
  json out = {{"carrier", s.size}, {"zero", 0}, {"meet", meet}, {"join", join}};
  if (!s.names.empty()) out["names"] = s.names;
  return out;
}

inline FiniteLeftSkewBA algebra_from_json(const json& j) {
  if (!j.is_object() || !j.contains("meet") || !j.contains("join"))
    throw MalformedTable("algebra file must contain meet and join tables");
  std::vector<std::vector<int>> meet = j.at("meet"), join = j.at("join");
  int zero = j.value("zero", 0);
  std::vector<std::string> names;
  if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
  if (j.contains("carrier") &&
      j.at("carrier").get<size_t>() != meet.size())
    throw MalformedTable("carrier size does not match the tables");
  return validate_algebra(meet, join, zero, std::move(names));
}

// Space file: {"points": ["p", "q", ...]}
inline json space_to_json(const FiniteBooleanSpace& x) {
  return json{{"points", x.points}};
}

inline FiniteBooleanSpace space_from_json(const json& j) {
  if (!j.is_object() || !j.contains("points"))
    throw MalformedTable("space file must contain points");
  return make_space(j.at("points").get<std::vector<std::string>>());
}

// Map file: {"map": {"p": "x", ...}} read against two spaces
inline SpaceMap spacemap_from_json(const json& j, const FiniteBooleanSpace& from,
                                   const FiniteBooleanSpace& to) {
  if (!j.is_object() || !j.contains("map"))
    throw MalformedTable("map file must contain a map object");
  SpaceMap out(static_cast<size_t>(from.size()), -1);
  for (const auto& [key, value] : j.at("map").items())
    out[static_cast<size_t>(from.index_of(key))] =
        to.index_of(value.get<std::string>());
  for (int v : out)
    if (v < 0) throw MalformedTable("map file does not cover every point");
  return out;
}

inline json spacemap_to_json(const SpaceMap& f, const FiniteBooleanSpace& from,
                             const FiniteBooleanSpace& to) {
  json m = json::object();
  for (int x = 0; x < from.size(); ++x)
    m[from.points[static_cast<size_t>(x)]] =
        to.points[static_cast<size_t>(f[static_cast<size_t>(x)])];
  return json{{"map", m}};
}

// Etale file: {"base": ["x", "y"], "stalks": {"x": 2, "y": 1}}; germs are
// named base.1, base.2, ... in stalk order.
inline json etale_to_json(const EtaleSpace& e) {
  json stalks = json::object();
  auto st = e.stalks();
  for (int x = 0; x < e.base.size(); ++x)
    stalks[e.base.points[static_cast<size_t>(x)]] =
        st[static_cast<size_t>(x)].size();
  return json{{"base", e.base.points}, {"stalks", stalks}};
}

inline EtaleSpace etale_from_json(const json& j) {
  if (!j.is_object() || !j.contains("base") || !j.contains("stalks"))
    throw MalformedTable("etale file must contain base and stalks");
  auto base = make_space(j.at("base").get<std::vector<std::string>>());
  std::vector<int> sizes;
  for (const auto& p : base.points) {
    if (!j.at("stalks").contains(p))
      throw MalformedTable("missing stalk size for point " + p);
    sizes.push_back(j.at("stalks").at(p).get<int>());
  }
  return make_etale(std::move(base), sizes);
}

// Homomorphism file: {"source": <path or inline algebra>, "target": ...,
// "map": [t0, ...]}; path resolution happens in the CLI, this layer takes
// the already-loaded endpoint algebras.
inline json hom_to_json(const json& source, const json& target, const HomMap& h) {
  return json{{"source", source}, {"target", target}, {"map", h}};
}

inline HomMap hommap_from_json(const json& j) {
  if (!j.is_object() || !j.contains("map"))
    throw MalformedTable("homomorphism file must contain a map array");
  return j.at("map").get<HomMap>();
}

// Cohomomorphism file: {"base_map": {"x": "y"}, "components":
// {"x": {"y.1": "x.2"}}} where x runs over the to-base.
inline json cohom_to_json(const Cohomomorphism& k, const EtaleSpace& from,
                          const EtaleSpace& to) {
  json base = json::object(), comps = json::object();
  auto st_from = from.stalks();
  for (int x = 0; x < to.base.size(); ++x) {
    int y = k.base_map[static_cast<size_t>(x)];
    base[to.base.points[static_cast<size_t>(x)]] =
        from.base.points[static_cast<size_t>(y)];
    json cm = json::object();
    const auto& stalk = st_from[static_cast<size_t>(y)];
    for (size_t pos = 0; pos < stalk.size(); ++pos)
      cm[from.germs[static_cast<size_t>(stalk[pos])]] =
          to.germs[static_cast<size_t>(k.comp[static_cast<size_t>(x)][pos])];
    comps[to.base.points[static_cast<size_t>(x)]] = cm;
  }
  return json{{"base_map", base}, {"components", comps}};
}

inline Cohomomorphism cohom_from_json(const json& j, const EtaleSpace& from,
                                      const EtaleSpace& to) {
  if (!j.is_object() || !j.contains("base_map") || !j.contains("components"))
    throw MalformedTable("cohom file must contain base_map and components");
  Cohomomorphism k;
  auto st_from = from.stalks();
  auto germ_index = [](const EtaleSpace& e, const std::string& label) {
    for (size_t g = 0; g < e.germs.size(); ++g)
      if (e.germs[g] == label) return static_cast<int>(g);
    throw MalformedTable("unknown germ label: " + label);
  };
  for (int x = 0; x < to.base.size(); ++x) {
    const auto& xl = to.base.points[static_cast<size_t>(x)];
    int y = from.base.index_of(
        j.at("base_map").at(xl).get<std::string>());
    k.base_map.push_back(y);
    const auto& stalk = st_from[static_cast<size_t>(y)];
    std::vector<int> cmp(stalk.size(), -1);
    for (size_t pos = 0; pos < stalk.size(); ++pos) {
      const auto& gl = from.germs[static_cast<size_t>(stalk[pos])];
      cmp[pos] = germ_index(
          to, j.at("components").at(xl).at(gl).get<std::string>());
    }
    for (int v : cmp)
      if (v < 0) throw MalformedTable("component does not cover the stalk");
    k.comp.push_back(std::move(cmp));
  }
  return k;
}

// Lambda element: {"n": 1, "values": {"p": 2, "q": 0}} plus the flag view
// as point-label lists, highest level first.
inline json lambda_element_to_json(const LambdaAlgebra& l, std::int64_t e) {
  json vals = json::object();
  auto v = l.decode(e);
  for (int x = 0; x < l.space.size(); ++x)
    vals[l.space.points[static_cast<size_t>(x)]] = v[static_cast<size_t>(x)];
  json flag = json::array();
  for (const auto& level : flag_of(l, e)) {
    json lv = json::array();
    for (int x : level) lv.push_back(l.space.points[static_cast<size_t>(x)]);
    flag.push_back(lv);
  }
  return json{{"n", l.n}, {"values", vals}, {"flag", flag}};
}

inline std::int64_t lambda_element_from_json(const LambdaAlgebra& l, const json& j) {
  std::vector<int> v(static_cast<size_t>(l.space.size()), 0);
  for (const auto& [key, value] : j.at("values").items())
    v[static_cast<size_t>(l.space.index_of(key))] = value.get<int>();
  for (int d : v)
    if (d < 0 || d > l.n + 1)
      throw MalformedTable("lambda element value out of range");
  return l.encode(v);
}

// Lambda space output: points with their maps and (F, f) encodings, plus the
// subbase catalogue keyed "(s,i)".
inline json biglambda_to_json(const BigLambdaSpace& b) {
  json points = json::array();
  for (int i = 0; i < b.size(); ++i) {
    json f = json::object();
    const auto& stalk =
        b.st.stalk[static_cast<size_t>(b.point_atom[static_cast<size_t>(i)])];
    for (size_t pos = 0; pos < stalk.size(); ++pos)
      f[b.s.name(stalk[pos])] = b.point_f[static_cast<size_t>(i)][pos];
    points.push_back(json{{"map", b.points[static_cast<size_t>(i)]},
                          {"F", b.point_atom[static_cast<size_t>(i)]},
                          {"f", f}});
  }
  json subbase = json::object();
  for (int s = 0; s < b.s.size; ++s)
    for (int i = 1; i <= b.n + 1; ++i) {
      auto pts = b.subbase(s, i);
      subbase["(" + std::to_string(s) + "," + std::to_string(i) + ")"] = pts;
    }
  return json{{"n", b.n}, {"points", points}, {"subbase", subbase}};
}

// Verification report: {"theorem": ..., "instance": ..., "status":
// "pass|fail", "certificates": ...}
inline json report_json(const std::string& theorem, const json& instance,
                        bool pass, const json& certificates) {
  return json{{"theorem", theorem},
              {"instance", instance},
              {"status", pass ? "pass" : "fail"},
              {"certificates", certificates}};
}

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedTable("cannot open " + path);
  json j;
  in >> j;
  return j;
}

inline void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw MalformedTable("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace skewstone

#endif  // SKEWSTONE_IO_HPP
