// SPDX-License-Identifier: Apache-2.0
#include "finstack/instance.hpp"

#include <algorithm>

#include <json.hpp>

namespace finstack {

using json = nlohmann::ordered_json;

namespace {

const FinSpace& need_space(const InstanceFile& f, const std::string& name,
                           const std::string& who) {
  auto it = f.spaces.find(name);
  if (it == f.spaces.end())
    throw error(errc::dangling_reference, who + " references unknown space '" + name + "'");
  return it->second;
}

const InstanceFile::NamedGroupoid& need_groupoid(const InstanceFile& f,
                                                 const std::string& name,
                                                 const std::string& who) {
  auto it = f.groupoids.find(name);
  if (it == f.groupoids.end())
    throw error(errc::dangling_reference, who + " references unknown groupoid '" + name + "'");
  return it->second;
}

}  // namespace

void InstanceFile::add_space(const std::string& name, FinSpace s) {
  spaces[name] = std::move(s);
}

void InstanceFile::add_map(const std::string& name, const std::string& dom,
                           const std::string& cod, CMap f) {
  if (!(need_space(*this, dom, "map " + name) == f.dom) ||
      !(need_space(*this, cod, "map " + name) == f.cod))
    throw error(errc::validation_error, "map " + name + " does not match its named spaces");
  maps[name] = NamedMap{dom, cod, std::move(f)};
}

void InstanceFile::add_groupoid(const std::string& name, const std::string& arrows,
                                const std::string& objects, Groupoid g) {
  if (!(need_space(*this, arrows, "groupoid " + name) == g.arrows) ||
      !(need_space(*this, objects, "groupoid " + name) == g.objects))
    throw error(errc::validation_error, "groupoid " + name + " does not match its named spaces");
  groupoids[name] = NamedGroupoid{arrows, objects, std::move(g)};
}

void InstanceFile::add_subset(const std::string& name, const std::string& space, Subset s) {
  if (!(need_space(*this, space, "subset " + name) == s.space))
    throw error(errc::validation_error, "subset " + name + " does not match its named space");
  subsets[name] = NamedSubset{space, std::move(s)};
}

void InstanceFile::add_subgroupoid(const std::string& name, const std::string& groupoid,
                                   Subgroupoid s) {
  if (!(need_groupoid(*this, groupoid, "subgroupoid " + name).value == s.parent))
    throw error(errc::validation_error,
                "subgroupoid " + name + " does not match its named groupoid");
  subgroupoids[name] = NamedSubgroupoid{groupoid, std::move(s)};
}

void InstanceFile::add_module(const std::string& name, const std::string& groupoid,
                              const std::string& space, RightModule m) {
  if (!(need_groupoid(*this, groupoid, "module " + name).value == m.groupoid) ||
      !(need_space(*this, space, "module " + name) == m.Z))
    throw error(errc::validation_error, "module " + name + " does not match its references");
  modules[name] = NamedModule{groupoid, space, std::move(m)};
}

void InstanceFile::add_bimodule(const std::string& name, const std::string& left,
                                const std::string& right, const std::string& space,
                                Bimodule b) {
  if (!(need_groupoid(*this, left, "bimodule " + name).value == b.left) ||
      !(need_groupoid(*this, right, "bimodule " + name).value == b.right) ||
      !(need_space(*this, space, "bimodule " + name) == b.X))
    throw error(errc::validation_error, "bimodule " + name + " does not match its references");
  bimodules[name] = NamedBimodule{left, right, space, std::move(b)};
}

void InstanceFile::add_groupoid_auto(const std::string& name, const Groupoid& g) {
  add_space(name + ".arrows", g.arrows);
  add_space(name + ".objects", g.objects);
  add_groupoid(name, name + ".arrows", name + ".objects", g);
}

void InstanceFile::add_module_auto(const std::string& name, const std::string& groupoid,
                                   const RightModule& m) {
  add_space(name + ".space", m.Z);
  add_module(name, groupoid, name + ".space", m);
}

void InstanceFile::add_bimodule_auto(const std::string& name, const std::string& left,
                                     const std::string& right, const Bimodule& b) {
  add_space(name + ".space", b.X);
  add_bimodule(name, left, right, name + ".space", b);
}

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where, bool strict, Report* lint) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) { ok = true; break; }
    if (!ok) {
      std::string msg = "unknown field '" + it.key() + "' in " + where;
      if (strict) throw error(errc::parse_error, msg);
      if (lint) lint->fail(msg);
    }
  }
}

std::vector<std::pair<std::string, std::string>> parse_pairs(const json& arr,
                                                             const std::string& where) {
  std::vector<std::pair<std::string, std::string>> out;
  if (!arr.is_array()) throw error(errc::parse_error, where + " must be an array of pairs");
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw error(errc::parse_error, where + " entries must be [string, string]");
    out.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return out;
}

std::vector<std::array<std::string, 3>> parse_triples(const json& arr,
                                                      const std::string& where) {
  std::vector<std::array<std::string, 3>> out;
  if (!arr.is_array()) throw error(errc::parse_error, where + " must be an array of triples");
  for (const auto& e : arr) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string() ||
        !e[2].is_string())
      throw error(errc::parse_error, where + " entries must be [string, string, string]");
    out.push_back({e[0].get<std::string>(), e[1].get<std::string>(), e[2].get<std::string>()});
  }
  return out;
}

CMap map_from_pairs(const FinSpace& dom, const FinSpace& cod, const json& arr,
                    const std::string& where) {
  auto pairs = parse_pairs(arr, where);
  try {
    return CMap::by_names(dom, cod, pairs);
  } catch (const error& e) {
    throw error(errc::dangling_reference, where + ": " + e.what());
  }
}

int need_point(const FinSpace& s, const std::string& p, const std::string& where) {
  int i = s.index(p);
  if (i < 0) throw error(errc::dangling_reference, where + ": unknown point '" + p + "'");
  return i;
}

json pairs_json(const CMap& f) {
  json arr = json::array();
  for (int i = 0; i < f.dom.size(); ++i)
    arr.push_back(json::array({f.dom.name(i), f.cod.name(f.map[i])}));
  return arr;
}

json space_json(const FinSpace& s) {
  json j;
  j["points"] = s.points();
  json leq = json::array();
  for (const auto& [a, b] : s.strict_pairs()) leq.push_back(json::array({a, b}));
  j["leq"] = leq;
  return j;
}

void validate_or_lint(const Report& rep, const std::string& what, bool strict, Report* lint) {
  if (rep.ok()) return;
  if (strict)
    throw error(errc::validation_error, what + ":\n" + rep.str());
  if (lint) lint->merge(rep, what + ": ");
}

}  // namespace

InstanceFile parse_instance(const std::string& text, bool strict, Report* lint) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw error(errc::parse_error, e.what());
  }
  if (doc.is_null()) return InstanceFile{};
  if (!doc.is_object()) throw error(errc::parse_error, "document must be an object");
  reject_unknown(doc, {"spaces", "maps", "groupoids", "subsets", "subgroupoids", "modules",
                       "bimodules"},
                 "document", strict, lint);
  InstanceFile out;

  if (doc.contains("spaces"))
    for (auto it = doc["spaces"].begin(); it != doc["spaces"].end(); ++it) {
      const json& j = it.value();
      reject_unknown(j, {"points", "leq"}, "space " + it.key(), strict, lint);
      if (!j.contains("points") || !j["points"].is_array())
        throw error(errc::parse_error, "space " + it.key() + " needs a points array");
      std::vector<std::string> pts;
      for (const auto& p : j["points"]) pts.push_back(p.get<std::string>());
      auto leq = j.contains("leq") ? parse_pairs(j["leq"], "space " + it.key() + " leq")
                                   : std::vector<std::pair<std::string, std::string>>{};
      try {
        out.spaces[it.key()] = FinSpace(pts, leq);
      } catch (const error& e) {
        if (strict) throw;
        if (lint) lint->fail("space " + it.key() + ": " + e.what());
      }
    }

  if (doc.contains("maps"))
    for (auto it = doc["maps"].begin(); it != doc["maps"].end(); ++it) {
      const json& j = it.value();
      reject_unknown(j, {"dom", "cod", "map"}, "map " + it.key(), strict, lint);
      std::string dom = j.at("dom").get<std::string>();
      std::string cod = j.at("cod").get<std::string>();
      CMap f = map_from_pairs(need_space(out, dom, "map " + it.key()),
                              need_space(out, cod, "map " + it.key()), j.at("map"),
                              "map " + it.key());
      Report rep;
      if (!is_continuous(f)) rep.fail("map is not continuous");
      validate_or_lint(rep, "map " + it.key(), strict, lint);
      out.maps[it.key()] = InstanceFile::NamedMap{dom, cod, std::move(f)};
    }

  if (doc.contains("groupoids"))
    for (auto it = doc["groupoids"].begin(); it != doc["groupoids"].end(); ++it) {
      const json& j = it.value();
      reject_unknown(j, {"arrows", "objects", "src", "tgt", "unit", "inv", "mul"},
                     "groupoid " + it.key(), strict, lint);
      std::string arrows = j.at("arrows").get<std::string>();
      std::string objects = j.at("objects").get<std::string>();
      const std::string who = "groupoid " + it.key();
      Groupoid g;
      g.arrows = need_space(out, arrows, who);
      g.objects = need_space(out, objects, who);
      g.src = map_from_pairs(g.arrows, g.objects, j.at("src"), who + " src");
      g.tgt = map_from_pairs(g.arrows, g.objects, j.at("tgt"), who + " tgt");
      g.unit = map_from_pairs(g.objects, g.arrows, j.at("unit"), who + " unit");
      g.inv = map_from_pairs(g.arrows, g.arrows, j.at("inv"), who + " inv");
      g.mul.assign(g.n_arrows() * g.n_arrows(), -1);
      for (const auto& t : parse_triples(j.at("mul"), who + " mul")) {
        int a = need_point(g.arrows, t[0], who + " mul");
        int b = need_point(g.arrows, t[1], who + " mul");
        int c = need_point(g.arrows, t[2], who + " mul");
        if (g.mul_at(a, b) >= 0)
          throw error(errc::parse_error, who + " mul defines (" + t[0] + "," + t[1] + ") twice");
        g.set_mul(a, b, c);
      }
      validate_or_lint(validate_groupoid(g), who, strict, lint);
      out.groupoids[it.key()] = InstanceFile::NamedGroupoid{arrows, objects, std::move(g)};
    }

  if (doc.contains("subsets"))
    for (auto it = doc["subsets"].begin(); it != doc["subsets"].end(); ++it) {
      const json& j = it.value();
      reject_unknown(j, {"space", "members"}, "subset " + it.key(), strict, lint);
      std::string space = j.at("space").get<std::string>();
      const FinSpace& s = need_space(out, space, "subset " + it.key());
      Subset sub = Subset::empty(s);
      for (const auto& m : j.at("members"))
        sub.add(need_point(s, m.get<std::string>(), "subset " + it.key()));
      out.subsets[it.key()] = InstanceFile::NamedSubset{space, std::move(sub)};
    }

  if (doc.contains("subgroupoids"))
    for (auto it = doc["subgroupoids"].begin(); it != doc["subgroupoids"].end(); ++it) {
      const json& j = it.value();
      const std::string who = "subgroupoid " + it.key();
      reject_unknown(j, {"groupoid", "R", "L"}, who, strict, lint);
      std::string gname = j.at("groupoid").get<std::string>();
      const Groupoid& g = need_groupoid(out, gname, who).value;
      Subgroupoid sub{g, Subset::empty(g.arrows), Subset::empty(g.objects)};
      for (const auto& a : j.at("R")) sub.R.add(need_point(g.arrows, a.get<std::string>(), who));
      for (const auto& m : j.at("L")) sub.L.add(need_point(g.objects, m.get<std::string>(), who));
      validate_or_lint(validate_subgroupoid(sub), who, strict, lint);
      out.subgroupoids[it.key()] = InstanceFile::NamedSubgroupoid{gname, std::move(sub)};
    }

  if (doc.contains("modules"))
    for (auto it = doc["modules"].begin(); it != doc["modules"].end(); ++it) {
      const json& j = it.value();
      const std::string who = "module " + it.key();
      reject_unknown(j, {"groupoid", "space", "phi", "act"}, who, strict, lint);
      std::string gname = j.at("groupoid").get<std::string>();
      std::string sname = j.at("space").get<std::string>();
      RightModule m;
      m.groupoid = need_groupoid(out, gname, who).value;
      m.Z = need_space(out, sname, who);
      m.phi = map_from_pairs(m.Z, m.groupoid.objects, j.at("phi"), who + " phi");
      m.act.assign(m.Z.size() * m.groupoid.n_arrows(), -1);
      for (const auto& t : parse_triples(j.at("act"), who + " act")) {
        int z = need_point(m.Z, t[0], who + " act");
        int a = need_point(m.groupoid.arrows, t[1], who + " act");
        int w = need_point(m.Z, t[2], who + " act");
        if (m.act_at(z, a) >= 0)
          throw error(errc::parse_error, who + " act defines (" + t[0] + "," + t[1] + ") twice");
        m.set_act(z, a, w);
      }
      validate_or_lint(validate_module(m), who, strict, lint);
      out.modules[it.key()] = InstanceFile::NamedModule{gname, sname, std::move(m)};
    }

  if (doc.contains("bimodules"))
    for (auto it = doc["bimodules"].begin(); it != doc["bimodules"].end(); ++it) {
      const json& j = it.value();
      const std::string who = "bimodule " + it.key();
      reject_unknown(j, {"left", "right", "space", "p", "pPrime", "lact", "ract"}, who,
                     strict, lint);
      std::string left = j.at("left").get<std::string>();
      std::string right = j.at("right").get<std::string>();
      std::string sname = j.at("space").get<std::string>();
      Bimodule b;
      b.left = need_groupoid(out, left, who).value;
      b.right = need_groupoid(out, right, who).value;
      b.X = need_space(out, sname, who);
      b.p = map_from_pairs(b.X, b.left.objects, j.at("p"), who + " p");
      b.pPrime = map_from_pairs(b.X, b.right.objects, j.at("pPrime"), who + " pPrime");
      b.lact.assign(b.left.n_arrows() * b.X.size(), -1);
      b.ract.assign(b.X.size() * b.right.n_arrows(), -1);
      for (const auto& t : parse_triples(j.at("lact"), who + " lact")) {
        int g = need_point(b.left.arrows, t[0], who + " lact");
        int x = need_point(b.X, t[1], who + " lact");
        int w = need_point(b.X, t[2], who + " lact");
        if (b.lact_at(g, x) >= 0)
          throw error(errc::parse_error, who + " lact defines (" + t[0] + "," + t[1] + ") twice");
        b.set_lact(g, x, w);
      }
      for (const auto& t : parse_triples(j.at("ract"), who + " ract")) {
        int x = need_point(b.X, t[0], who + " ract");
        int g = need_point(b.right.arrows, t[1], who + " ract");
        int w = need_point(b.X, t[2], who + " ract");
        if (b.ract_at(x, g) >= 0)
          throw error(errc::parse_error, who + " ract defines (" + t[0] + "," + t[1] + ") twice");
        b.set_ract(x, g, w);
      }
      validate_or_lint(validate_bimodule(b), who, strict, lint);
      out.bimodules[it.key()] = InstanceFile::NamedBimodule{left, right, sname, std::move(b)};
    }

  return out;
}

std::string emit_instance(const InstanceFile& file) {
  json doc = json::object();
  if (!file.spaces.empty()) {
    json sec = json::object();
    for (const auto& [name, s] : file.spaces) sec[name] = space_json(s);
    doc["spaces"] = sec;
  }
  if (!file.maps.empty()) {
    json sec = json::object();
    for (const auto& [name, m] : file.maps) {
      json j;
      j["dom"] = m.dom;
      j["cod"] = m.cod;
      j["map"] = pairs_json(m.map);
      sec[name] = j;
    }
    doc["maps"] = sec;
  }
  if (!file.groupoids.empty()) {
    json sec = json::object();
    for (const auto& [name, g] : file.groupoids) {
      json j;
      j["arrows"] = g.arrows;
      j["objects"] = g.objects;
      j["src"] = pairs_json(g.value.src);
      j["tgt"] = pairs_json(g.value.tgt);
      j["unit"] = pairs_json(g.value.unit);
      j["inv"] = pairs_json(g.value.inv);
      json mul = json::array();
      for (int a = 0; a < g.value.n_arrows(); ++a)
        for (int b = 0; b < g.value.n_arrows(); ++b)
          if (g.value.mul_at(a, b) >= 0)
            mul.push_back(json::array({g.value.arrows.name(a), g.value.arrows.name(b),
                                       g.value.arrows.name(g.value.mul_at(a, b))}));
      j["mul"] = mul;
      sec[name] = j;
    }
    doc["groupoids"] = sec;
  }
  if (!file.subsets.empty()) {
    json sec = json::object();
    for (const auto& [name, s] : file.subsets) {
      json j;
      j["space"] = s.space;
      j["members"] = s.value.names();
      sec[name] = j;
    }
    doc["subsets"] = sec;
  }
  if (!file.subgroupoids.empty()) {
    json sec = json::object();
    for (const auto& [name, s] : file.subgroupoids) {
      json j;
      j["groupoid"] = s.groupoid;
      j["R"] = s.value.R.names();
      j["L"] = s.value.L.names();
      sec[name] = j;
    }
    doc["subgroupoids"] = sec;
  }
  if (!file.modules.empty()) {
    json sec = json::object();
    for (const auto& [name, m] : file.modules) {
      json j;
      j["groupoid"] = m.groupoid;
      j["space"] = m.space;
      j["phi"] = pairs_json(m.value.phi);
      json act = json::array();
      for (int z = 0; z < m.value.Z.size(); ++z)
        for (int a = 0; a < m.value.groupoid.n_arrows(); ++a)
          if (m.value.act_at(z, a) >= 0)
            act.push_back(json::array({m.value.Z.name(z), m.value.groupoid.arrows.name(a),
                                       m.value.Z.name(m.value.act_at(z, a))}));
      j["act"] = act;
      sec[name] = j;
    }
    doc["modules"] = sec;
  }
  if (!file.bimodules.empty()) {
    json sec = json::object();
    for (const auto& [name, b] : file.bimodules) {
      json j;
      j["left"] = b.left;
      j["right"] = b.right;
      j["space"] = b.space;
      j["p"] = pairs_json(b.value.p);
      j["pPrime"] = pairs_json(b.value.pPrime);
      json lact = json::array();
      for (int g = 0; g < b.value.left.n_arrows(); ++g)
        for (int x = 0; x < b.value.X.size(); ++x)
          if (b.value.lact_at(g, x) >= 0)
            lact.push_back(json::array({b.value.left.arrows.name(g), b.value.X.name(x),
                                        b.value.X.name(b.value.lact_at(g, x))}));
      j["lact"] = lact;
      json ract = json::array();
      for (int x = 0; x < b.value.X.size(); ++x)
        for (int g = 0; g < b.value.right.n_arrows(); ++g)
          if (b.value.ract_at(x, g) >= 0)
            ract.push_back(json::array({b.value.X.name(x), b.value.right.arrows.name(g),
                                        b.value.X.name(b.value.ract_at(x, g))}));
      j["ract"] = ract;
      sec[name] = j;
    }
    doc["bimodules"] = sec;
  }
  return doc.dump(2) + "\n";
}

InstanceFile merge_instances(const std::vector<InstanceFile>& files) {
  InstanceFile out;
  auto merge_section = [](auto& dst, const auto& src, const char* kind) {
    for (const auto& [name, value] : src) {
      auto it = dst.find(name);
      if (it != dst.end() && !(it->second == value))
        throw error(errc::validation_error,
                    std::string(kind) + " '" + name + "' defined twice with different values");
      dst[name] = value;
    }
  };
  for (const auto& f : files) {
    merge_section(out.spaces, f.spaces, "space");
    merge_section(out.maps, f.maps, "map");
    merge_section(out.groupoids, f.groupoids, "groupoid");
    merge_section(out.subsets, f.subsets, "subset");
    merge_section(out.subgroupoids, f.subgroupoids, "subgroupoid");
    merge_section(out.modules, f.modules, "module");
    merge_section(out.bimodules, f.bimodules, "bimodule");
  }
  return out;
}

}  // namespace finstack
