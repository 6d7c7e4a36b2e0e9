#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qga/amalgam.hpp"
#include "qga/descent.hpp"
#include "qga/error.hpp"
#include "qga/group.hpp"
#include "qga/quasigroup.hpp"

namespace qga::io {

using json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_input("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw invalid_input(std::string("malformed JSON: ") + e.what());
  }
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw invalid_input(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw invalid_input(std::string("field '") + what + "' has the wrong type");
  }
}

inline std::vector<std::string> element_names(const json& j) {
  if (!j.contains("elements")) return {};
  std::vector<std::string> out;
  for (const auto& e : field(j, "elements")) {
    if (e.is_string()) out.push_back(e.get<std::string>());
    else if (e.is_number_integer()) out.push_back(std::to_string(e.get<long long>()));
    else throw invalid_input("element names must be strings or integers");
  }
  return out;
}

inline Table table(const json& j) { return as<Table>(field(j, "mul"), "mul"); }

inline std::vector<std::size_t> index_list(const json& j, const char* what) {
  return as<std::vector<std::size_t>>(j, what);
}

}  // namespace detail

// Algebras: { "name": str, "elements": [str...] (optional), "mul": [[int...]...] }

inline FiniteQuasigroup quasigroup_from_json(const json& j) {
  const std::string name = j.contains("name") ? detail::as<std::string>(j.at("name"), "name") : "A";
  return FiniteQuasigroup::from_mul_table(detail::table(j), detail::element_names(j), name);
}

inline json to_json(const FiniteQuasigroup& a) {
  json t = json::array();
  for (std::size_t x = 0; x < a.size(); ++x) {
    json row = json::array();
    for (std::size_t y = 0; y < a.size(); ++y) row.push_back(a.mul(x, y));
    t.push_back(std::move(row));
  }
  return {{"name", a.name()}, {"elements", a.element_names()}, {"mul", std::move(t)}};
}

// Embeddings: { "source": algebra, "target": algebra, "map": [int...] }

inline Embedding embedding_from_json(const json& j) {
  return Embedding::make(quasigroup_from_json(detail::field(j, "source")),
                         quasigroup_from_json(detail::field(j, "target")),
                         detail::index_list(detail::field(j, "map"), "map"));
}

inline json to_json(const Embedding& e) {
  return {{"source", to_json(e.source)}, {"target", to_json(e.target)}, {"map", e.map}};
}

// Amalgams: { "base": algebra, "factors": [algebra...], "embeddings": [[int...]...] }

inline AmalgamConfig amalgam_from_json(const json& j) {
  std::vector<FiniteQuasigroup> factors;
  for (const auto& f : detail::field(j, "factors")) factors.push_back(quasigroup_from_json(f));
  std::vector<std::vector<std::size_t>> embeddings;
  for (const auto& e : detail::field(j, "embeddings"))
    embeddings.push_back(detail::index_list(e, "embeddings"));
  return AmalgamConfig(quasigroup_from_json(detail::field(j, "base")), std::move(factors),
                       std::move(embeddings));
}

inline json to_json(const AmalgamConfig& cfg) {
  json factors = json::array();
  for (const auto& f : cfg.factors()) factors.push_back(to_json(f));
  return {{"base", to_json(cfg.base())}, {"factors", std::move(factors)},
          {"embeddings", cfg.embeddings()}};
}

// Codescent data over a finite C':
// { "p_prime": embedding, "C_prime": algebra, "gamma": [int...], "xi": { element: term } }
// where xi terms are read over C' ⊔ E' (E' renamed with a trailing ' on a clash).

inline CodescentData codescent_data_from_json(const json& j) {
  const Embedding p = embedding_from_json(detail::field(j, "p_prime"));
  const FiniteQuasigroup c = quasigroup_from_json(detail::field(j, "C_prime"));
  const auto gamma = detail::index_list(detail::field(j, "gamma"), "gamma");
  const json& xi_json = detail::field(j, "xi");
  if (!xi_json.is_object()) throw invalid_input("field 'xi' must be an object");

  // Build once with placeholder images to obtain the target config for parsing.
  std::vector<Term> placeholder;
  AmalgamConfig object(p.source, {c}, {[&] {
                         std::vector<std::size_t> m;
                         for (std::size_t x : p.map) m.push_back(gamma.at(x));
                         return m;
                       }()});
  for (std::size_t e = 0; e < c.size(); ++e) placeholder.push_back(Term::leaf(object.leaf(1, e)));
  const CodescentData draft = finite_codescent_data(p, c, gamma, placeholder);

  std::vector<Term> xi(c.size(), Term::leaf(Leaf{0, 0}));
  std::vector<bool> seen(c.size(), false);
  for (const auto& [key, value] : xi_json.items()) {
    const auto idx = c.index_of(key);
    if (!idx) throw invalid_input("xi names unknown element '" + key + "' of " + c.name());
    xi[*idx] = draft.target().parse(detail::as<std::string>(value, "xi"));
    seen[*idx] = true;
  }
  for (std::size_t e = 0; e < c.size(); ++e)
    if (!seen[e]) throw invalid_input("xi undefined on element '" + c.element_name(e) + "'");
  return finite_codescent_data(p, c, gamma, xi);
}

// Groups: the algebra layout plus "inv": [int...] and "id": int, both checked.

inline FiniteGroup group_from_json(const json& j) {
  const std::string name = j.contains("name") ? detail::as<std::string>(j.at("name"), "name") : "G";
  FiniteGroup g = FiniteGroup::from_mul_table(detail::table(j), detail::element_names(j), name);
  if (j.contains("id") && detail::as<std::size_t>(j.at("id"), "id") != g.id())
    throw invalid_input("group " + name + ": 'id' is not the identity");
  if (j.contains("inv") && detail::index_list(j.at("inv"), "inv") != g.inverses())
    throw invalid_input("group " + name + ": 'inv' does not list the inverses");
  return g;
}

inline json to_json(const FiniteGroup& g) {
  return {{"name", g.name()}, {"elements", g.element_names()}, {"mul", g.table()},
          {"inv", g.inverses()}, {"id", g.id()}};
}

// Group amalgams: { "base": group, "factors": [group, group], "embeddings": [[int...], [int...]] }

inline GroupAmalgam group_amalgam_from_json(const json& j) {
  const FiniteGroup b = group_from_json(detail::field(j, "base"));
  const json& fs = detail::field(j, "factors");
  const json& es = detail::field(j, "embeddings");
  if (!fs.is_array() || fs.size() != 2 || !es.is_array() || es.size() != 2)
    throw invalid_input("a group amalgam needs exactly two factors and two embeddings");
  return GroupAmalgam(
      GroupEmbedding::make(b, group_from_json(fs[0]), detail::index_list(es[0], "embeddings")),
      GroupEmbedding::make(b, group_from_json(fs[1]), detail::index_list(es[1], "embeddings")));
}

inline json to_json(const GroupAmalgam& a) {
  return {{"base", to_json(a.base())},
          {"factors", json::array({to_json(a.factor(1)), to_json(a.factor(2))})},
          {"embeddings", json::array({a.embedding(1).map, a.embedding(2).map})}};
}

/// Words are written as space-separated letters "group.element".
inline Word parse_word(const std::string& text, const GroupAmalgam& a) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    const auto dot = tok.find('.');
    if (dot == std::string::npos) throw invalid_input("letter '" + tok + "' lacks a group name");
    const std::string g = tok.substr(0, dot), e = tok.substr(dot + 1);
    bool found = false;
    for (std::uint8_t side = 0; side <= 2 && !found; ++side) {
      const FiniteGroup& grp = side == 0 ? a.base() : a.factor(side);
      if (grp.name() != g) continue;
      const auto idx = grp.index_of(e);
      if (!idx) throw invalid_input("unknown element '" + e + "' of group " + g);
      w.push_back({side, *idx});
      found = true;
    }
    if (!found) throw invalid_input("unknown group '" + g + "'");
  }
  return w;
}

}  // namespace qga::io
