#ifndef SKETCHFORGE_JSON_IO_HPP
#define SKETCHFORGE_JSON_IO_HPP

// Models and realizations as JSON:
//   { "carriers": { "X": ["0", "1"] },
//     "tables":   { "f": { "0": "1", "1": "0" } } }
// Table keys are argument labels: "(x,y)" for pairs, "*" for the unit.
// Realizations use the same layout, with an optional "sketch" name.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "error.hpp"
#include "metasketch.hpp"
#include "models.hpp"
#include "spec.hpp"

namespace sketchforge {

using json = nlohmann::ordered_json;

inline json to_json(const FinModel& m) {
  json j;
  j["carriers"] = json::object();
  for (const auto& [t, c] : m.carriers) j["carriers"][t] = c;
  j["tables"] = json::object();
  for (const auto& [f, tab] : m.tables) {
    json row = json::object();
    for (std::size_t x = 0; x < tab.values.size(); ++x) row[label(m, tab.dom, x)] = label(m, tab.cod, tab.values[x]);
    j["tables"][f] = row;
  }
  return j;
}

/// Reads a (possibly partial) model of `s`: the carriers given and the tables
/// of the terms listed, which must be total.
inline FinModel model_from_json(const Spec& s, const json& j) {
  FinModel m;
  try {
    if (j.contains("carriers"))
      for (const auto& [t, c] : j.at("carriers").items()) {
        if (!s.has_type(t)) throw Error(ErrorKind::unknown_symbol, "model: no type " + t + " in " + s.name);
        m.carriers[t] = c.get<std::vector<std::string>>();
      }
    if (j.contains("tables"))
      for (const auto& [f, row] : j.at("tables").items()) {
        const TermDecl* d = nullptr;
        for (const auto& t : s.terms)
          if (t.name == f) d = &t;
        if (!d) throw Error(ErrorKind::unknown_symbol, "model: no term " + f + " in " + s.name);
        Table tab{d->dom, d->cod, std::vector<int>(carrier_size(m, d->dom), -1)};
        for (const auto& [arg, val] : row.items())
          tab.values.at(value_of(m, d->dom, arg)) = value_of(m, d->cod, val.get<std::string>());
        for (std::size_t x = 0; x < tab.values.size(); ++x)
          if (tab.values[x] < 0) throw Error(ErrorKind::invalid_model, "table " + f + " has no value at " + label(m, d->dom, x));
        m.tables[f] = std::move(tab);
      }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("model: ") + e.what());
  }
  return m;
}

inline json to_json(const Realization& r) {
  json j;
  j["sketch"] = r.over ? r.over->name : "";
  j["carriers"] = json::object();
  for (const auto& p : r.over->points) j["carriers"][p] = r.sets.at(p);
  j["tables"] = json::object();
  for (const auto& a : r.over->arrows) {
    json row = json::object();
    const auto& f = r.fns.at(a.name);
    for (std::size_t x = 0; x < f.size(); ++x) row[r.sets.at(a.src)[x]] = r.sets.at(a.dst).at(f[x]);
    j["tables"][a.name] = row;
  }
  return j;
}

/// Reads a realization over `k`. Missing sets or functions are left out, so
/// that the checker reports them.
inline Realization realization_from_json(const LimitSketch& k, const json& j) {
  Realization r;
  r.over = &k;
  try {
    for (const auto& [p, c] : j.at("carriers").items()) {
      if (!k.has_point(p)) throw Error(ErrorKind::unknown_symbol, "realization: no point " + p + " in " + k.name);
      r.sets[p] = c.get<std::vector<std::string>>();
    }
    for (const auto& [a, row] : j.at("tables").items()) {
      const SketchArrow& ar = k.arrow(a);
      if (!r.sets.count(ar.src) || !r.sets.count(ar.dst)) continue;
      std::vector<int> f(r.sets[ar.src].size(), -1);
      for (const auto& [x, y] : row.items()) f.at(r.index(ar.src, x)) = r.index(ar.dst, y.get<std::string>());
      if (std::find(f.begin(), f.end(), -1) != f.end()) throw Error(ErrorKind::invalid_model, "function " + a + " is not total");
      r.fns[a] = std::move(f);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("realization: ") + e.what());
  }
  return r;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::usage, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, path + ": " + e.what());
  }
}

}  // namespace sketchforge

#endif  // SKETCHFORGE_JSON_IO_HPP
