#ifndef SKETCHFORGE_COLIMIT_HPP
#define SKETCHFORGE_COLIMIT_HPP

// Pushouts of presentations, decomposition into elementary pieces, and
// gluing of such diagrams. Quotients are computed by union-find over the
// symbols of the disjoint union; a class is named after its smallest member,
// and clashes between distinct classes are resolved with `#1`, `#2`, ...

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "morphism.hpp"
#include "normalize.hpp"
#include "spec.hpp"
#include "syntax.hpp"

namespace sketchforge {

namespace detail {

class UnionFind {
 public:
  std::size_t add() {
    parent_.push_back(parent_.size());
    return parent_.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void merge(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
};

// Symbols of several presentations, indexed by (part, name).
struct SymbolTable {
  std::vector<std::pair<int, std::string>> syms;
  std::map<std::pair<int, std::string>, std::size_t> index;
  UnionFind uf;

  std::size_t add(int part, const std::string& name) {
    auto key = std::make_pair(part, name);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    syms.push_back(key);
    index[key] = uf.add();
    return index[key];
  }
  std::size_t at(int part, const std::string& name) const { return index.at({part, name}); }
};

// Names for the classes of `t`: smallest member name, suffixed on clashes.
// `keep` filters the classes that get a name at all.
template <typename Keep>
std::map<std::size_t, std::string> class_names(SymbolTable& t, Keep keep, const std::set<std::string>& taken = {}) {
  std::map<std::size_t, std::string> rep;
  for (std::size_t i = 0; i < t.syms.size(); ++i) {
    std::size_t r = t.uf.find(i);
    if (!keep(r)) continue;
    auto it = rep.find(r);
    if (it == rep.end() || t.syms[i].second < it->second) rep[r] = t.syms[i].second;
  }
  std::map<std::string, std::vector<std::size_t>> by_name;
  for (const auto& [r, n] : rep) by_name[n].push_back(r);
  std::set<std::string> used = taken;
  std::map<std::size_t, std::string> out;
  for (auto& [n, classes] : by_name) {
    if (classes.size() == 1 && !taken.count(n)) {
      out[classes[0]] = n;
      used.insert(n);
      continue;
    }
    // Suffix by the part holding the name; ties broken by class order.
    std::sort(classes.begin(), classes.end(), [&](std::size_t a, std::size_t b) {
      auto part = [&](std::size_t r) {
        int best = 1 << 30;
        for (std::size_t i = 0; i < t.syms.size(); ++i)
          if (t.uf.find(i) == r && t.syms[i].second == n) best = std::min(best, t.syms[i].first);
        return best;
      };
      return std::make_pair(part(a), a) < std::make_pair(part(b), b);
    });
    for (std::size_t k = 0; k < classes.size(); ++k) {
      std::string cand = n + "#" + std::to_string(k + 1);
      while (used.count(cand)) cand += '\'';
      used.insert(cand);
      out[classes[k]] = cand;
    }
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// pushouts

struct Pushout {
  Spec spec;
  Morphism in1;
  Morphism in2;
  // Which leg and which original symbol each generator of `spec` comes from.
  std::map<std::string, std::pair<int, std::string>> type_origin;
  std::map<std::string, std::pair<int, std::string>> term_origin;
};

/// A leg is type-basic when every declared type goes to a declared type or to 1.
inline bool type_basic(const Morphism& m) {
  for (const auto& t : m.src.types) {
    const Type& img = m.type_map.at(t);
    if (img.is_prod()) return false;
  }
  return true;
}

/// Pushout of the span S1 <-f- S0 -g-> S2.
inline Pushout pushout(const Morphism& f, const Morphism& g, std::string name = {}) {
  if (!(f.src == g.src)) throw Error(ErrorKind::spec_mismatch, f.name + " and " + g.name + " have different sources");
  if (!type_basic(f) && !type_basic(g))
    throw Error(ErrorKind::unsupported_pushout, "neither " + f.name + " nor " + g.name + " is type-basic");
  const Spec& s0 = f.src;
  const Spec* parts[3] = {&s0, &f.dst, &g.dst};
  if (name.empty()) name = f.dst.name + "_" + g.dst.name;

  // ---- types
  detail::SymbolTable ty;
  for (int p = 1; p <= 2; ++p)
    for (const auto& t : parts[p]->types) ty.add(p, t);
  std::map<std::size_t, bool> unit_flag;                        // by symbol, folded into classes later
  std::vector<std::pair<std::size_t, std::pair<int, Type>>> defs;  // symbol := type expression of a part

  auto unify = [&](auto&& self, const Type& a, const Type& b) -> void {
    // a lives in part 1, b in part 2
    if (a.is_base() && b.is_base()) {
      ty.uf.merge(ty.at(1, a.name()), ty.at(2, b.name()));
    } else if (a.is_base()) {
      if (b.is_unit()) unit_flag[ty.at(1, a.name())] = true;
      else defs.push_back({ty.at(1, a.name()), {2, b}});
    } else if (b.is_base()) {
      if (a.is_unit()) unit_flag[ty.at(2, b.name())] = true;
      else defs.push_back({ty.at(2, b.name()), {1, a}});
    } else if (a.is_prod() && b.is_prod()) {
      self(self, a.left(), b.left());
      self(self, a.right(), b.right());
    } else if (a.is_unit() && b.is_prod()) {
      self(self, a, b.left());
      self(self, a, b.right());
    } else if (a.is_prod() && b.is_unit()) {
      self(self, a.left(), b);
      self(self, a.right(), b);
    }
  };
  for (const auto& x : s0.types) unify(unify, f.type_map.at(x), g.type_map.at(x));

  std::map<std::size_t, bool> cls_unit;
  for (const auto& [sym, v] : unit_flag) cls_unit[ty.uf.find(sym)] = v;
  std::map<std::size_t, std::vector<std::pair<int, Type>>> cls_defs;
  for (const auto& [sym, d] : defs) cls_defs[ty.uf.find(sym)].push_back(d);

  auto tnames = detail::class_names(ty, [&](std::size_t r) { return !cls_unit.count(r) && !cls_defs.count(r); });

  std::map<std::size_t, Type> resolved;
  std::set<std::size_t> active;
  auto resolve_type = [&](auto&& self, int part, const Type& t) -> Type {
    switch (t.kind()) {
      case Type::Kind::unit: return t;
      case Type::Kind::prod: return Type::prod(self(self, part, t.left()), self(self, part, t.right()));
      case Type::Kind::base: break;
    }
    std::size_t r = ty.uf.find(ty.at(part, t.name()));
    if (auto it = resolved.find(r); it != resolved.end()) return it->second;
    if (active.count(r)) throw Error(ErrorKind::unsupported_pushout, "cyclic type identification at " + t.name());
    active.insert(r);
    Type out = Type::unit();
    if (auto nit = tnames.find(r); nit != tnames.end()) {
      out = Type::base(nit->second);
    } else if (auto dit = cls_defs.find(r); dit != cls_defs.end()) {
      out = self(self, dit->second[0].first, dit->second[0].second);
      for (const auto& [p, d] : dit->second)
        if (!(self(self, p, d) == out))
          throw Error(ErrorKind::unsupported_pushout, "type " + t.name() + " identified with two different types");
      if (cls_unit.count(r) && !out.is_unit())
        throw Error(ErrorKind::unsupported_pushout, "type " + t.name() + " identified with both 1 and " + to_string(out));
    }
    active.erase(r);
    resolved[r] = out;
    return out;
  };

  Pushout out;
  out.spec.name = name;
  std::set<std::size_t> placed;
  for (int p = 1; p <= 2; ++p)
    for (const auto& t : parts[p]->types) {
      std::size_t r = ty.uf.find(ty.at(p, t));
      auto nit = tnames.find(r);
      if (nit == tnames.end() || placed.count(r)) continue;
      placed.insert(r);
      out.spec.types.push_back(nit->second);
      out.type_origin[nit->second] = {p, t};
    }

  Morphism* ins[3] = {nullptr, &out.in1, &out.in2};
  out.in1.name = "in1";
  out.in2.name = "in2";
  for (int p = 1; p <= 2; ++p)
    for (const auto& t : parts[p]->types) ins[p]->type_map[t] = resolve_type(resolve_type, p, Type::base(t));
  auto map_type = [&](int p, const Type& t) { return resolve_type(resolve_type, p, t); };

  // ---- terms
  detail::SymbolTable tm;
  for (int p = 1; p <= 2; ++p)
    for (const auto& d : parts[p]->terms) tm.add(p, d.name);
  std::map<std::size_t, std::vector<std::pair<int, Term>>> tdefs;
  std::vector<std::pair<std::string, std::pair<Term, Term>>> glue_eqs;  // (part-1 term, part-2 term)
  for (const auto& d : s0.terms) {
    Term a = f.term_map.at(d.name), b = g.term_map.at(d.name);
    if (a.is(Term::Kind::atom) && b.is(Term::Kind::atom)) {
      tm.uf.merge(tm.at(1, a.name()), tm.at(2, b.name()));
    } else if (a.is(Term::Kind::atom)) {
      tdefs[tm.at(1, a.name())].push_back({2, b});
    } else if (b.is(Term::Kind::atom)) {
      tdefs[tm.at(2, b.name())].push_back({1, a});
    } else {
      glue_eqs.push_back({d.name, {a, b}});
    }
  }
  std::map<std::size_t, std::vector<std::pair<int, Term>>> cls_tdefs;
  for (auto& [sym, ds] : tdefs)
    for (auto& d : ds) cls_tdefs[tm.uf.find(sym)].push_back(d);

  std::set<std::string> type_names(out.spec.types.begin(), out.spec.types.end());
  auto names = detail::class_names(tm, [&](std::size_t r) { return !cls_tdefs.count(r); }, type_names);

  std::map<std::size_t, Term> tresolved;
  std::set<std::size_t> tactive;
  auto resolve_term = [&](auto&& self, int part, const Term& e) -> Term {
    switch (e.kind()) {
      case Term::Kind::atom: break;
      case Term::Kind::id: return Term::id(map_type(part, e.type_a()));
      case Term::Kind::bang: return Term::bang(map_type(part, e.type_a()));
      case Term::Kind::proj1: return Term::proj1(map_type(part, e.type_a()), map_type(part, e.type_b()));
      case Term::Kind::proj2: return Term::proj2(map_type(part, e.type_a()), map_type(part, e.type_b()));
      case Term::Kind::comp: return Term::comp(self(self, part, e.left()), self(self, part, e.right()));
      case Term::Kind::pair: return Term::pair(self(self, part, e.left()), self(self, part, e.right()));
    }
    std::size_t r = tm.uf.find(tm.at(part, e.name()));
    if (auto it = tresolved.find(r); it != tresolved.end()) return it->second;
    if (tactive.count(r)) throw Error(ErrorKind::unsupported_pushout, "cyclic term identification at " + e.name());
    tactive.insert(r);
    Term res;
    if (auto nit = names.find(r); nit != names.end()) {
      res = Term::atom(nit->second);
    } else {
      const auto& d = cls_tdefs.at(r)[0];
      res = self(self, d.first, d.second);
    }
    tactive.erase(r);
    tresolved[r] = res;
    return res;
  };

  std::set<std::size_t> tplaced;
  for (int p = 1; p <= 2; ++p)
    for (const auto& d : parts[p]->terms) {
      std::size_t r = tm.uf.find(tm.at(p, d.name));
      auto nit = names.find(r);
      if (nit == names.end()) continue;
      if (tplaced.count(r)) {
        // A merged generator is pure if any of its members is.
        if (d.pure)
          for (auto& td : out.spec.terms)
            if (td.name == nit->second) td.pure = true;
        continue;
      }
      tplaced.insert(r);
      out.spec.terms.push_back({nit->second, map_type(p, d.dom), map_type(p, d.cod), d.pure});
      out.term_origin[nit->second] = {p, d.name};
    }
  for (int p = 1; p <= 2; ++p)
    for (const auto& d : parts[p]->terms)
      ins[p]->term_map[d.name] = resolve_term(resolve_term, p, Term::atom(d.name));

  // ---- equations: both parts, then the identifications that are not renamings
  std::vector<Equation> eqs;
  auto push_eq = [&](Equation q, int p) {
    for (auto& e : eqs) {
      if (e.name != q.name) continue;
      if (e.lhs == q.lhs && e.rhs == q.rhs) return;
    }
    bool clash = std::any_of(eqs.begin(), eqs.end(), [&](const Equation& e) { return e.name == q.name; });
    if (clash) q.name += "#" + std::to_string(p);
    eqs.push_back(std::move(q));
  };
  for (int p = 1; p <= 2; ++p)
    for (const auto& q : parts[p]->equations)
      push_eq({q.name, resolve_term(resolve_term, p, q.lhs), resolve_term(resolve_term, p, q.rhs)}, p);
  for (auto& [sym, ds] : cls_tdefs) {
    // Extra definitions of an already defined generator become equations.
    Term first = tresolved.count(sym) ? tresolved.at(sym) : resolve_term(resolve_term, ds[0].first, ds[0].second);
    for (std::size_t k = 1; k < ds.size(); ++k)
      push_eq({"glue_" + tm.syms[sym].second, first, resolve_term(resolve_term, ds[k].first, ds[k].second)}, 0);
  }
  for (const auto& [n, ab] : glue_eqs)
    push_eq({"glue_" + n, resolve_term(resolve_term, 1, ab.first), resolve_term(resolve_term, 2, ab.second)}, 0);
  // Drop equations that became trivial.
  for (auto& q : eqs)
    if (!(q.lhs == q.rhs)) out.spec.equations.push_back(q);

  // ---- parameter annotations
  for (int p = 1; p <= 2 && !out.spec.param_type; ++p)
    if (parts[p]->param_type) {
      Type img = ins[p]->type_map.at(*parts[p]->param_type);
      if (img.is_base()) out.spec.param_type = img.name();
    }
  for (int p = 1; p <= 2 && !out.spec.param_const; ++p)
    if (parts[p]->param_const) {
      Term img = ins[p]->term_map.at(*parts[p]->param_const);
      if (img.is(Term::Kind::atom) && out.spec.param_type) out.spec.param_const = img.name();
    }

  out.in1.src = f.dst;
  out.in1.dst = out.spec;
  out.in2.src = g.dst;
  out.in2.dst = out.spec;
  require_valid(out.spec);
  return out;
}

/// The mediating morphism from the vertex of `po` to the common target of
/// `h1` and `h2`, which must agree on the span (checked on generators, up to
/// structural normal forms).
inline Morphism mediate(const Pushout& po, const Morphism& f, const Morphism& g, const Morphism& h1,
                        const Morphism& h2, std::string name = "h") {
  if (!(h1.dst == h2.dst)) throw Error(ErrorKind::incompatible_cocone, "cocone legs have different targets");
  Morphism a = compose(h1, f), b = compose(h2, g);
  if (!same_on_generators(a, b))
    throw Error(ErrorKind::incompatible_cocone, h1.name + " and " + h2.name + " disagree on " + f.src.name);
  Morphism out{std::move(name), po.spec, h1.dst, {}, {}};
  const Morphism* hs[3] = {nullptr, &h1, &h2};
  for (const auto& [t, o] : po.type_origin) out.type_map[t] = apply(*hs[o.first], Type::base(o.second));
  for (const auto& [t, o] : po.term_origin) out.term_map[t] = apply(*hs[o.first], Term::atom(o.second));
  return out;
}

// ---------------------------------------------------------------------------
// decomposition and gluing

enum class Elementary { type, term, selid, comp, prod2, tuple2, prod0, tuple0, equa };

inline const char* to_string(Elementary k) {
  switch (k) {
    case Elementary::type: return "Type";
    case Elementary::term: return "Term";
    case Elementary::selid: return "Selid";
    case Elementary::comp: return "Comp";
    case Elementary::prod2: return "2-Prod";
    case Elementary::tuple2: return "2-Tuple";
    case Elementary::prod0: return "0-Prod";
    case Elementary::tuple0: return "0-Tuple";
    case Elementary::equa: return "Equa";
  }
  return "?";
}

struct DiagramNode {
  std::string id;
  Elementary kind;
  Spec spec;
  std::string label;  // the type, term or equation the node stands for
};

struct DiagramEdge {
  std::string from;
  std::string to;
  Morphism m;
};

struct Diagram {
  std::vector<DiagramNode> nodes;
  std::vector<DiagramEdge> edges;

  const DiagramNode* node(const std::string& id) const {
    for (const auto& n : nodes)
      if (n.id == id) return &n;
    return nullptr;
  }
  std::size_t count(Elementary k) const {
    return std::count_if(nodes.begin(), nodes.end(), [&](const DiagramNode& n) { return n.kind == k; });
  }
};

namespace detail {

// The part of `s` that an expression mentions.
inline Spec mentioned(const Spec& s, const std::vector<Type>& types, const std::vector<Term>& terms,
                      const std::string& name) {
  std::vector<std::string> bases, atoms;
  for (const auto& t : types) collect_base_names(t, bases);
  for (const auto& e : terms) collect_atoms(e, atoms);
  for (const auto& a : atoms) {
    const TermDecl* d = s.find_term(a);
    collect_base_names(d->dom, bases);
    collect_base_names(d->cod, bases);
  }
  // Types mentioned by projections, identities and bangs.
  auto scan = [&](auto&& self, const Term& e) -> void {
    switch (e.kind()) {
      case Term::Kind::id:
      case Term::Kind::bang: collect_base_names(e.type_a(), bases); break;
      case Term::Kind::proj1:
      case Term::Kind::proj2:
        collect_base_names(e.type_a(), bases);
        collect_base_names(e.type_b(), bases);
        break;
      case Term::Kind::comp:
      case Term::Kind::pair:
        self(self, e.left());
        self(self, e.right());
        break;
      case Term::Kind::atom: break;
    }
  };
  for (const auto& e : terms) scan(scan, e);
  Spec out;
  out.name = name;
  for (const auto& t : s.types)
    if (std::find(bases.begin(), bases.end(), t) != bases.end()) out.types.push_back(t);
  for (const auto& d : s.terms)
    if (std::find(atoms.begin(), atoms.end(), d.name) != atoms.end()) out.terms.push_back(d);
  if (s.param_type && out.has_type(*s.param_type)) out.param_type = s.param_type;
  if (s.param_const && out.find_term(*s.param_const)) out.param_const = s.param_const;
  return out;
}

inline Morphism inclusion(const Spec& a, const Spec& b) {
  Morphism m{"incl", a, b, {}, {}};
  for (const auto& t : a.types) m.type_map[t] = Type::base(t);
  for (const auto& d : a.terms) m.term_map[d.name] = Term::atom(d.name);
  return m;
}

}  // namespace detail

/// Decomposes `s` into elementary pieces: one node per type, declared term,
/// product type, constructor occurrence in an equation side, and equation.
/// Every node is the sub-presentation of `s` that the piece mentions, and the
/// edges are inclusions along shared borders.
inline Diagram decompose(const Spec& s) {
  require_valid(s);
  Diagram d;
  std::map<std::string, std::string> type_node, term_node;
  std::map<Type, std::string> prod_node;
  auto add_node = [&](Elementary k, Spec sp, std::string label) {
    std::string id = std::string(to_string(k)) + "#" + std::to_string(d.count(k) + 1);
    sp.name = id;
    d.nodes.push_back({id, k, std::move(sp), std::move(label)});
    return id;
  };
  auto add_edge = [&](const std::string& from, const std::string& to) {
    d.edges.push_back({from, to, detail::inclusion(d.node(from)->spec, d.node(to)->spec)});
  };

  for (const auto& t : s.types) type_node[t] = add_node(Elementary::type, detail::mentioned(s, {Type::base(t)}, {}, ""), t);

  auto prod = [&](auto&& self, const Type& t) -> std::string {
    if (t.is_base()) return type_node.at(t.name());
    if (auto it = prod_node.find(t); it != prod_node.end()) return it->second;
    std::string id;
    if (t.is_unit()) {
      id = add_node(Elementary::prod0, Spec{}, "1");
    } else {
      std::string l = self(self, t.left()), r = self(self, t.right());
      id = add_node(Elementary::prod2, detail::mentioned(s, {t}, {}, ""), to_string(t));
      add_edge(l, id);
      if (r != l) add_edge(r, id);
    }
    prod_node[t] = id;
    return id;
  };

  for (const auto& td : s.terms) {
    std::string a = prod(prod, td.dom), b = prod(prod, td.cod);
    std::string id = add_node(Elementary::term, detail::mentioned(s, {td.dom, td.cod}, {Term::atom(td.name)}, ""), td.name);
    term_node[td.name] = id;
    add_edge(a, id);
    if (b != a) add_edge(b, id);
  }

  // Constructor occurrences; returns the node the expression is built in.
  auto build = [&](auto&& self, const Term& e) -> std::string {
    Signature sig = infer(s, e);
    switch (e.kind()) {
      case Term::Kind::atom: return term_node.at(e.name());
      case Term::Kind::proj1:
      case Term::Kind::proj2: return prod(prod, sig.dom);
      case Term::Kind::id: {
        std::string from = prod(prod, e.type_a());
        std::string id = add_node(Elementary::selid, detail::mentioned(s, {}, {e}, ""), to_string(e));
        add_edge(from, id);
        return id;
      }
      case Term::Kind::bang: {
        std::string from = prod(prod, e.type_a());
        std::string unit = prod(prod, Type::unit());
        std::string id = add_node(Elementary::tuple0, detail::mentioned(s, {}, {e}, ""), to_string(e));
        add_edge(from, id);
        add_edge(unit, id);
        return id;
      }
      case Term::Kind::comp:
      case Term::Kind::pair: {
        std::string l = self(self, e.left()), r = self(self, e.right());
        Elementary k = e.is(Term::Kind::comp) ? Elementary::comp : Elementary::tuple2;
        std::string id = add_node(k, detail::mentioned(s, {}, {e}, ""), to_string(e));
        if (k == Elementary::tuple2) {
          std::string p = prod(prod, sig.cod);
          add_edge(p, id);
        }
        add_edge(l, id);
        if (r != l) add_edge(r, id);
        return id;
      }
    }
    return {};
  };

  for (const auto& q : s.equations) {
    std::string l = build(build, q.lhs), r = build(build, q.rhs);
    Spec sp = detail::mentioned(s, {}, {q.lhs, q.rhs}, "");
    sp.equations.push_back(q);
    std::string id = add_node(Elementary::equa, std::move(sp), q.name);
    add_edge(l, id);
    if (r != l) add_edge(r, id);
  }
  return d;
}

struct Glued {
  Spec spec;
  std::map<std::string, Morphism> injections;
};

/// Colimit of a diagram whose edges send generators to generators.
inline Glued glue(const Diagram& d, std::string name = "Glued") {
  std::map<std::string, int> part;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    if (part.count(d.nodes[i].id)) throw Error(ErrorKind::invalid_diagram, "duplicate node " + d.nodes[i].id);
    part[d.nodes[i].id] = static_cast<int>(i);
  }
  detail::SymbolTable ty, tm;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    for (const auto& t : d.nodes[i].spec.types) ty.add(static_cast<int>(i), t);
    for (const auto& td : d.nodes[i].spec.terms) tm.add(static_cast<int>(i), td.name);
  }
  for (const auto& e : d.edges) {
    if (!part.count(e.from) || !part.count(e.to)) throw Error(ErrorKind::invalid_diagram, "edge between unknown nodes");
    int a = part[e.from], b = part[e.to];
    if (!(e.m.src == d.nodes[a].spec) || !(e.m.dst == d.nodes[b].spec))
      throw Error(ErrorKind::invalid_diagram, "edge " + e.from + " -> " + e.to + " does not match its endpoints");
    auto diags = check_typing(e.m);
    if (!diags.empty()) throw Error(ErrorKind::invalid_diagram, "edge " + e.from + " -> " + e.to + ": " + diags[0].reason);
    for (const auto& t : e.m.src.types) {
      const Type& img = e.m.type_map.at(t);
      if (!img.is_base()) throw Error(ErrorKind::invalid_diagram, "edge maps type " + t + " to a non-generator");
      ty.uf.merge(ty.at(a, t), ty.at(b, img.name()));
    }
    for (const auto& td : e.m.src.terms) {
      const Term& img = e.m.term_map.at(td.name);
      if (!img.is(Term::Kind::atom)) throw Error(ErrorKind::invalid_diagram, "edge maps term " + td.name + " to a non-generator");
      tm.uf.merge(tm.at(a, td.name), tm.at(b, img.name()));
    }
  }
  auto tnames = detail::class_names(ty, [](std::size_t) { return true; });
  std::set<std::string> taken;
  for (const auto& [r, n] : tnames) taken.insert(n);
  auto names = detail::class_names(tm, [](std::size_t) { return true; }, taken);

  Glued out;
  out.spec.name = std::move(name);
  std::set<std::size_t> seen_t, seen_f;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const Spec& sp = d.nodes[i].spec;
    Morphism inj{"in_" + d.nodes[i].id, sp, {}, {}, {}};
    for (const auto& t : sp.types) {
      std::size_t r = ty.uf.find(ty.at(static_cast<int>(i), t));
      inj.type_map[t] = Type::base(tnames.at(r));
      if (seen_t.insert(r).second) out.spec.types.push_back(tnames.at(r));
    }
    for (const auto& td : sp.terms) {
      std::size_t r = tm.uf.find(tm.at(static_cast<int>(i), td.name));
      inj.term_map[td.name] = Term::atom(names.at(r));
      if (seen_f.insert(r).second) {
        out.spec.terms.push_back({names.at(r), apply(inj, td.dom), apply(inj, td.cod), td.pure});
      } else if (td.pure) {
        for (auto& x : out.spec.terms)
          if (x.name == names.at(r)) x.pure = true;
      }
    }
    for (const auto& q : sp.equations) {
      Equation e = apply(inj, q);
      bool dup = false;
      for (auto& x : out.spec.equations) {
        if (x == e) dup = true;
        else if (x.name == e.name) e.name = fresh_name(Spec{}, e.name + "#" + std::to_string(i));
      }
      if (!dup) out.spec.equations.push_back(e);
    }
    if (sp.param_type && !out.spec.param_type) out.spec.param_type = apply(inj, Type::base(*sp.param_type)).name();
    if (sp.param_const && !out.spec.param_const) out.spec.param_const = apply(inj, Term::atom(*sp.param_const)).name();
    out.injections[d.nodes[i].id] = std::move(inj);
  }
  require_valid(out.spec);
  for (auto& [id, inj] : out.injections) inj.dst = out.spec;
  return out;
}

/// A renaming of generators turning `a` into `b`, if there is one preserving
/// declaration order (types, terms, then equations by position).
inline std::optional<Morphism> order_renaming(const Spec& a, const Spec& b) {
  if (a.types.size() != b.types.size() || a.terms.size() != b.terms.size() ||
      a.equations.size() != b.equations.size())
    return std::nullopt;
  Morphism m{"rename", a, b, {}, {}};
  for (std::size_t i = 0; i < a.types.size(); ++i) m.type_map[a.types[i]] = Type::base(b.types[i]);
  for (std::size_t i = 0; i < a.terms.size(); ++i) m.term_map[a.terms[i].name] = Term::atom(b.terms[i].name);
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (!(apply(m, a.terms[i].dom) == b.terms[i].dom) || !(apply(m, a.terms[i].cod) == b.terms[i].cod) ||
        a.terms[i].pure != b.terms[i].pure)
      return std::nullopt;
  }
  for (std::size_t i = 0; i < a.equations.size(); ++i) {
    Equation q = apply(m, a.equations[i]);
    if (!(q.lhs == b.equations[i].lhs) || !(q.rhs == b.equations[i].rhs)) return std::nullopt;
  }
  return m;
}

}  // namespace sketchforge

#endif  // SKETCHFORGE_COLIMIT_HPP
