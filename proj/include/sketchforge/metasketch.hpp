#ifndef SKETCHFORGE_METASKETCH_HPP
#define SKETCHFORGE_METASKETCH_HPP

// Limit sketches and their finite set-valued realizations, with the sketch
// of equational specifications assembled from its fragments over the sketch
// of graphs:
//
//   Type <=dom,codom= Term
//   Cons   pullback of  Term -codom-> Type <-dom- Term   (fst, middle, snd)
//   Comp  >-i-> Cons,   comp  : Comp -> Term
//   Selid >-i0-> Type,  selid : Selid -> Term
//   Type2  product of two copies of Type          (b1, b2)
//   Cone2  limit of  Term -dom-> Type <-dom- Term  (c1, vertex, c2)
//   Prod2 >-j-> Type2,  prod2 : Prod2 -> Cone2
//   Pair  >-bdom-> Cone2, bcodom : Pair -> Prod2, pair : Pair -> Term
//   Unit   limit of the empty diagram,  base0 : Type -> Unit
//   Final >-j0-> Unit,  final : Final -> Type
//   Coll  >-zcodom-> Type, zdom : Coll -> Final, coll : Coll -> Term
//   Para   pairs of parallel terms (left, right),  Equa >-equa-> Para

#include <algorithm>
#include <map>
#include <memory>
#include <tuple>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "normalize.hpp"
#include "parser.hpp"
#include "spec.hpp"
#include "syntax.hpp"

namespace sketchforge {

struct SketchArrow {
  std::string name, src, dst;
  friend bool operator==(const SketchArrow&, const SketchArrow&) = default;
};

/// A path of arrows in application order; `from` names the start point, so
/// that the empty path is the identity there.
struct SketchPath {
  std::string from;
  std::vector<std::string> arrows;
  friend bool operator==(const SketchPath&, const SketchPath&) = default;
};

struct SketchCone {
  std::string name;
  std::string vertex;
  std::vector<std::pair<std::string, std::string>> nodes;              // (node id, point)
  std::vector<std::tuple<std::string, std::string, std::string>> edges;  // (arrow, from node, to node)
  std::vector<SketchPath> projections;                                  // one per node
  friend bool operator==(const SketchCone&, const SketchCone&) = default;
};

struct PotentialComposite {
  std::string first, second, composite;  // composite = second . first
  friend bool operator==(const PotentialComposite&, const PotentialComposite&) = default;
};

/// An arrow into the vertex of a potential limit, with the legs it mediates.
struct PotentialTuple {
  std::string limit;
  std::string arrow;
  std::vector<SketchPath> legs;
  friend bool operator==(const PotentialTuple&, const PotentialTuple&) = default;
};

struct LimitSketch {
  std::string name;
  std::vector<std::string> points;
  std::vector<SketchArrow> arrows;
  std::vector<std::pair<std::string, std::string>> identities;  // (arrow, point)
  std::vector<PotentialComposite> composites;
  std::vector<SketchCone> cones;
  std::vector<PotentialTuple> tuples;
  std::vector<std::pair<SketchPath, SketchPath>> equalities;
  std::vector<std::string> monos;

  const SketchArrow& arrow(const std::string& n) const {
    for (const auto& a : arrows)
      if (a.name == n) return a;
    throw Error(ErrorKind::unknown_symbol, name + ": no arrow " + n);
  }
  bool has_point(const std::string& p) const { return std::find(points.begin(), points.end(), p) != points.end(); }
  bool has_arrow(const std::string& n) const {
    return std::any_of(arrows.begin(), arrows.end(), [&](const SketchArrow& a) { return a.name == n; });
  }
  friend bool operator==(const LimitSketch&, const LimitSketch&) = default;
};

struct SketchMorphism {
  std::string name;
  const LimitSketch* from = nullptr;
  const LimitSketch* to = nullptr;
  std::map<std::string, std::string> points;
  std::map<std::string, std::string> arrows;
};

struct Realization {
  const LimitSketch* over = nullptr;
  std::map<std::string, std::vector<std::string>> sets;
  std::map<std::string, std::vector<int>> fns;

  std::size_t size(const std::string& p) const { return sets.at(p).size(); }
  int index(const std::string& p, const std::string& label) const {
    const auto& s = sets.at(p);
    auto it = std::find(s.begin(), s.end(), label);
    if (it == s.end()) throw Error(ErrorKind::value_out_of_carrier, label + " is not in " + p);
    return static_cast<int>(it - s.begin());
  }
  friend bool operator==(const Realization& a, const Realization& b) { return a.sets == b.sets && a.fns == b.fns; }
};

// ---------------------------------------------------------------------------
// checking

struct SketchViolation {
  std::string kind;  // e.g. ConeNotLimiting, NotMono, EqualityFails
  std::string where;
  std::string detail;
  friend bool operator==(const SketchViolation&, const SketchViolation&) = default;
};

inline std::string path_target(const LimitSketch& k, const SketchPath& p) {
  std::string at = p.from;
  for (const auto& a : p.arrows) {
    const SketchArrow& ar = k.arrow(a);
    if (ar.src != at) throw Error(ErrorKind::ill_typed, "path through " + a + " does not start at " + at);
    at = ar.dst;
  }
  return at;
}

inline int eval_path(const Realization& r, const SketchPath& p, int x) {
  for (const auto& a : p.arrows) x = r.fns.at(a).at(x);
  return x;
}

/// The limit of the image of a cone's base, as tuples indexed like `c.nodes`.
inline std::vector<std::vector<int>> limit_of(const Realization& r, const SketchCone& c) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(c.nodes.size(), 0);
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < c.nodes.size(); ++i) pos[c.nodes[i].first] = i;
  auto ok = [&](std::size_t upto) {
    for (const auto& [a, from, to] : c.edges) {
      std::size_t f = pos.at(from), t = pos.at(to);
      if (f >= upto || t >= upto) continue;
      if (r.fns.at(a).at(cur[f]) != cur[t]) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == c.nodes.size()) {
      out.push_back(cur);
      return;
    }
    std::size_t n = r.size(c.nodes[k].second);
    for (std::size_t v = 0; v < n; ++v) {
      cur[k] = static_cast<int>(v);
      if (ok(k + 1)) self(self, k + 1);
    }
  };
  rec(rec, 0);
  return out;
}

inline std::vector<SketchViolation> check_realization(const Realization& r) {
  std::vector<SketchViolation> out;
  const LimitSketch& k = *r.over;
  for (const auto& p : k.points)
    if (!r.sets.count(p)) out.push_back({"MissingSet", p, ""});
  for (const auto& a : k.arrows) {
    auto it = r.fns.find(a.name);
    if (it == r.fns.end() || !r.sets.count(a.src) || !r.sets.count(a.dst)) {
      out.push_back({"MissingFunction", a.name, ""});
      continue;
    }
    if (it->second.size() != r.size(a.src)) out.push_back({"BadArity", a.name, ""});
    for (int v : it->second)
      if (v < 0 || static_cast<std::size_t>(v) >= r.size(a.dst)) {
        out.push_back({"ValueOutOfSet", a.name, std::to_string(v)});
        break;
      }
  }
  if (!out.empty()) return out;

  for (const auto& [a, p] : k.identities)
    for (std::size_t x = 0; x < r.size(p); ++x)
      if (r.fns.at(a)[x] != static_cast<int>(x)) {
        out.push_back({"NotIdentity", a, r.sets.at(p)[x]});
        break;
      }
  for (const auto& c : k.composites) {
    const auto& src = k.arrow(c.first).src;
    for (std::size_t x = 0; x < r.size(src); ++x)
      if (r.fns.at(c.second)[r.fns.at(c.first)[x]] != r.fns.at(c.composite)[x]) {
        out.push_back({"NotComposite", c.composite, r.sets.at(src)[x]});
        break;
      }
  }
  for (const auto& [l, rr] : k.equalities) {
    std::string where = l.from;
    for (const auto& a : l.arrows) where += "." + a;
    where += " = ";
    for (const auto& a : rr.arrows) where += a + ".";
    for (std::size_t x = 0; x < r.size(l.from); ++x)
      if (eval_path(r, l, static_cast<int>(x)) != eval_path(r, rr, static_cast<int>(x))) {
        out.push_back({"EqualityFails", where, r.sets.at(l.from)[x]});
        break;
      }
  }
  for (const auto& m : k.monos) {
    std::set<int> seen;
    for (int v : r.fns.at(m))
      if (!seen.insert(v).second) {
        out.push_back({"NotMono", m, r.sets.at(k.arrow(m).dst)[v]});
        break;
      }
  }
  for (const auto& c : k.cones) {
    auto lim = limit_of(r, c);
    std::set<std::vector<int>> hit;
    bool bad = false;
    for (std::size_t v = 0; v < r.size(c.vertex) && !bad; ++v) {
      std::vector<int> t;
      for (const auto& p : c.projections) t.push_back(eval_path(r, p, static_cast<int>(v)));
      if (!std::binary_search(lim.begin(), lim.end(), t)) {
        out.push_back({"ConeNotCommuting", c.name, r.sets.at(c.vertex)[v]});
        bad = true;
      } else if (!hit.insert(t).second) {
        out.push_back({"ConeNotLimiting", c.name, "two elements with the same projections"});
        bad = true;
      }
    }
    if (!bad && hit.size() != lim.size())
      out.push_back({"ConeNotLimiting", c.name, std::to_string(lim.size() - hit.size()) + " limit elements missed"});
  }
  for (const auto& t : k.tuples) {
    const SketchCone* c = nullptr;
    for (const auto& x : k.cones)
      if (x.name == t.limit) c = &x;
    if (!c) {
      out.push_back({"UnknownLimit", t.arrow, t.limit});
      continue;
    }
    const auto& src = k.arrow(t.arrow).src;
    for (std::size_t x = 0; x < r.size(src); ++x) {
      int v = r.fns.at(t.arrow)[x];
      bool good = true;
      for (std::size_t i = 0; i < t.legs.size(); ++i)
        good = good && eval_path(r, c->projections[i], v) == eval_path(r, t.legs[i], static_cast<int>(x));
      if (!good) {
        out.push_back({"NotMediating", t.arrow, r.sets.at(src)[x]});
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// the builtin sketches

struct BuiltinSketches {
  LimitSketch gr;      // graphs
  LimitSketch grco;    // graphs with composites
  LimitSketch spec;    // specifications without equations
  LimitSketch eqS;     // specifications with equations
  SketchMorphism gr_to_grco, grco_to_eqS, gr_to_eqS, spec_to_eqS;
};

namespace detail {

inline SketchPath path(std::string from, std::vector<std::string> arrows) { return {std::move(from), std::move(arrows)}; }

inline LimitSketch sketch_gr() {
  LimitSketch k;
  k.name = "E_gr";
  k.points = {"Type", "Term"};
  k.arrows = {{"dom", "Term", "Type"}, {"codom", "Term", "Type"}};
  return k;
}

inline void add_composites(LimitSketch& k) {
  for (const auto* p : {"Cons", "Comp"}) k.points.push_back(p);
  k.arrows.insert(k.arrows.end(), {{"fst", "Cons", "Term"},
                                    {"middle", "Cons", "Type"},
                                    {"snd", "Cons", "Term"},
                                    {"i", "Comp", "Cons"},
                                    {"comp", "Comp", "Term"}});
  k.cones.push_back({"Cons",
                     "Cons",
                     {{"f", "Term"}, {"m", "Type"}, {"g", "Term"}},
                     {{"codom", "f", "m"}, {"dom", "g", "m"}},
                     {path("Cons", {"fst"}), path("Cons", {"middle"}), path("Cons", {"snd"})}});
  k.monos.push_back("i");
  k.equalities.push_back({path("Comp", {"comp", "dom"}), path("Comp", {"i", "fst", "dom"})});
  k.equalities.push_back({path("Comp", {"comp", "codom"}), path("Comp", {"i", "snd", "codom"})});
}

inline void add_identities(LimitSketch& k) {
  k.points.push_back("Selid");
  k.arrows.insert(k.arrows.end(), {{"i0", "Selid", "Type"}, {"selid", "Selid", "Term"}});
  k.monos.push_back("i0");
  k.equalities.push_back({path("Selid", {"selid", "dom"}), path("Selid", {"i0"})});
  k.equalities.push_back({path("Selid", {"selid", "codom"}), path("Selid", {"i0"})});
}

inline void add_products(LimitSketch& k) {
  for (const auto* p : {"Type2", "Cone2", "Prod2", "Pair"}) k.points.push_back(p);
  k.arrows.insert(k.arrows.end(), {{"b1", "Type2", "Type"},
                                    {"b2", "Type2", "Type"},
                                    {"c1", "Cone2", "Term"},
                                    {"vertex", "Cone2", "Type"},
                                    {"c2", "Cone2", "Term"},
                                    {"base", "Cone2", "Type2"},
                                    {"j", "Prod2", "Type2"},
                                    {"prod2", "Prod2", "Cone2"},
                                    {"bdom", "Pair", "Cone2"},
                                    {"bcodom", "Pair", "Prod2"},
                                    {"pair", "Pair", "Term"}});
  k.cones.push_back({"Type2", "Type2", {{"x", "Type"}, {"y", "Type"}}, {}, {path("Type2", {"b1"}), path("Type2", {"b2"})}});
  k.cones.push_back({"Cone2",
                     "Cone2",
                     {{"f", "Term"}, {"v", "Type"}, {"g", "Term"}},
                     {{"dom", "f", "v"}, {"dom", "g", "v"}},
                     {path("Cone2", {"c1"}), path("Cone2", {"vertex"}), path("Cone2", {"c2"})}});
  k.monos.push_back("j");
  k.monos.push_back("bdom");
  k.equalities.push_back({path("Cone2", {"base", "b1"}), path("Cone2", {"c1", "codom"})});
  k.equalities.push_back({path("Cone2", {"base", "b2"}), path("Cone2", {"c2", "codom"})});
  // The cone of a product lies over the product's pair of types.
  k.equalities.push_back({path("Prod2", {"prod2", "base"}), path("Prod2", {"j"})});
  k.equalities.push_back({path("Pair", {"bcodom", "j"}), path("Pair", {"bdom", "base"})});
  k.equalities.push_back({path("Pair", {"pair", "dom"}), path("Pair", {"bdom", "vertex"})});
  k.equalities.push_back({path("Pair", {"pair", "codom"}), path("Pair", {"bcodom", "prod2", "vertex"})});
}

inline void add_terminal(LimitSketch& k) {
  for (const auto* p : {"Unit", "Final", "Coll"}) k.points.push_back(p);
  k.arrows.insert(k.arrows.end(), {{"base0", "Type", "Unit"},
                                    {"j0", "Final", "Unit"},
                                    {"final", "Final", "Type"},
                                    {"zdom", "Coll", "Final"},
                                    {"zcodom", "Coll", "Type"},
                                    {"coll", "Coll", "Term"}});
  k.cones.push_back({"Unit", "Unit", {}, {}, {}});
  k.monos.push_back("j0");
  k.monos.push_back("zcodom");
  k.equalities.push_back({path("Coll", {"coll", "dom"}), path("Coll", {"zcodom"})});
  k.equalities.push_back({path("Coll", {"coll", "codom"}), path("Coll", {"zdom", "final"})});
}

inline void add_equations(LimitSketch& k) {
  for (const auto* p : {"Para", "Equa"}) k.points.push_back(p);
  k.arrows.insert(k.arrows.end(), {{"left", "Para", "Term"}, {"right", "Para", "Term"}, {"equa", "Equa", "Para"}});
  k.cones.push_back({"Para",
                     "Para",
                     {{"l", "Term"}, {"d", "Type"}, {"c", "Type"}, {"r", "Term"}},
                     {{"dom", "l", "d"}, {"codom", "l", "c"}, {"dom", "r", "d"}, {"codom", "r", "c"}},
                     {path("Para", {"left"}), path("Para", {"left", "dom"}), path("Para", {"left", "codom"}),
                      path("Para", {"right"})}});
  k.monos.push_back("equa");
}

inline SketchMorphism inclusion(const std::string& name, const LimitSketch& a, const LimitSketch& b) {
  SketchMorphism m{name, &a, &b, {}, {}};
  for (const auto& p : a.points) {
    if (!b.has_point(p)) throw Error(ErrorKind::spec_mismatch, name + ": missing point " + p);
    m.points[p] = p;
  }
  for (const auto& x : a.arrows) m.arrows[x.name] = b.arrow(x.name).name;
  return m;
}

}  // namespace detail

/// The sketches are returned by value; the morphisms point into the result,
/// so keep it alive (and do not copy it) while using them.
inline std::unique_ptr<BuiltinSketches> builtin_sketches() {
  auto b = std::make_unique<BuiltinSketches>();
  b->gr = detail::sketch_gr();
  b->grco = detail::sketch_gr();
  b->grco.name = "E_grco";
  detail::add_composites(b->grco);
  b->spec = detail::sketch_gr();
  b->spec.name = "E_spec";
  detail::add_composites(b->spec);
  detail::add_identities(b->spec);
  detail::add_products(b->spec);
  detail::add_terminal(b->spec);
  b->eqS = b->spec;
  b->eqS.name = "E_eqS";
  detail::add_equations(b->eqS);
  b->gr_to_grco = detail::inclusion("e_co", b->gr, b->grco);
  b->grco_to_eqS = detail::inclusion("e_co_eq", b->grco, b->eqS);
  b->gr_to_eqS = detail::inclusion("e", b->gr, b->eqS);
  b->spec_to_eqS = detail::inclusion("e_spec", b->spec, b->eqS);
  return b;
}

/// Structural check that a sketch morphism preserves every potential feature.
inline std::vector<SketchViolation> check_sketch_morphism(const SketchMorphism& e) {
  std::vector<SketchViolation> out;
  auto pt = [&](const std::string& p) { return e.points.count(p) ? e.points.at(p) : std::string("?"); };
  auto ar = [&](const std::string& a) { return e.arrows.count(a) ? e.arrows.at(a) : std::string("?"); };
  auto map_path = [&](const SketchPath& p) {
    SketchPath q{pt(p.from), {}};
    for (const auto& a : p.arrows) q.arrows.push_back(ar(a));
    return q;
  };
  for (const auto& a : e.from->arrows) {
    if (!e.to->has_arrow(ar(a.name))) {
      out.push_back({"UnmappedArrow", a.name, ""});
      continue;
    }
    const SketchArrow& b = e.to->arrow(ar(a.name));
    if (b.src != pt(a.src) || b.dst != pt(a.dst)) out.push_back({"NotAGraphMorphism", a.name, ""});
  }
  for (const auto& [a, p] : e.from->identities)
    if (std::find(e.to->identities.begin(), e.to->identities.end(), std::make_pair(ar(a), pt(p))) == e.to->identities.end())
      out.push_back({"IdentityNotPreserved", a, ""});
  for (const auto& c : e.from->composites) {
    PotentialComposite d{ar(c.first), ar(c.second), ar(c.composite)};
    if (std::find(e.to->composites.begin(), e.to->composites.end(), d) == e.to->composites.end())
      out.push_back({"CompositeNotPreserved", c.composite, ""});
  }
  for (const auto& c : e.from->cones) {
    bool found = false;
    for (const auto& d : e.to->cones) {
      if (d.vertex != pt(c.vertex) || d.nodes.size() != c.nodes.size()) continue;
      bool same = true;
      for (std::size_t i = 0; i < c.nodes.size(); ++i) same = same && d.nodes[i].second == pt(c.nodes[i].second);
      for (std::size_t i = 0; i < c.projections.size(); ++i) same = same && d.projections[i] == map_path(c.projections[i]);
      found = found || same;
    }
    if (!found) out.push_back({"ConeNotPreserved", c.name, ""});
  }
  for (const auto& [l, r] : e.from->equalities) {
    auto q = std::make_pair(map_path(l), map_path(r));
    auto q2 = std::make_pair(q.second, q.first);
    if (std::find(e.to->equalities.begin(), e.to->equalities.end(), q) == e.to->equalities.end() &&
        std::find(e.to->equalities.begin(), e.to->equalities.end(), q2) == e.to->equalities.end())
      out.push_back({"EqualityNotPreserved", l.from, ""});
  }
  for (const auto& m : e.from->monos)
    if (std::find(e.to->monos.begin(), e.to->monos.end(), ar(m)) == e.to->monos.end())
      out.push_back({"MonoNotPreserved", m, ""});
  return out;
}

inline SketchMorphism compose(const SketchMorphism& g, const SketchMorphism& f) {
  if (f.to != g.from) throw Error(ErrorKind::spec_mismatch, "cannot compose " + g.name + " after " + f.name);
  SketchMorphism out{g.name + "_" + f.name, f.from, g.to, {}, {}};
  for (const auto& [p, q] : f.points) out.points[p] = g.points.at(q);
  for (const auto& [a, b] : f.arrows) out.arrows[a] = g.arrows.at(b);
  return out;
}

/// The forgetful functor: precomposition with a sketch morphism.
inline Realization precompose(const SketchMorphism& e, const Realization& r) {
  if (r.over != e.to) throw Error(ErrorKind::spec_mismatch, "realization is not over the target of " + e.name);
  Realization out;
  out.over = e.from;
  for (const auto& p : e.from->points) out.sets[p] = r.sets.at(e.points.at(p));
  for (const auto& a : e.from->arrows) out.fns[a.name] = r.fns.at(e.arrows.at(a.name));
  return out;
}

// ---------------------------------------------------------------------------
// specifications as realizations

namespace detail {

inline std::string angle(const std::string& a, const std::string& b) { return "<" + a + ", " + b + ">"; }

}  // namespace detail

/// The realization of the specification sketch presented by `s`: its types
/// (closed under subexpressions), the normal forms of the terms occurring in
/// declarations and equations with their subterms, and the features present.
inline Realization spec_to_realization(const Spec& s, const LimitSketch& eqS, std::size_t max_terms = 5000) {
  require_valid(s);
  Normalizer nz(s);
  std::vector<Type> types;
  std::vector<Term> terms;
  auto add_type = [&](auto&& self, const Type& t) -> void {
    if (t.is_prod()) {
      self(self, t.left());
      self(self, t.right());
    }
    if (std::find(types.begin(), types.end(), t) == types.end()) types.push_back(t);
  };
  auto add_term = [&](auto&& self, const Term& e) -> void {
    if (e.is(Term::Kind::comp) || e.is(Term::Kind::pair)) {
      self(self, e.right());
      self(self, e.left());
    }
    add_type(add_type, nz.dom(e));
    add_type(add_type, nz.cod(e));
    if (std::find(terms.begin(), terms.end(), e) == terms.end()) terms.push_back(e);
    if (terms.size() > max_terms) throw Error(ErrorKind::non_finite_universe, "more than " + std::to_string(max_terms) + " terms");
  };
  for (const auto& t : s.types) add_type(add_type, Type::base(t));
  for (const auto& d : s.terms) add_term(add_term, Term::atom(d.name));
  std::vector<std::pair<Term, Term>> eqs;
  for (const auto& q : s.equations) {
    Term l = nz.norm(q.lhs), r = nz.norm(q.rhs);
    add_term(add_term, l);
    add_term(add_term, r);
    eqs.push_back({l, r});
  }
  // Projections of every product type, so that products have their cones.
  for (std::size_t i = 0; i < types.size(); ++i)
    if (types[i].is_prod()) {
      add_term(add_term, Term::proj1(types[i].left(), types[i].right()));
      add_term(add_term, Term::proj2(types[i].left(), types[i].right()));
    }

  Realization r;
  r.over = &eqS;
  auto& S = r.sets;
  auto& F = r.fns;
  auto ty_index = [&](const Type& t) {
    return static_cast<int>(std::find(types.begin(), types.end(), t) - types.begin());
  };
  auto tm_index = [&](const Term& e) {
    return static_cast<int>(std::find(terms.begin(), terms.end(), e) - terms.begin());
  };
  for (const auto& t : types) S["Type"].push_back(to_string(t));
  S["Type"];
  for (const auto& e : terms) {
    S["Term"].push_back(to_string(e));
    F["dom"].push_back(ty_index(nz.dom(e)));
    F["codom"].push_back(ty_index(nz.cod(e)));
  }
  S["Term"];
  F["dom"];
  F["codom"];
  const int nT = static_cast<int>(types.size()), nE = static_cast<int>(terms.size());

  // Cons: consecutive pairs; Comp: the composites occurring.
  std::map<std::pair<int, int>, int> cons;
  S["Cons"];
  for (int f = 0; f < nE; ++f)
    for (int g = 0; g < nE; ++g)
      if (F["codom"][f] == F["dom"][g]) {
        cons[{f, g}] = static_cast<int>(S["Cons"].size());
        S["Cons"].push_back(detail::angle(S["Term"][f], S["Term"][g]));
        F["fst"].push_back(f);
        F["middle"].push_back(F["codom"][f]);
        F["snd"].push_back(g);
      }
  for (const auto* a : {"fst", "middle", "snd", "i", "comp"}) F[a];
  S["Comp"];
  for (int e = 0; e < nE; ++e)
    if (terms[e].is(Term::Kind::comp)) {
      int f = tm_index(terms[e].right()), g = tm_index(terms[e].left());
      S["Comp"].push_back(detail::angle(S["Term"][f], S["Term"][g]));
      F["i"].push_back(cons.at({f, g}));
      F["comp"].push_back(e);
    }

  // Selid: the types whose identity occurs.
  S["Selid"];
  F["i0"];
  F["selid"];
  for (int e = 0; e < nE; ++e)
    if (terms[e].is(Term::Kind::id)) {
      S["Selid"].push_back(to_string(terms[e].type_a()));
      F["i0"].push_back(ty_index(terms[e].type_a()));
      F["selid"].push_back(e);
    }

  // Type2 and Cone2 are limits.
  S["Type2"];
  for (const auto* a : {"b1", "b2", "c1", "vertex", "c2", "base", "j", "prod2", "bdom", "bcodom", "pair"}) F[a];
  for (int x = 0; x < nT; ++x)
    for (int y = 0; y < nT; ++y) {
      S["Type2"].push_back(detail::angle(S["Type"][x], S["Type"][y]));
      F["b1"].push_back(x);
      F["b2"].push_back(y);
    }
  std::map<std::pair<int, int>, int> spans;
  S["Cone2"];
  for (int f = 0; f < nE; ++f)
    for (int g = 0; g < nE; ++g)
      if (F["dom"][f] == F["dom"][g]) {
        spans[{f, g}] = static_cast<int>(S["Cone2"].size());
        S["Cone2"].push_back(detail::angle(S["Term"][f], S["Term"][g]));
        F["c1"].push_back(f);
        F["vertex"].push_back(F["dom"][f]);
        F["c2"].push_back(g);
        F["base"].push_back(F["codom"][f] * nT + F["codom"][g]);
      }
  // Prod2: product types; Pair: pairs occurring.
  std::map<int, int> prods;
  S["Prod2"];
  for (int x = 0; x < nT; ++x)
    if (types[x].is_prod()) {
      int l = ty_index(types[x].left()), rr = ty_index(types[x].right());
      prods[x] = static_cast<int>(S["Prod2"].size());
      S["Prod2"].push_back(detail::angle(S["Type"][l], S["Type"][rr]));
      F["j"].push_back(l * nT + rr);
      int p1 = tm_index(Term::proj1(types[x].left(), types[x].right()));
      int p2 = tm_index(Term::proj2(types[x].left(), types[x].right()));
      F["prod2"].push_back(spans.at({p1, p2}));
    }
  S["Pair"];
  for (int e = 0; e < nE; ++e)
    if (terms[e].is(Term::Kind::pair)) {
      int f = tm_index(terms[e].left()), g = tm_index(terms[e].right());
      S["Pair"].push_back(S["Term"][e]);
      F["bdom"].push_back(spans.at({f, g}));
      F["bcodom"].push_back(prods.at(ty_index(nz.cod(terms[e]))));
      F["pair"].push_back(e);
    }

  // Unit, Final, Coll.
  S["Unit"] = {"*"};
  F["base0"].assign(nT, 0);
  S["Final"];
  for (const auto* a : {"j0", "final", "zdom", "zcodom", "coll"}) F[a];
  int unit = ty_index(Type::unit());
  if (unit < nT) {
    S["Final"].push_back("*");
    F["j0"].push_back(0);
    F["final"].push_back(unit);
  }
  S["Coll"];
  for (int e = 0; e < nE; ++e)
    if (terms[e].is(Term::Kind::bang)) {
      S["Coll"].push_back(S["Term"][e]);
      F["zdom"].push_back(0);
      F["zcodom"].push_back(ty_index(terms[e].type_a()));
      F["coll"].push_back(e);
    }

  // Para: parallel pairs; Equa: the equations.
  if (eqS.has_point("Para")) {
    std::map<std::pair<int, int>, int> para;
    S["Para"];
    F["left"];
    F["right"];
    F["equa"];
    for (int f = 0; f < nE; ++f)
      for (int g = 0; g < nE; ++g)
        if (F["dom"][f] == F["dom"][g] && F["codom"][f] == F["codom"][g]) {
          para[{f, g}] = static_cast<int>(S["Para"].size());
          S["Para"].push_back(detail::angle(S["Term"][f], S["Term"][g]));
          F["left"].push_back(f);
          F["right"].push_back(g);
        }
    S["Equa"];
    for (const auto& [l, rr] : eqs) {
      std::string lbl = to_string(l) + " == " + to_string(rr);
      if (std::find(S["Equa"].begin(), S["Equa"].end(), lbl) != S["Equa"].end()) continue;
      S["Equa"].push_back(lbl);
      F["equa"].push_back(para.at({tm_index(l), tm_index(rr)}));
    }
  }
  return r;
}

/// Reads a presentation back: base types, atomic terms, and the equations.
inline Spec realization_to_spec(const Realization& r, std::string name = "S") {
  auto v = check_realization(r);
  if (!v.empty()) throw Error(ErrorKind::invalid_model, "realization: " + v.front().kind + " at " + v.front().where);
  Spec s;
  s.name = std::move(name);
  auto ident = [](const std::string& x) {
    return !x.empty() && detail::ident_start(x[0]) && std::all_of(x.begin(), x.end(), [](char c) { return detail::ident_char(c); });
  };
  for (const auto& t : r.sets.at("Type"))
    if (ident(t)) s.types.push_back(t);
  const auto& terms = r.sets.at("Term");
  for (std::size_t e = 0; e < terms.size(); ++e) {
    const std::string& lbl = terms[e];
    if (!ident(lbl)) continue;
    Type d = parse_type(s, r.sets.at("Type")[r.fns.at("dom")[e]]);
    Type c = parse_type(s, r.sets.at("Type")[r.fns.at("codom")[e]]);
    s.terms.push_back({lbl, d, c, false});
  }
  if (r.sets.count("Equa")) {
    for (std::size_t q = 0; q < r.sets.at("Equa").size(); ++q) {
      int p = r.fns.at("equa")[q];
      Term l = parse_term(s, terms[r.fns.at("left")[p]]);
      Term rr = parse_term(s, terms[r.fns.at("right")[p]]);
      s.equations.push_back({"e" + std::to_string(q + 1), l, rr});
    }
  }
  require_valid(s);
  return s;
}

}  // namespace sketchforge

#endif  // SKETCHFORGE_METASKETCH_HPP
