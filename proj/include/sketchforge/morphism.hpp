#ifndef SKETCHFORGE_MORPHISM_HPP
#define SKETCHFORGE_MORPHISM_HPP

#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "spec.hpp"
#include "syntax.hpp"

namespace sketchforge {

/// Presentation-level morphism: types go to type expressions of `dst`,
/// declared terms go to term expressions of `dst`.
struct Morphism {
  std::string name;
  Spec src;
  Spec dst;
  std::map<std::string, Type> type_map;
  std::map<std::string, Term> term_map;

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

inline Type apply(const Morphism& m, const Type& t) {
  switch (t.kind()) {
    case Type::Kind::unit: return t;
    case Type::Kind::base: {
      auto it = m.type_map.find(t.name());
      if (it == m.type_map.end()) throw Error(ErrorKind::unknown_symbol, m.name + ": no image for type " + t.name());
      return it->second;
    }
    case Type::Kind::prod: return Type::prod(apply(m, t.left()), apply(m, t.right()));
  }
  return t;
}

inline Term apply(const Morphism& m, const Term& e) {
  switch (e.kind()) {
    case Term::Kind::atom: {
      auto it = m.term_map.find(e.name());
      if (it == m.term_map.end()) throw Error(ErrorKind::unknown_symbol, m.name + ": no image for term " + e.name());
      return it->second;
    }
    case Term::Kind::id: return Term::id(apply(m, e.type_a()));
    case Term::Kind::bang: return Term::bang(apply(m, e.type_a()));
    case Term::Kind::proj1: return Term::proj1(apply(m, e.type_a()), apply(m, e.type_b()));
    case Term::Kind::proj2: return Term::proj2(apply(m, e.type_a()), apply(m, e.type_b()));
    case Term::Kind::comp: return Term::comp(apply(m, e.left()), apply(m, e.right()));
    case Term::Kind::pair: return Term::pair(apply(m, e.left()), apply(m, e.right()));
  }
  return e;
}

inline Equation apply(const Morphism& m, const Equation& q) { return {q.name, apply(m, q.lhs), apply(m, q.rhs)}; }

inline std::string composite_name(const std::string& g, const std::string& f) { return g + "_" + f; }

/// `g . f`; the codomain of `f` must be the domain of `g`.
inline Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.dst == g.src))
    throw Error(ErrorKind::spec_mismatch, "cannot compose " + g.name + " after " + f.name + ": " + f.dst.name +
                                              " is not " + g.src.name);
  Morphism out{composite_name(g.name, f.name), f.src, g.dst, {}, {}};
  for (const auto& [x, t] : f.type_map) out.type_map[x] = apply(g, t);
  for (const auto& [x, e] : f.term_map) out.term_map[x] = apply(g, e);
  return out;
}

inline Morphism identity(const Spec& s) {
  Morphism out{"id_" + s.name, s, s, {}, {}};
  for (const auto& t : s.types) out.type_map[t] = Type::base(t);
  for (const auto& d : s.terms) out.term_map[d.name] = Term::atom(d.name);
  return out;
}

/// Checks that every generator has an image of the right shape. Equation
/// preservation is a deduction question and lives in deduction.hpp.
inline std::vector<Diagnostic> check_typing(const Morphism& m) {
  std::vector<Diagnostic> out;
  for (const auto& t : m.src.types) {
    auto it = m.type_map.find(t);
    if (it == m.type_map.end()) {
      out.push_back({"UnknownSymbol", "type " + t, "no image"});
      continue;
    }
    try {
      require_declared(m.dst, it->second);
    } catch (const Error& e) {
      out.push_back({"UnknownSymbol", "type " + t, e.what()});
    }
  }
  if (!out.empty()) return out;
  for (const auto& d : m.src.terms) {
    auto it = m.term_map.find(d.name);
    if (it == m.term_map.end()) {
      out.push_back({"UnknownSymbol", "term " + d.name, "no image"});
      continue;
    }
    try {
      Signature sig = infer(m.dst, it->second);
      Signature want{apply(m, d.dom), apply(m, d.cod)};
      if (!(sig == want))
        out.push_back({"IllTyped", "term " + d.name,
                       to_string(it->second) + " has type " + to_string(sig.dom) + " -> " + to_string(sig.cod) +
                           ", expected " + to_string(want.dom) + " -> " + to_string(want.cod)});
    } catch (const Error& e) {
      out.push_back({"IllTyped", "term " + d.name, e.what()});
    }
  }
  return out;
}

inline void require_typed(const Morphism& m) {
  auto diags = check_typing(m);
  if (!diags.empty())
    throw Error(ErrorKind::ill_typed, m.name + ": " + diags.front().location + ": " + diags.front().reason);
}

/// Decoration preservation: pure generators land on pure expressions.
inline bool preserves_purity(const Morphism& m) {
  for (const auto& d : m.src.terms)
    if (d.pure && !is_pure(m.dst, m.term_map.at(d.name))) return false;
  return true;
}

/// Transformation between two morphisms with common endpoints, given by one
/// component per declared type of the source.
struct NatTrans {
  std::string name;
  Morphism from;
  Morphism to;
  std::map<std::string, Term> components;

  friend bool operator==(const NatTrans&, const NatTrans&) = default;
};

/// Component at an arbitrary type expression; products are handled componentwise.
inline Term component(const NatTrans& n, const Type& t) {
  switch (t.kind()) {
    case Type::Kind::unit: return Term::id(Type::unit());
    case Type::Kind::base: {
      auto it = n.components.find(t.name());
      if (it == n.components.end()) throw Error(ErrorKind::unknown_symbol, n.name + ": no component at " + t.name());
      return it->second;
    }
    case Type::Kind::prod: {
      Type fl = apply(n.from, t.left()), fr = apply(n.from, t.right());
      return Term::pair(Term::comp(component(n, t.left()), Term::proj1(fl, fr)),
                        Term::comp(component(n, t.right()), Term::proj2(fl, fr)));
    }
  }
  return Term::id(t);
}

inline std::vector<Diagnostic> check_typing(const NatTrans& n) {
  std::vector<Diagnostic> out;
  if (!(n.from.src == n.to.src) || !(n.from.dst == n.to.dst)) {
    out.push_back({"SpecMismatch", n.name, "morphisms do not share endpoints"});
    return out;
  }
  for (const auto& t : n.from.src.types) {
    auto it = n.components.find(t);
    if (it == n.components.end()) {
      out.push_back({"UnknownSymbol", "component " + t, "missing"});
      continue;
    }
    try {
      Signature sig = infer(n.from.dst, it->second);
      Type x = Type::base(t);
      if (!(sig.dom == apply(n.from, x)) || !(sig.cod == apply(n.to, x)))
        out.push_back({"IllTyped", "component " + t, to_string(it->second) + " has the wrong type"});
    } catch (const Error& e) {
      out.push_back({"IllTyped", "component " + t, e.what()});
    }
  }
  return out;
}

/// The two sides of the naturality square at a declared term `f: X -> Y`:
/// to(f) . n_X  and  n_Y . from(f).
inline std::pair<Term, Term> naturality_square(const NatTrans& n, const TermDecl& f) {
  return {Term::comp(apply(n.to, Term::atom(f.name)), component(n, f.dom)),
          Term::comp(component(n, f.cod), apply(n.from, Term::atom(f.name)))};
}

}  // namespace sketchforge

#endif  // SKETCHFORGE_MORPHISM_HPP
