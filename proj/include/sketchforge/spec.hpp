#ifndef SKETCHFORGE_SPEC_HPP
#define SKETCHFORGE_SPEC_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "syntax.hpp"

namespace sketchforge {

struct TermDecl {
  std::string name;
  Type dom;
  Type cod;
  bool pure = false;

  friend bool operator==(const TermDecl&, const TermDecl&) = default;
};

struct Equation {
  std::string name;
  Term lhs;
  Term rhs;

  friend bool operator==(const Equation&, const Equation&) = default;
};

/// A finite presentation. `param_type` turns it into a parameterized
/// presentation; `param_const` additionally names the parameter.
struct Spec {
  std::string name;
  std::vector<std::string> types;
  std::vector<TermDecl> terms;
  std::vector<Equation> equations;
  std::optional<std::string> param_type;
  std::optional<std::string> param_const;

  bool has_type(const std::string& t) const { return std::find(types.begin(), types.end(), t) != types.end(); }

  const TermDecl* find_term(const std::string& f) const {
    for (const auto& d : terms)
      if (d.name == f) return &d;
    return nullptr;
  }

  const Equation* find_equation(const std::string& e) const {
    for (const auto& q : equations)
      if (q.name == e) return &q;
    return nullptr;
  }

  bool has_symbol(const std::string& s) const { return has_type(s) || find_term(s) != nullptr; }

  friend bool operator==(const Spec&, const Spec&) = default;
};

struct Diagnostic {
  std::string kind;      // UnknownSymbol, NonParallelEquation, IllTyped, DuplicateName, BadParameter
  std::string location;  // "term f", "eq assoc", ...
  std::string reason;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct Signature {
  Type dom;
  Type cod;
  friend bool operator==(const Signature&, const Signature&) = default;
};

inline void require_declared(const Spec& s, const Type& t) {
  switch (t.kind()) {
    case Type::Kind::unit: return;
    case Type::Kind::base:
      if (!s.has_type(t.name())) throw Error(ErrorKind::unknown_symbol, "type " + t.name());
      return;
    case Type::Kind::prod:
      require_declared(s, t.left());
      require_declared(s, t.right());
      return;
  }
}

inline Signature infer(const Spec& s, const Term& e) {
  switch (e.kind()) {
    case Term::Kind::atom: {
      const TermDecl* d = s.find_term(e.name());
      if (!d) throw Error(ErrorKind::unknown_symbol, e.name());
      return {d->dom, d->cod};
    }
    case Term::Kind::id:
      require_declared(s, e.type_a());
      return {e.type_a(), e.type_a()};
    case Term::Kind::bang:
      require_declared(s, e.type_a());
      return {e.type_a(), Type::unit()};
    case Term::Kind::proj1:
    case Term::Kind::proj2: {
      require_declared(s, e.type_a());
      require_declared(s, e.type_b());
      Type p = Type::prod(e.type_a(), e.type_b());
      return {p, e.is(Term::Kind::proj1) ? e.type_a() : e.type_b()};
    }
    case Term::Kind::comp: {
      Signature g = infer(s, e.left());
      Signature f = infer(s, e.right());
      if (!(f.cod == g.dom))
        throw Error(ErrorKind::ill_typed, to_string(e) + ": " + to_string(f.cod) + " does not match " +
                                              to_string(g.dom));
      return {f.dom, g.cod};
    }
    case Term::Kind::pair: {
      Signature a = infer(s, e.left());
      Signature b = infer(s, e.right());
      if (!(a.dom == b.dom))
        throw Error(ErrorKind::ill_typed, to_string(e) + ": components have domains " + to_string(a.dom) +
                                              " and " + to_string(b.dom));
      return {a.dom, Type::prod(a.cod, b.cod)};
    }
  }
  throw Error(ErrorKind::ill_typed, "malformed term");
}

/// A term is pure when every atom it mentions is declared pure.
inline bool is_pure(const Spec& s, const Term& e) {
  infer(s, e);
  std::vector<std::string> atoms;
  collect_atoms(e, atoms);
  return std::all_of(atoms.begin(), atoms.end(), [&](const std::string& a) { return s.find_term(a)->pure; });
}

inline bool is_pure_equation(const Spec& s, const Equation& q) { return is_pure(s, q.lhs) && is_pure(s, q.rhs); }

namespace detail {
inline void type_diagnostics(const Spec& s, const Type& t, const std::string& where, std::vector<Diagnostic>& out) {
  std::vector<std::string> names;
  collect_base_names(t, names);
  for (const auto& n : names)
    if (!s.has_type(n)) out.push_back({"UnknownSymbol", where, n});
}

inline void term_diagnostics(const Spec& s, const Term& e, const std::string& where, std::vector<Diagnostic>& out) {
  std::vector<std::string> atoms;
  collect_atoms(e, atoms);
  bool bad = false;
  for (const auto& a : atoms)
    if (!s.find_term(a)) {
      out.push_back({"UnknownSymbol", where, a});
      bad = true;
    }
  if (bad) return;
  try {
    infer(s, e);
  } catch (const Error& err) {
    out.push_back({err.kind() == ErrorKind::unknown_symbol ? "UnknownSymbol" : "IllTyped", where, err.what()});
  }
}
}  // namespace detail

inline std::vector<Diagnostic> validate(const Spec& s) {
  std::vector<Diagnostic> out;
  std::set<std::string> seen;
  for (const auto& t : s.types)
    if (!seen.insert(t).second) out.push_back({"DuplicateName", "type " + t, t});
  seen.clear();
  for (const auto& d : s.terms) {
    if (!seen.insert(d.name).second) out.push_back({"DuplicateName", "term " + d.name, d.name});
    detail::type_diagnostics(s, d.dom, "term " + d.name, out);
    detail::type_diagnostics(s, d.cod, "term " + d.name, out);
  }
  seen.clear();
  for (const auto& q : s.equations) {
    std::string where = "eq " + q.name;
    if (!seen.insert(q.name).second) out.push_back({"DuplicateName", where, q.name});
    std::size_t before = out.size();
    detail::term_diagnostics(s, q.lhs, where, out);
    detail::term_diagnostics(s, q.rhs, where, out);
    if (out.size() != before) continue;
    Signature l = infer(s, q.lhs), r = infer(s, q.rhs);
    if (!(l == r))
      out.push_back({"NonParallelEquation", where,
                     to_string(l.dom) + " -> " + to_string(l.cod) + " vs " + to_string(r.dom) + " -> " +
                         to_string(r.cod)});
  }
  if (s.param_type && !s.has_type(*s.param_type))
    out.push_back({"BadParameter", "param type", *s.param_type + " is not a declared type"});
  if (s.param_const) {
    const TermDecl* d = s.find_term(*s.param_const);
    if (!s.param_type)
      out.push_back({"BadParameter", "param const", "no parameter type"});
    else if (!d || !d->dom.is_unit() || !(d->cod == Type::base(*s.param_type)))
      out.push_back({"BadParameter", "param const", *s.param_const + " must be declared 1 -> " + *s.param_type});
  }
  return out;
}

inline void require_valid(const Spec& s) {
  auto diags = validate(s);
  if (!diags.empty()) {
    const auto& d = diags.front();
    ErrorKind k = d.kind == "UnknownSymbol" ? ErrorKind::unknown_symbol
                  : d.kind == "NonParallelEquation" ? ErrorKind::non_parallel_goal
                                                    : ErrorKind::ill_typed;
    throw Error(k, s.name + ": " + d.location + ": " + d.reason);
  }
}

inline bool is_param_spec(const Spec& s) { return s.param_type && s.has_type(*s.param_type); }

inline bool is_param_const_spec(const Spec& s) {
  if (!is_param_spec(s) || !s.param_const) return false;
  const TermDecl* d = s.find_term(*s.param_const);
  return d && d->dom.is_unit() && d->cod == Type::base(*s.param_type);
}

/// The pure part: all types, the pure terms, and the equations whose sides are pure.
inline Spec pure_part(const Spec& s) {
  Spec out;
  out.name = s.name + "_0";
  out.types = s.types;
  for (const auto& d : s.terms)
    if (d.pure) out.terms.push_back(d);
  for (const auto& q : s.equations)
    if (is_pure_equation(s, q)) out.equations.push_back(q);
  return out;
}

/// Returns `base`, or `base` followed by primes until it is unused in `s`.
inline std::string fresh_name(const Spec& s, std::string base) {
  while (s.has_symbol(base)) base += '\'';
  return base;
}

}  // namespace sketchforge

#endif  // SKETCHFORGE_SPEC_HPP
