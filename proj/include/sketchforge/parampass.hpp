#ifndef SKETCHFORGE_PARAMPASS_HPP
#define SKETCHFORGE_PARAMPASS_HPP

// Parameter passing. From the expansion T_A of T:
//   T_a = pushout of gamma_A : Pi_A -> T_A and i_A : Pi_A -> Pi_a,
//   j : T -> T_a, f |-> f' . pair(a . bang[X], id[X]),
//   t : j . t_A => j_A with t_A = a and identities elsewhere,
// and (T_a, j_A, j, t) is the lax colimit of t_A.

#include <string>
#include <vector>

#include "builtins.hpp"
#include "colimit.hpp"
#include "deduction.hpp"
#include "error.hpp"
#include "morphism.hpp"
#include "normalize.hpp"
#include "parameterize.hpp"
#include "spec.hpp"

namespace sketchforge {

struct WithParameter {
  Spec spec;       // T_a
  Morphism j_A;    // T_A -> T_a
  std::string a;   // the parameter
};

/// Adds a parameter a : 1 -> A to a parameterized presentation.
inline WithParameter add_parameter(const Spec& p, const std::string& a = "a") {
  if (!is_param_spec(p)) throw Error(ErrorKind::spec_mismatch, p.name + " has no type of parameters");
  const std::string& A = *p.param_type;
  std::string an = fresh_name(p, a);
  Spec pA = make_pi_A(A);
  Spec pa = make_pi_a(A, an);
  Morphism g{"gamma_A", pA, p, {{A, Type::base(A)}}, {}};
  Morphism iA{"i_A", pA, pa, {{A, Type::base(A)}}, {}};
  Pushout po = pushout(g, iA, detail::with_parameter_name(p.name));
  WithParameter out{po.spec, po.in1, po.in2.term_map.at(an).name()};
  out.j_A.name = "j_A";
  out.spec.param_const = out.a;
  out.j_A.dst = out.spec;
  return out;
}

/// j : T -> T_a.
inline Morphism passing_morphism(const Expansion& x, const WithParameter& w) {
  Morphism j{"j", x.source, w.spec, {}, {}};
  Normalizer nz(w.spec);
  for (const auto& t : x.source.types) j.type_map[t] = Type::base(t);
  for (const auto& f : x.source.terms) {
    Term arg = Term::pair(Term::comp(Term::atom(w.a), Term::bang(f.dom)), Term::id(f.dom));
    Term img = Term::comp(translate_term(x, Term::atom(f.name)), arg);
    j.term_map[f.name] = f.pure ? nz.norm(img) : img;
  }
  return j;
}

/// t_a : T_a -> T, extending t_A by a |-> id[1].
inline Morphism collapse_a(const Expansion& x, const WithParameter& w) {
  Morphism t = collapse_A(x);
  t.name = "t_a";
  t.src = w.spec;
  t.term_map[w.a] = Term::id(Type::unit());
  return t;
}

/// A lax cocone with base t_A : T_A -> T.
struct LaxCocone {
  Morphism base;   // t_A
  Morphism leg1;   // T_A -> Q
  Morphism leg2;   // T -> Q
  NatTrans cell;   // leg2 . t_A => leg1
};

struct Passing {
  Expansion x;
  WithParameter w;
  Morphism j;
  Morphism t_A;
  Morphism t_a;
  LaxCocone cocone;  // (T_a, j_A, j, t)
};

inline NatTrans passing_cell(const Morphism& t_A, const Morphism& leg1, const Morphism& leg2, const std::string& param,
                             const Term& cell_A, std::string name = "t") {
  NatTrans n{std::move(name), compose(leg2, t_A), leg1, {}};
  for (const auto& ty : t_A.src.types)
    n.components[ty] = ty == param ? cell_A : Term::id(leg1.type_map.at(ty));
  return n;
}

inline Passing lax_cocone(const Spec& d, const std::string& param = "A", const std::string& a = "a") {
  Passing p;
  p.x = expand(d, param);
  p.w = add_parameter(p.x.expanded, a);
  p.j = passing_morphism(p.x, p.w);
  p.t_A = collapse_A(p.x);
  p.t_a = collapse_a(p.x, p.w);
  p.cocone = {p.t_A, p.w.j_A, p.j, passing_cell(p.t_A, p.w.j_A, p.j, p.x.param, Term::atom(p.w.a))};
  return p;
}

/// The defining equations of the lax colimit and the naturality of t.
inline CheckReport check_lax_cocone(const Passing& p, const Budget& b = {}) {
  CheckReport r;
  auto absorb = [&](const std::string& what, const CheckReport& c) {
    r.status = combine(r.status, c.status);
    for (const auto& o : c.obligations) r.obligations.push_back({what + ": " + o.what, o.lhs, o.rhs, o.verdict});
    if (!c.note.empty()) r.note += what + ": " + c.note + "\n";
  };
  absorb("t_a . j_A = t_A", check_equal_on_generators(compose(p.t_a, p.w.j_A), p.t_A, b));
  Morphism id_T = identity(p.x.source);
  Morphism tj = compose(p.t_a, p.j);
  tj.name = id_T.name;
  absorb("t_a . j = id", check_equal_on_generators(tj, id_T, b));
  // t_a . t: every component becomes an identity.
  Prover q(p.x.source, b);
  for (const auto& [ty, c] : p.cocone.cell.components) {
    Term img = apply(p.t_a, c);
    Type at = infer(p.x.source, img).dom;
    discharge(q, r, "t_a . t = id at " + ty, img, Term::id(at));
  }
  absorb("naturality of t", check_nat(p.cocone.cell, b));
  return r;
}

/// The mediating morphism h : T_a -> Q toward another lax cocone over t_A:
/// h . j_A = leg1 and h(a) = cell_A; h . j = leg2 is then checked.
inline Morphism mediating(const Passing& p, const LaxCocone& other, const Budget& b = {}, std::string name = "h") {
  if (!(other.base == p.t_A)) throw Error(ErrorKind::incompatible_cocone, "cocones over different bases");
  if (!(other.leg1.dst == other.leg2.dst)) throw Error(ErrorKind::incompatible_cocone, "legs have different targets");
  Morphism h{std::move(name), p.w.spec, other.leg1.dst, {}, {}};
  for (const auto& t : p.x.expanded.types) h.type_map[t] = other.leg1.type_map.at(t);
  for (const auto& f : p.x.expanded.terms) h.term_map[f.name] = other.leg1.term_map.at(f.name);
  h.term_map[p.w.a] = other.cell.components.at(p.x.param);
  auto typing = check_typing(h);
  if (!typing.empty()) throw Error(ErrorKind::incompatible_cocone, typing.front().location + ": " + typing.front().reason);
  CheckReport c = check_equal_on_generators(compose(h, p.j), other.leg2, b);
  if (c.status == Status::refuted)
    throw Error(ErrorKind::incompatible_cocone, "h . j differs from " + other.leg2.name);
  return h;
}

/// Whether a candidate h satisfies h . j_A = leg1, h . j = leg2 and h . t = cell.
/// Obligations equal in normal form are settled first, then small separating
/// models are tried, and only the rest go to the rewrite search.
inline Status satisfies_cocone(const Passing& p, const Morphism& h, const LaxCocone& other, const Budget& b = {}) {
  if (!check_typing(h).empty()) return Status::refuted;
  for (const auto& [t, img] : other.leg1.type_map)
    if (!(apply(h, p.w.j_A.type_map.at(t)) == img)) return Status::refuted;
  for (const auto& [t, img] : other.leg2.type_map)
    if (!(apply(h, p.j.type_map.at(t)) == img)) return Status::refuted;
  std::vector<std::pair<Term, Term>> goals;
  for (const auto& [g, e] : p.w.j_A.term_map) goals.push_back({apply(h, e), other.leg1.term_map.at(g)});
  for (const auto& [g, e] : p.j.term_map) goals.push_back({apply(h, e), other.leg2.term_map.at(g)});
  for (const auto& [ty, c] : p.cocone.cell.components) goals.push_back({apply(h, c), other.cell.components.at(ty)});
  Prover q(h.dst, b);
  std::vector<std::pair<Term, Term>> open;
  for (const auto& [l, r] : goals) {
    if (!(infer(h.dst, l) == infer(h.dst, r))) return Status::refuted;
    if (!(q.normalizer().norm(l) == q.normalizer().norm(r))) open.push_back({l, r});
  }
  if (b.countermodels)
    for (const auto& [l, r] : open)
      if (q.separating_model(l, r)) return Status::refuted;
  Status s = Status::proven;
  for (const auto& [l, r] : open) {
    s = combine(s, q.entails(l, r).status);
    if (s != Status::proven) return s;
  }
  return s;
}

/// Every h : T_a -> Q satisfying the cocone equations, among the assignments
/// sending each type to a declared type or 1 and each term to an atom, an
/// identity, a collapse, or a term of the other cocone's data of the right
/// type. Used to confirm that the mediating morphism is unique.
inline std::vector<Morphism> mediating_candidates(const Passing& p, const LaxCocone& other, const Budget& b = {}) {
  const Spec& q = other.leg1.dst;
  Normalizer nz(q);
  std::vector<Type> types{Type::unit()};
  for (const auto& t : q.types) types.push_back(Type::base(t));
  std::vector<Term> pool;
  auto add = [&](const Term& e) {
    Term n = nz.norm(e);
    if (std::find(pool.begin(), pool.end(), n) == pool.end()) pool.push_back(n);
  };
  for (const auto& d : q.terms) add(Term::atom(d.name));
  for (const auto& t : types) {
    add(Term::id(t));
    add(Term::bang(t));
  }
  for (const auto& [_, e] : other.leg1.term_map) add(e);
  for (const auto& [_, e] : other.leg2.term_map) add(e);
  for (const auto& [_, e] : other.cell.components) add(e);

  std::vector<Morphism> out;
  const Spec& src = p.w.spec;
  Morphism h{"h", src, q, {}, {}};
  Prover prover(q, b);
  // h . j_A = leg1 fixes each generator of T_A up to provable equality, so
  // candidates failing it are dropped as soon as they are assigned.
  std::map<std::pair<std::string, std::string>, bool> seen;
  auto fails_leg1 = [&](const std::string& name, const Term& e) {
    auto it = p.w.j_A.term_map.find(name);
    if (it == p.w.j_A.term_map.end() || !(it->second == Term::atom(name))) return false;
    auto key = std::make_pair(name, to_string(e));
    auto c = seen.find(key);
    if (c != seen.end()) return c->second;
    return seen[key] = prover.entails(e, other.leg1.term_map.at(name)).status != Status::proven;
  };
  auto terms = [&](auto&& self, std::size_t k) -> void {
    if (k == src.terms.size()) {
      if (satisfies_cocone(p, h, other, b) == Status::proven) out.push_back(h);
      return;
    }
    const TermDecl& d = src.terms[k];
    Type dom = apply(h, d.dom), cod = apply(h, d.cod);
    for (const auto& e : pool) {
      Signature sig = infer(q, e);
      if (!(sig.dom == dom) || !(sig.cod == cod) || fails_leg1(d.name, e)) continue;
      h.term_map[d.name] = e;
      self(self, k + 1);
    }
    h.term_map.erase(d.name);
  };
  auto tys = [&](auto&& self, std::size_t k) -> void {
    if (k == src.types.size()) {
      for (const auto& [t, img] : other.leg1.type_map)
        if (!(apply(h, p.w.j_A.type_map.at(t)) == img)) return;
      terms(terms, 0);
      return;
    }
    for (const auto& t : types) {
      h.type_map[src.types[k]] = t;
      self(self, k + 1);
    }
  };
  tys(tys, 0);
  return out;
}

/// J_{d'} . phi == F'(phi) . J_d on the generators of d.
inline CheckReport check_J_naturality(const Morphism& phi, const Budget& b = {}) {
  require_typed(phi);
  if (!preserves_purity(phi)) throw Error(ErrorKind::spec_mismatch, phi.name + " does not preserve purity");
  Passing ps = lax_cocone(phi.src), pd = lax_cocone(phi.dst);
  Morphism F = expand_morphism(phi, ps.x, pd.x);
  Morphism Fa{"F'_" + phi.name, ps.w.spec, pd.w.spec, F.type_map, F.term_map};
  Fa.term_map[ps.w.a] = Term::atom(pd.w.a);
  CheckReport r;
  Prover q(pd.w.spec, b);
  for (const auto& f : phi.src.terms) {
    Term lhs = apply(pd.j, phi.term_map.at(f.name));
    Term rhs = apply(Fa, ps.j.term_map.at(f.name));
    discharge(q, r, "square at " + f.name, lhs, rhs);
  }
  return r;
}

}  // namespace sketchforge

#endif  // SKETCHFORGE_PARAMPASS_HPP
