#ifndef SKETCHFORGE_PARAMETERIZE_HPP
#define SKETCHFORGE_PARAMETERIZE_HPP

// Parameterization of a decorated presentation: a fresh type A of parameters
// is added to the domain of every general term. Pure terms stay as they are.
//
//   f general, f : X -> Y    ~>   f' : A * X -> Y
//   translate(g . f)          =   translate(g) . pair(p1[A, X], translate(f))
//
// The coKleisli side is kept virtual: a morphism X -> Y there is a term
// A * X -> Y of the parameterized presentation.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "builtins.hpp"
#include "deduction.hpp"
#include "error.hpp"
#include "morphism.hpp"
#include "normalize.hpp"
#include "spec.hpp"
#include "syntax.hpp"

namespace sketchforge {

struct Expansion {
  Spec source;
  Spec expanded;                          // T_A
  std::string param;                      // the type of parameters
  std::map<std::string, std::string> prime;  // general term -> its expansion
  Morphism pure_image;                    // T_0 -> T_A
  std::vector<std::string> warnings;
};

namespace detail {

inline std::string prime_name(const Spec& s, const std::string& f, const std::vector<std::string>& taken) {
  std::string n = f + "'";
  while (s.has_symbol(n) || std::find(taken.begin(), taken.end(), n) != taken.end()) n += '\'';
  return n;
}

inline std::string expanded_name(const std::string& n) { return n + "_A"; }

inline std::string with_parameter_name(const std::string& n) {
  if (n.size() > 2 && n.compare(n.size() - 2, 2, "_A") == 0) return n.substr(0, n.size() - 2) + "_a";
  return n + "_a";
}

}  // namespace detail

/// Translation of a term `e : X -> Y` of the source into `A * X -> Y`.
inline Term translate_term(const Expansion& x, const Term& e) {
  const Type A = Type::base(x.param);
  Signature sig = infer(x.source, e);
  switch (e.kind()) {
    case Term::Kind::atom: {
      auto it = x.prime.find(e.name());
      if (it != x.prime.end()) return Term::atom(it->second);
      return Term::comp(e, Term::proj2(A, sig.dom));
    }
    case Term::Kind::id: return Term::proj2(A, e.type_a());
    case Term::Kind::proj1:
    case Term::Kind::proj2: return Term::comp(e, Term::proj2(A, sig.dom));
    case Term::Kind::bang: return Term::bang(Type::prod(A, e.type_a()));
    case Term::Kind::comp:
      return Term::comp(translate_term(x, e.left()), Term::pair(Term::proj1(A, sig.dom), translate_term(x, e.right())));
    case Term::Kind::pair: return Term::pair(translate_term(x, e.left()), translate_term(x, e.right()));
  }
  return e;
}

/// The expansion T_A of a decorated presentation.
inline Expansion expand(const Spec& d, const std::string& param = "A") {
  require_valid(d);
  Expansion x;
  x.source = d;
  x.param = fresh_name(d, param);
  if (x.param != param) x.warnings.push_back("NameClash: " + param + " is taken, the type of parameters is " + x.param);
  Spec& t = x.expanded;
  t.name = detail::expanded_name(d.name);
  t.types.push_back(x.param);
  for (const auto& n : d.types) t.types.push_back(n);
  t.param_type = x.param;
  std::vector<std::string> taken{x.param};
  const Type A = Type::base(x.param);
  for (const auto& f : d.terms) {
    if (f.pure) {
      t.terms.push_back(f);
      continue;
    }
    std::string n = detail::prime_name(d, f.name, taken);
    taken.push_back(n);
    x.prime[f.name] = n;
    t.terms.push_back({n, Type::prod(A, f.dom), f.cod, false});
  }
  Normalizer nz(t);
  for (const auto& q : d.equations) {
    if (is_pure_equation(d, q)) {
      t.equations.push_back(q);
      continue;
    }
    t.equations.push_back({q.name, nz.norm(translate_term(x, q.lhs)), nz.norm(translate_term(x, q.rhs))});
  }
  require_valid(t);
  Spec t0 = pure_part(d);
  x.pure_image = Morphism{"pure_" + t.name, t0, t, {}, {}};
  for (const auto& n : t0.types) x.pure_image.type_map[n] = Type::base(n);
  for (const auto& f : t0.terms) x.pure_image.term_map[f.name] = Term::atom(f.name);
  return x;
}

/// Functorial action on a decoration-preserving morphism that sends types to
/// types: `expand(phi)(f') = translate(phi(f))`, pure terms go to their image.
inline Morphism expand_morphism(const Morphism& phi, const Expansion& xs, const Expansion& xd) {
  Morphism out{"F_" + phi.name, xs.expanded, xd.expanded, {}, {}};
  out.type_map[xs.param] = Type::base(xd.param);
  for (const auto& t : phi.src.types) out.type_map[t] = phi.type_map.at(t);
  for (const auto& f : phi.src.terms) {
    Term img = phi.term_map.at(f.name);
    if (f.pure) {
      out.term_map[f.name] = img;
    } else {
      out.term_map[xs.prime.at(f.name)] = translate_term(xd, img);
    }
  }
  return out;
}

/// t_A : T_A -> T, sending A to 1 and f' to f . p2[1, X].
inline Morphism collapse_A(const Expansion& x) {
  Morphism m{"t_A", x.expanded, x.source, {}, {}};
  m.type_map[x.param] = Type::unit();
  for (const auto& t : x.source.types) m.type_map[t] = Type::base(t);
  for (const auto& f : x.source.terms) {
    if (f.pure) m.term_map[f.name] = Term::atom(f.name);
    else m.term_map[x.prime.at(f.name)] = Term::comp(Term::atom(f.name), Term::proj2(Type::unit(), f.dom));
  }
  return m;
}

/// gamma_A : Pi_A -> T_A and gamma : Pi -> T.
inline Morphism gamma_A(const Expansion& x) {
  Spec pa = make_pi_A(x.param);
  return Morphism{"gamma_A", pa, x.expanded, {{x.param, Type::base(x.param)}}, {}};
}

inline Morphism gamma(const Spec& t) {
  Spec pi;
  pi.name = "Pi";
  return Morphism{"gamma", pi, t, {}, {}};
}

// ---------------------------------------------------------------------------
// the coKleisli side

class CoKleisliView {
 public:
  CoKleisliView(Spec over, Budget b = {}) : over_(std::move(over)), budget_(b), prover_(over_, b) {
    if (!is_param_spec(over_)) throw Error(ErrorKind::spec_mismatch, over_.name + " has no type of parameters");
    A_ = Type::base(*over_.param_type);
  }

  const Spec& over() const { return over_; }
  const Type& param() const { return A_; }

  /// Object part: the argument type X of `f : A * X -> Y`.
  Type source(const Term& f) const {
    Type d = infer(over_, f).dom;
    if (!d.is_prod() || !(d.left() == A_)) throw Error(ErrorKind::ill_typed, to_string(f) + " is not a coKleisli arrow");
    return d.right();
  }

  Term identity(const Type& X) const { return Term::proj2(A_, X); }
  Term delta(const Type& X) const { return Term::pair(Term::proj1(A_, X), Term::id(Type::prod(A_, X))); }

  /// kl(g) after kl(f).
  Term compose(const Term& g, const Term& f) const {
    Type X = source(f);
    return Term::comp(g, Term::pair(Term::proj1(A_, X), f));
  }

  Verdict equal(const Term& f, const Term& g) { return prover_.entails(f, g); }

  /// A term g of the parameterized presentation with f == g . p2, if one is found.
  std::optional<Term> pure_witness(const Term& f) {
    Type X = source(f);
    Normalizer nz(over_);
    Term n = nz.norm(f);
    std::vector<Term> cands;
    auto factors = flatten(n);
    if (factors.back() == Term::proj2(A_, X)) cands.push_back(chain(factors, 0, factors.size() - 1));
    if (n == Term::proj2(A_, X)) cands.push_back(Term::id(X));
    // Syntactic factorization through p2 after substituting a dummy argument is
    // not available in T_A, so fall back to generators of the right type.
    Signature sig = infer(over_, f);
    for (const auto& d : over_.terms)
      if (d.dom == X && d.cod == sig.cod) cands.push_back(Term::atom(d.name));
    for (const auto& g : cands) {
      std::vector<std::string> atoms;
      collect_atoms(g, atoms);
      Term lifted = Term::comp(g, Term::proj2(A_, X));
      try {
        infer(over_, lifted);
      } catch (const Error&) {
        continue;
      }
      if (prover_.entails(f, lifted).status == Status::proven) return g;
    }
    return std::nullopt;
  }

 private:
  Spec over_;
  Budget budget_;
  Prover prover_;
  Type A_ = Type::unit();
};

/// Unit of the adjunction at d: types go to themselves, f goes to kl(translate(f)).
struct KlMorphism {
  Spec src;
  std::map<std::string, Type> type_map;
  std::map<std::string, Term> term_map;  // arrows A * X -> Y of the expansion
};

inline KlMorphism unit(const Expansion& x) {
  KlMorphism u{x.source, {}, {}};
  for (const auto& t : x.source.types) u.type_map[t] = Type::base(t);
  for (const auto& f : x.source.terms) u.term_map[f.name] = translate_term(x, Term::atom(f.name));
  return u;
}

/// Generator-wise triangle identities of the adjunction and purity of the
/// unit, discharged in the expansion.
inline CheckReport check_triangles(const Expansion& x, const Budget& b = {}) {
  CheckReport r;
  CoKleisliView kl(x.expanded, b);
  Prover p(x.expanded, b);
  KlMorphism u = unit(x);
  for (const auto& f : x.source.terms) {
    const Term& img = u.term_map.at(f.name);
    if (!f.pure) {
      // counit . F(unit) at f' is translate(f), which must be f' itself.
      discharge(p, r, "counit . F(unit) at " + x.prime.at(f.name), img, Term::atom(x.prime.at(f.name)));
      continue;
    }
    // unit preserves purity, and the counit sends the pure arrow back to f.
    auto w = kl.pure_witness(img);
    if (!w) {
      r.status = combine(r.status, Status::unknown);
      r.note = "no purity witness for " + f.name;
      continue;
    }
    discharge(p, r, "counit . F(unit) at " + f.name, *w, Term::atom(f.name));
  }
  // G(counit) . unit at each generator of T_A, seen as a coKleisli arrow.
  for (const auto& g : x.expanded.terms) {
    Term h = Term::atom(g.name);
    Type d = g.dom;
    bool general = !g.pure;
    if (!general) {
      // A pure g : X -> Y is the coKleisli arrow g . p2.
      h = Term::comp(h, Term::proj2(kl.param(), d));
      auto w = kl.pure_witness(h);
      if (!w) {
        r.status = combine(r.status, Status::unknown);
        continue;
      }
      discharge(p, r, "G(counit) . unit at " + g.name, Term::comp(*w, Term::proj2(kl.param(), d)), h);
    } else {
      discharge(p, r, "G(counit) . unit at " + g.name, kl.compose(h, kl.identity(kl.source(h))), h);
    }
  }
  return r;
}

/// For a pure expression e : X -> Y, the expansion entails translate(e) == e . p2.
inline Verdict coherence(const Expansion& x, const Term& e, const Budget& b = {}) {
  Signature sig = infer(x.source, e);
  return entails(x.expanded, translate_term(x, e), Term::comp(e, Term::proj2(Type::base(x.param), sig.dom)), b);
}

}  // namespace sketchforge

#endif  // SKETCHFORGE_PARAMETERIZE_HPP
