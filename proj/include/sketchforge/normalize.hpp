#ifndef SKETCHFORGE_NORMALIZE_HPP
#define SKETCHFORGE_NORMALIZE_HPP

// Normal forms for the structural part of equational logic with products.
//
// A normal form is either `id[T]` or a right-nested sequence
//   f1 . f2 . ... . fn
// whose factors are atoms, projections or `bang`, except that the last factor
// may be a pair of normal forms. Pairs never occur elsewhere, because
// pair(f, g) . h is distributed into pair(f . h, g . h). On top of that:
//   - proj_i . pair(f1, f2)           ~> f_i
//   - pair(p1 . h, p2 . h)            ~> h
//   - any term into a unit-like type  ~> the canonical tuple of bangs
// The orientation is confluent, so two terms are equal by the structural
// rules (associativity, units, pairing, collapsing) iff their normal forms
// coincide.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "morphism.hpp"
#include "spec.hpp"
#include "syntax.hpp"

namespace sketchforge {

class Normalizer {
 public:
  explicit Normalizer(const Spec& s) {
    for (const auto& d : s.terms) sigs_[d.name] = {d.dom, d.cod};
  }

  Type dom(const Term& e) const {
    switch (e.kind()) {
      case Term::Kind::atom: return sigs_.at(e.name()).dom;
      case Term::Kind::id:
      case Term::Kind::bang: return e.type_a();
      case Term::Kind::proj1:
      case Term::Kind::proj2: return Type::prod(e.type_a(), e.type_b());
      case Term::Kind::comp: return dom(e.right());
      case Term::Kind::pair: return dom(e.left());
    }
    return Type::unit();
  }

  Type cod(const Term& e) const {
    switch (e.kind()) {
      case Term::Kind::atom: return sigs_.at(e.name()).cod;
      case Term::Kind::id: return e.type_a();
      case Term::Kind::bang: return Type::unit();
      case Term::Kind::proj1: return e.type_a();
      case Term::Kind::proj2: return e.type_b();
      case Term::Kind::comp: return cod(e.left());
      case Term::Kind::pair: return Type::prod(cod(e.left()), cod(e.right()));
    }
    return Type::unit();
  }

  /// The unique normal term D -> C for a unit-like C.
  static Term canon(const Type& d, const Type& c) {
    if (c.is_prod()) return Term::pair(canon(d, c.left()), canon(d, c.right()));
    return Term::bang(d);
  }

  Term norm(const Term& e) const {
    switch (e.kind()) {
      case Term::Kind::atom: {
        const Signature& s = sigs_.at(e.name());
        return is_unit_like(s.cod) ? canon(s.dom, s.cod) : e;
      }
      case Term::Kind::id: return is_unit_like(e.type_a()) ? canon(e.type_a(), e.type_a()) : e;
      case Term::Kind::bang: return e;
      case Term::Kind::proj1:
      case Term::Kind::proj2: {
        Type c = cod(e);
        return is_unit_like(c) ? canon(dom(e), c) : e;
      }
      case Term::Kind::comp: return compose(norm(e.left()), norm(e.right()));
      case Term::Kind::pair: return pair(norm(e.left()), norm(e.right()));
    }
    return e;
  }

  /// Normal form of `g . f` for normal `g` and `f`.
  Term compose(const Term& g, const Term& f) const {
    Type c = cod(g);
    if (is_unit_like(c)) return canon(dom(f), c);
    if (is_identity(f)) return g;
    if (g.is(Term::Kind::id)) return f;
    if (g.is(Term::Kind::pair)) return pair(compose(g.left(), f), compose(g.right(), f));
    std::vector<Term> factors = flatten(g);
    Term tail = f;
    std::size_t keep = factors.size();
    const Term& last = factors.back();
    if (last.is(Term::Kind::pair)) {
      tail = compose(last, f);
      keep -= 1;
    } else if (last.is(Term::Kind::bang)) {
      tail = Term::bang(dom(f));
      keep -= 1;
    }
    for (std::size_t i = keep; i > 0; --i) tail = step(factors[i - 1], tail);
    return tail;
  }

  /// Normal form of `pair(a, b)` for normal `a` and `b`.
  Term pair(const Term& a, const Term& b) const {
    Type l = cod(a), r = cod(b);
    if (is_unit_like(l) && is_unit_like(r)) return canon(dom(a), Type::prod(l, r));
    std::optional<Term> ha = strip(a, Term::Kind::proj1, l, r);
    std::optional<Term> hb = strip(b, Term::Kind::proj2, l, r);
    if (ha && hb && *ha == *hb) return *ha;
    if (ha && is_unit_like(r)) return *ha;
    if (hb && is_unit_like(l)) return *hb;
    return Term::pair(a, b);
  }

  bool is_identity(const Term& e) const {
    if (e.is(Term::Kind::id)) return true;
    Type c = cod(e);
    return is_unit_like(c) && dom(e) == c;
  }

 private:
  // One atomic factor in front of a normal term.
  Term step(const Term& x, const Term& t) const {
    Type c = cod(x);
    if (is_unit_like(c)) return canon(dom(t), c);
    if (is_identity(t)) return x;
    if (t.is(Term::Kind::pair)) {
      if (x.is(Term::Kind::proj1)) return t.left();
      if (x.is(Term::Kind::proj2)) return t.right();
    }
    return Term::comp(x, t);
  }

  // If `a` is proj . h with proj the given projection out of l * r, returns h.
  std::optional<Term> strip(const Term& a, Term::Kind proj, const Type& l, const Type& r) const {
    if (a.is(proj)) {
      if (a.type_a() == l && a.type_b() == r) return Term::id(Type::prod(l, r));
      return std::nullopt;
    }
    if (!a.is(Term::Kind::comp)) return std::nullopt;
    Term head = a.left();
    if (!head.is(proj) || !(head.type_a() == l) || !(head.type_b() == r)) return std::nullopt;
    return a.right();
  }

  std::map<std::string, Signature> sigs_;
};

inline Term normalize(const Spec& s, const Term& e) {
  infer(s, e);
  return Normalizer(s).norm(e);
}

/// Height used to bound the search: sequence length plus pair nesting.
inline std::size_t term_height(const Term& e) {
  switch (e.kind()) {
    case Term::Kind::comp: return std::max(term_height(e.left()), 1 + term_height(e.right()));
    case Term::Kind::pair: return 1 + std::max(term_height(e.left()), term_height(e.right()));
    default: return 1;
  }
}

/// Generator-wise comparison of two morphisms with common endpoints, up to
/// structural normal forms in the target.
inline bool same_on_generators(const Morphism& a, const Morphism& b) {
  if (!(a.src == b.src) || !(a.dst == b.dst)) return false;
  for (const auto& t : a.src.types)
    if (!(a.type_map.at(t) == b.type_map.at(t))) return false;
  Normalizer n(a.dst);
  for (const auto& d : a.src.terms)
    if (!(n.norm(a.term_map.at(d.name)) == n.norm(b.term_map.at(d.name)))) return false;
  return true;
}

}  // namespace sketchforge

#endif  // SKETCHFORGE_NORMALIZE_HPP
