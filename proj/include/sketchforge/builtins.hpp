#ifndef SKETCHFORGE_BUILTINS_HPP
#define SKETCHFORGE_BUILTINS_HPP

#include <string>

#include "morphism.hpp"
#include "spec.hpp"

namespace sketchforge {

/// The empty presentation, the generic parameter type, and the generic
/// parameter, with the morphisms relating them.
struct Builtins {
  Spec pi;     // empty
  Spec pi_A;   // type A
  Spec pi_a;   // type A, a : 1 -> A
  Morphism pi_A_to_pi;  // A |-> 1
  Morphism pi_a_to_pi;  // A |-> 1, a |-> id[1]
  Morphism i;           // Pi -> Pi_a
  Morphism i_A;         // Pi_A -> Pi_a
  NatTrans p;           // i . pi_A => i_A, p_A = a
};

inline Spec make_pi_A(const std::string& A = "A") {
  Spec s;
  s.name = "Pi_A";
  s.types = {A};
  s.param_type = A;
  return s;
}

inline Spec make_pi_a(const std::string& A = "A", const std::string& a = "a") {
  Spec s = make_pi_A(A);
  s.name = "Pi_a";
  s.terms.push_back({a, Type::unit(), Type::base(A), false});
  s.param_const = a;
  return s;
}

inline Builtins builtins(const std::string& A = "A", const std::string& a = "a") {
  Builtins b;
  b.pi.name = "Pi";
  b.pi_A = make_pi_A(A);
  b.pi_a = make_pi_a(A, a);

  b.pi_A_to_pi = Morphism{"pi_A", b.pi_A, b.pi, {{A, Type::unit()}}, {}};
  b.pi_a_to_pi = Morphism{"pi_a", b.pi_a, b.pi, {{A, Type::unit()}}, {{a, Term::id(Type::unit())}}};
  b.i = Morphism{"i", b.pi, b.pi_a, {}, {}};
  b.i_A = Morphism{"i_A", b.pi_A, b.pi_a, {{A, Type::base(A)}}, {}};
  b.p = NatTrans{"p", compose(b.i, b.pi_A_to_pi), b.i_A, {{A, Term::atom(a)}}};
  return b;
}

}  // namespace sketchforge

#endif  // SKETCHFORGE_BUILTINS_HPP
