#include <gtest/gtest.h>

#include "sketchforge/builtins.hpp"
#include "sketchforge/deduction.hpp"
#include "sketchforge/parser.hpp"
#include "support.hpp"

using namespace sketchforge;
using testing_support::load;
using testing_support::spec;

namespace {

Type X = Type::base("X"), Y = Type::base("Y"), G = Type::base("G");

Spec oper() { return spec("oper.sf", "Oper"); }

bool has_kind(const std::vector<Diagnostic>& ds, const std::string& kind) {
  for (const auto& d : ds)
    if (d.kind == kind) return true;
  return false;
}

}  // namespace

TEST(Validate, OperIsWellFormed) { EXPECT_TRUE(validate(oper()).empty()); }

TEST(Validate, NonParallelEquation) {
  Spec s = oper();
  s.types.push_back("Z");
  s.terms.push_back({"g", X, Type::base("Z"), false});
  s.equations.push_back({"bad", Term::atom("f"), Term::atom("g")});
  EXPECT_TRUE(has_kind(validate(s), "NonParallelEquation"));
}

TEST(Validate, UnknownSymbol) {
  Spec s = oper();
  s.equations.push_back({"bad", Term::atom("f"), Term::atom("g")});
  EXPECT_TRUE(has_kind(validate(s), "UnknownSymbol"));
  EXPECT_THROW(require_valid(s), Error);
}

TEST(Validate, DuplicateNames) {
  Spec s = oper();
  s.terms.push_back({"f", X, Y, false});
  EXPECT_TRUE(has_kind(validate(s), "DuplicateName"));
}

TEST(Infer, CompositeWithPairing) {
  Spec s = spec("sgp.sf", "Sgp");
  Term e = Term::comp(Term::atom("prd"), Term::pair(Term::proj1(G, G), Term::proj2(G, G)));
  Signature sig = infer(s, e);
  EXPECT_EQ(sig.dom, Type::prod(G, G));
  EXPECT_EQ(sig.cod, G);
}

TEST(Infer, IdentityAndIllTypedComposite) {
  Spec s = oper();
  Signature sig = infer(s, Term::id(X));
  EXPECT_EQ(sig.dom, X);
  EXPECT_EQ(sig.cod, X);
  try {
    infer(s, Term::comp(Term::atom("f"), Term::atom("f")));
    FAIL() << "f . f should not type";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ill_typed);
  }
}

TEST(Infer, UnitIsNotIdentifiedWithProducts) {
  EXPECT_FALSE(Type::prod(Type::unit(), X) == X);
  EXPECT_FALSE(Type::prod(X, Y) == Type::prod(Y, X));
}

TEST(Purity, DerivedFromLeaves) {
  Spec s = spec("nat.sf", "Nat");
  Type N = Type::base("N");
  EXPECT_TRUE(is_pure(s, Term::atom("z")));
  EXPECT_FALSE(is_pure(s, Term::comp(Term::atom("s"), Term::atom("z"))));
  EXPECT_TRUE(is_pure(s, Term::pair(Term::proj1(N, N), Term::proj2(N, N))));
  EXPECT_TRUE(is_pure(s, Term::comp(Term::atom("z"), Term::bang(N))));
}

TEST(Desugar, AssociativityOverLeftNestedContext) {
  Spec s = spec("sgp.sf", "Sgp");
  ASSERT_EQ(s.equations.size(), 1u);
  const Equation& q = s.equations[0];
  Type ctx = Type::prod(Type::prod(G, G), G);
  Term x = Term::comp(Term::proj1(G, G), Term::proj1(Type::prod(G, G), G));
  Term y = Term::comp(Term::proj2(G, G), Term::proj1(Type::prod(G, G), G));
  Term z = Term::proj2(Type::prod(G, G), G);
  Term prd = Term::atom("prd");
  Normalizer nz(s);
  EXPECT_EQ(nz.norm(q.lhs), nz.norm(Term::comp(prd, Term::pair(x, Term::comp(prd, Term::pair(y, z))))));
  EXPECT_EQ(nz.norm(q.rhs), nz.norm(Term::comp(prd, Term::pair(Term::comp(prd, Term::pair(x, y)), z))));
  EXPECT_EQ(infer(s, q.lhs).dom, ctx);
}

TEST(Desugar, SingleVariableIsIdentityContext) {
  Spec s = oper();
  auto g = parse_goal(s, "f(x) == f(x) where x : X");
  EXPECT_EQ(g.first, g.second);
  EXPECT_EQ(infer(s, g.first).dom, X);
  EXPECT_EQ(normalize(s, g.first), Term::atom("f"));
}

TEST(Desugar, DifferentialEquation) {
  Spec s = spec("dm.sf", "Dm");
  for (const auto& q : s.equations)
    if (q.name == "dprd") {
      Signature sig = infer(s, q.lhs);
      EXPECT_EQ(sig.dom, Type::prod(G, G));
      EXPECT_EQ(sig.cod, G);
      EXPECT_EQ(infer(s, q.rhs).dom, sig.dom);
    }
}

TEST(Format, RoundTripOnCorpus) {
  for (const char* f : testing_support::corpus) {
    Document d = load(f);
    std::string once = format(d);
    Document again = parse_document(once);
    EXPECT_EQ(format(again), once) << f;
    ASSERT_EQ(again.specs.size(), d.specs.size()) << f;
    for (std::size_t i = 0; i < d.specs.size(); ++i) EXPECT_EQ(again.specs[i], d.specs[i]) << f;
  }
}

TEST(Format, ParameterDeclarations) {
  std::string text = format(builtins().pi_a);
  EXPECT_NE(text.find("param type A"), std::string::npos);
  EXPECT_NE(text.find("param const a : A"), std::string::npos);
}

TEST(Parse, ErrorsCarryKinds) {
  try {
    parse_document("spec S { type X term f : X -> Q }");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unknown_symbol);
  }
  try {
    parse_document("spec S { type X term f : X -> }");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
  }
}

TEST(Builtins, ParameterMorphisms) {
  Builtins b = builtins();
  EXPECT_TRUE(same_on_generators(compose(b.pi_a_to_pi, b.i_A), b.pi_A_to_pi));
  Morphism round = compose(b.pi_a_to_pi, b.i);
  round.name = "id";
  EXPECT_TRUE(same_on_generators(round, identity(b.pi)));
  CheckReport r = check_nat(b.p);
  EXPECT_EQ(r.status, Status::proven);
  EXPECT_TRUE(r.obligations.empty());
}

TEST(Morphisms, IdentityAndMonoidChecks) {
  Spec sgp = spec("sgp.sf", "Sgp");
  EXPECT_EQ(check_morphism(identity(sgp)).status, Status::proven);
  Spec mon = spec("mon.sf", "Mon");
  Morphism m{"forget", sgp, mon, {{"G", G}}, {{"prd", Term::atom("prd")}}};
  EXPECT_EQ(check_morphism(m).status, Status::proven);
}

TEST(Morphisms, TypingOfImages) {
  Spec mon = spec("mon.sf", "Mon");
  Morphism bad{"bad", oper(), mon, {{"X", G}, {"Y", G}}, {{"f", Term::atom("prd")}}};
  EXPECT_FALSE(check_typing(bad).empty());
  EXPECT_THROW(require_typed(bad), Error);
}
