#include <gtest/gtest.h>

#include "sketchforge/deduction.hpp"
#include "sketchforge/parameterize.hpp"
#include "support.hpp"

using namespace sketchforge;
using testing_support::load;
using testing_support::spec;

namespace {

Type A = Type::base("A"), X = Type::base("X"), Y = Type::base("Y"), N = Type::base("N"), N2 = Type::base("N'");

}  // namespace

TEST(Expand, OperShape) {
  Expansion x = expand(spec("oper.sf", "Oper"));
  EXPECT_EQ(x.expanded.name, "Oper_A");
  EXPECT_EQ(x.expanded.types, (std::vector<std::string>{"A", "X", "Y"}));
  ASSERT_EQ(x.expanded.terms.size(), 1u);
  EXPECT_EQ(x.expanded.terms[0].name, "f'");
  EXPECT_EQ(x.expanded.terms[0].dom, Type::prod(A, X));
  EXPECT_EQ(x.expanded.param_type, std::optional<std::string>("A"));
  EXPECT_TRUE(x.warnings.empty());
}

TEST(Expand, PureTermsAreKept) {
  Expansion x = expand(spec("nat.sf", "Nat"));
  const TermDecl* z = x.expanded.find_term("z");
  ASSERT_NE(z, nullptr);
  EXPECT_TRUE(z->pure);
  EXPECT_EQ(z->dom, Type::unit());
  const TermDecl* s = x.expanded.find_term("s'");
  ASSERT_NE(s, nullptr);
  EXPECT_EQ(s->dom, Type::prod(A, N));
  EXPECT_EQ(x.expanded.find_term("s"), nullptr);
}

TEST(Expand, AgreesWithHandWrittenExpansions) {
  Document hand = load("expansions.sf");
  for (auto [file, name] : {std::pair{"oper.sf", "Oper"}, {"nat.sf", "Nat"}, {"dm.sf", "Dm"}}) {
    Expansion x = expand(spec(file, name));
    CheckReport r = equivalent_specs(x.expanded, hand.spec(std::string(name) + "_A"));
    EXPECT_EQ(r.status, Status::proven) << name << ": " << r.note;
  }
}

TEST(Expand, NameClashRenamesParameterType) {
  Spec s = spec("oper.sf", "Oper");
  s.types.push_back("A");
  Expansion x = expand(s);
  EXPECT_EQ(x.param, "A'");
  ASSERT_EQ(x.warnings.size(), 1u);
  EXPECT_NE(x.warnings[0].find("NameClash"), std::string::npos);
  EXPECT_EQ(x.expanded.terms[0].dom, Type::prod(Type::base("A'"), X));
}

TEST(Translate, AtomCompositeAndPure) {
  Expansion snat = expand(spec("nat.sf", "SNat"));
  EXPECT_EQ(translate_term(snat, Term::atom("s")), Term::atom("s'"));
  Term ps = Term::comp(Term::atom("p"), Term::atom("s"));
  EXPECT_EQ(translate_term(snat, ps), Term::comp(Term::atom("p'"), Term::pair(Term::proj1(A, N), Term::atom("s'"))));

  Expansion nat = expand(spec("nat.sf", "Nat"));
  EXPECT_EQ(translate_term(nat, Term::atom("z")), Term::comp(Term::atom("z"), Term::proj2(A, Type::unit())));
  EXPECT_EQ(translate_term(nat, Term::id(N)), Term::proj2(A, N));
}

TEST(Translate, EquationsBecomeParameterized) {
  // p . s == id[N] becomes p' . <p1, s'> == p2[A, N].
  Expansion x = expand(spec("nat.sf", "SNat"));
  ASSERT_EQ(x.expanded.equations.size(), 1u);
  Prover q(x.expanded);
  Term lhs = Term::comp(Term::atom("p'"), Term::pair(Term::proj1(A, N), Term::atom("s'")));
  EXPECT_EQ(q.entails(lhs, Term::proj2(A, N)).status, Status::proven);
}

TEST(Collapse, SendsParameterTypeToUnit) {
  Expansion x = expand(spec("nat.sf", "Nat"));
  Morphism t = collapse_A(x);
  EXPECT_EQ(t.type_map.at("A"), Type::unit());
  EXPECT_EQ(t.term_map.at("s'"), Term::comp(Term::atom("s"), Term::proj2(Type::unit(), N)));
  EXPECT_EQ(t.term_map.at("z"), Term::atom("z"));
  EXPECT_EQ(check_morphism(t).status, Status::proven);
  // Every generator of the target occurs in some image.
  for (const auto& d : x.source.terms) {
    bool hit = false;
    for (const auto& [_, img] : t.term_map) {
      std::vector<std::string> atoms;
      collect_atoms(img, atoms);
      hit = hit || std::find(atoms.begin(), atoms.end(), d.name) != atoms.end();
    }
    EXPECT_TRUE(hit) << d.name;
  }
}

TEST(Collapse, IsAMorphismOnCorpus) {
  for (auto [file, name] : {std::pair{"sgp.sf", "Sgp"}, {"naturality.sf", "Dm"}, {"nat.sf", "SNat"}, {"state.sf", "St"}}) {
    Expansion x = expand(spec(file, name));
    EXPECT_EQ(check_morphism(collapse_A(x)).status, Status::proven) << name;
  }
}

TEST(CoKleisli, IdentityLaws) {
  Expansion x = expand(spec("oper.sf", "Oper"));
  CoKleisliView kl(x.expanded);
  Term f = Term::atom("f'");
  EXPECT_EQ(kl.source(f), X);
  EXPECT_EQ(kl.equal(kl.compose(f, kl.identity(X)), f).status, Status::proven);
  EXPECT_EQ(kl.equal(kl.compose(kl.identity(Y), f), f).status, Status::proven);
  EXPECT_THROW(kl.source(Term::id(X)), Error);
}

TEST(CoKleisli, Associativity) {
  Expansion x = expand(spec("nat.sf", "SNat"));
  CoKleisliView kl(x.expanded);
  Term s = Term::atom("s'"), p = Term::atom("p'");
  Term l = kl.compose(s, kl.compose(p, s)), r = kl.compose(kl.compose(s, p), s);
  EXPECT_EQ(kl.equal(l, r).status, Status::proven);
}

TEST(CoKleisli, PureWitness) {
  Expansion x = expand(spec("nat.sf", "Nat"));
  CoKleisliView kl(x.expanded);
  auto w = kl.pure_witness(Term::comp(Term::atom("z"), Term::proj2(A, Type::unit())));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(*w, Term::atom("z"));
  EXPECT_FALSE(kl.pure_witness(Term::atom("s'")).has_value());
}

TEST(Adjunction, TrianglesOnCorpus) {
  for (auto [file, name] : {std::pair{"oper.sf", "Oper"}, {"nat.sf", "Nat"}, {"nat.sf", "SNat"}, {"naturality.sf", "Dm"}}) {
    CheckReport r = check_triangles(expand(spec(file, name)));
    EXPECT_EQ(r.status, Status::proven) << name << ": " << r.note;
  }
}

TEST(Adjunction, CoherenceOnPureExpressions) {
  Expansion x = expand(spec("naturality.sf", "Dm"));
  Type G = Type::base("G");
  Term e = Term::comp(Term::atom("prd"), Term::pair(Term::comp(Term::atom("unt"), Term::bang(G)), Term::id(G)));
  EXPECT_EQ(coherence(x, e).status, Status::proven);
  EXPECT_EQ(coherence(x, Term::atom("unt")).status, Status::proven);
}

TEST(ExpandMorphism, PreservesEquations) {
  Document d = load("naturality.sf");
  for (const char* m : {"phi", "incl"}) {
    const Morphism& phi = d.morphism(m);
    Expansion xs = expand(phi.src), xd = expand(phi.dst);
    Morphism F = expand_morphism(phi, xs, xd);
    EXPECT_EQ(check_morphism(F).status, Status::proven) << m;
  }
}
