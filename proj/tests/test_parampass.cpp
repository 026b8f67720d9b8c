#include <gtest/gtest.h>

#include "sketchforge/deduction.hpp"
#include "sketchforge/parampass.hpp"
#include "support.hpp"

using namespace sketchforge;
using testing_support::load;
using testing_support::spec;

namespace {

Type A = Type::base("A"), X = Type::base("X");

// Q = T_a with a second constant b : 1 -> A; legs are the inclusion of T_A
// and the passing morphism for b.
LaxCocone second_constant(const Passing& p, const std::string& b = "b") {
  Spec q = p.w.spec;
  q.name += "b";
  q.terms.push_back({b, Type::unit(), A, false});
  Morphism leg1 = p.w.j_A;
  leg1.name = "k_A";
  leg1.dst = q;
  WithParameter wb{q, leg1, b};
  Morphism leg2 = passing_morphism(p.x, wb);
  leg2.name = "k";
  return {p.t_A, leg1, leg2, passing_cell(p.t_A, leg1, leg2, p.x.param, Term::atom(b), "u")};
}

LaxCocone collapsed(const Passing& p) {
  Morphism id_T = identity(p.x.source);
  return {p.t_A, p.t_A, id_T, passing_cell(p.t_A, p.t_A, id_T, p.x.param, Term::id(Type::unit()), "u")};
}

}  // namespace

TEST(AddParameter, OperSemigroupAndPi) {
  WithParameter oper = add_parameter(expand(spec("oper.sf", "Oper")).expanded);
  EXPECT_EQ(oper.spec.name, "Oper_a");
  EXPECT_EQ(oper.a, "a");
  ASSERT_NE(oper.spec.find_term("a"), nullptr);
  EXPECT_EQ(oper.spec.find_term("a")->dom, Type::unit());
  EXPECT_EQ(oper.spec.param_const, std::optional<std::string>("a"));

  WithParameter sgp = add_parameter(expand(spec("sgp.sf", "Sgp")).expanded);
  EXPECT_EQ(sgp.spec.equations.size(), 1u);

  WithParameter pi = add_parameter(spec("pi.sf", "Pi_A"));
  EXPECT_EQ(pi.spec.types, (std::vector<std::string>{"A"}));
  ASSERT_EQ(pi.spec.terms.size(), 1u);
  EXPECT_EQ(pi.spec.terms[0].name, "a");
}

TEST(AddParameter, RequiresParameterType) {
  try {
    add_parameter(spec("oper.sf", "Oper"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::spec_mismatch);
  }
}

TEST(Passing, ImagesOfJ) {
  Passing oper = lax_cocone(spec("oper.sf", "Oper"));
  EXPECT_EQ(oper.j.term_map.at("f"),
            Term::comp(Term::atom("f'"), Term::pair(Term::comp(Term::atom("a"), Term::bang(X)), Term::id(X))));
  Passing sgp = lax_cocone(spec("sgp.sf", "Sgp"));
  EXPECT_EQ(to_string(sgp.j.term_map.at("prd")), "prd' . pair(a . bang[G * G], id[G * G])");
  Passing nat = lax_cocone(spec("nat.sf", "Nat"));
  EXPECT_EQ(nat.j.term_map.at("z"), Term::atom("z"));
  for (const Passing* p : {&oper, &sgp, &nat}) EXPECT_EQ(check_morphism(p->j).status, Status::proven);
}

TEST(Passing, LaxCoconeEquationsOnCorpus) {
  for (auto [file, name] : {std::pair{"oper.sf", "Oper"}, {"sgp.sf", "Sgp"}, {"nat.sf", "SNat"},
                            {"naturality.sf", "Dm"}, {"state.sf", "St"}}) {
    CheckReport r = check_lax_cocone(lax_cocone(spec(file, name)));
    EXPECT_EQ(r.status, Status::proven) << name << ": " << r.note;
  }
}

TEST(Mediating, TowardCollapseIsTa) {
  Passing p = lax_cocone(spec("oper.sf", "Oper"));
  Morphism h = mediating(p, collapsed(p));
  h.name = p.t_a.name;
  EXPECT_TRUE(same_on_generators(h, p.t_a));
}

TEST(Mediating, TowardItselfIsIdentity) {
  Passing p = lax_cocone(spec("sgp.sf", "Sgp"));
  Morphism h = mediating(p, p.cocone);
  Morphism id = identity(p.w.spec);
  h.name = id.name;
  EXPECT_TRUE(same_on_generators(h, id));
}

TEST(Mediating, SecondConstant) {
  Passing p = lax_cocone(spec("oper.sf", "Oper"));
  LaxCocone c = second_constant(p);
  Morphism h = mediating(p, c);
  EXPECT_EQ(h.term_map.at("a"), Term::atom("b"));
  EXPECT_EQ(satisfies_cocone(p, h, c), Status::proven);
}

TEST(Mediating, UniqueAmongCandidates) {
  Passing p = lax_cocone(spec("oper.sf", "Oper"));
  for (const LaxCocone& c : {p.cocone, collapsed(p), second_constant(p)}) {
    Morphism h = mediating(p, c);
    auto all = mediating_candidates(p, c);
    ASSERT_EQ(all.size(), 1u) << c.leg1.dst.name;
    all[0].name = h.name;
    EXPECT_TRUE(same_on_generators(all[0], h));
  }
}

TEST(Mediating, IncompatibleCocone) {
  Passing p = lax_cocone(spec("oper.sf", "Oper"));
  LaxCocone c = collapsed(p);
  c.base = identity(p.x.expanded);
  EXPECT_THROW(mediating(p, c), Error);
  LaxCocone d = second_constant(p);
  d.leg2 = p.j;
  try {
    mediating(p, d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::incompatible_cocone);
  }
}

TEST(Naturality, OfJ) {
  Document d = load("naturality.sf");
  for (const char* m : {"phi", "incl"}) {
    CheckReport r = check_J_naturality(d.morphism(m));
    EXPECT_EQ(r.status, Status::proven) << m << ": " << r.note;
  }
  EXPECT_EQ(check_J_naturality(identity(d.spec("Dm"))).status, Status::proven);
}

TEST(Naturality, RequiresPurityPreservation) {
  Document d = load("naturality.sf");
  // unt is pure, dif is not.
  Morphism bad{"bad", d.spec("Mon"), d.spec("Dm"), {{"G", Type::base("G")}},
               {{"prd", Term::atom("prd")}, {"unt", Term::comp(Term::atom("dif"), Term::atom("unt"))}}};
  EXPECT_THROW(check_J_naturality(bad), Error);
}
