#include <gtest/gtest.h>

#include "sketchforge/builtins.hpp"
#include "sketchforge/colimit.hpp"
#include "sketchforge/deduction.hpp"
#include "support.hpp"

using namespace sketchforge;
using testing_support::load;
using testing_support::spec;

namespace {

struct Span {
  Document doc = load("pushout.sf");
  const Morphism& gamma = doc.morphism("gamma_A");
  const Morphism& i_A = doc.morphism("i_A");
};

// Generator-to-generator assignments P -> Q: types to declared types or 1,
// terms to declared terms of the right type.
std::vector<Morphism> generator_assignments(const Spec& p, const Spec& q) {
  std::vector<Type> types{Type::unit()};
  for (const auto& t : q.types) types.push_back(Type::base(t));
  std::vector<Morphism> out;
  Morphism cur{"h", p, q, {}, {}};
  auto terms = [&](auto&& self, std::size_t k) -> void {
    if (k == p.terms.size()) {
      out.push_back(cur);
      return;
    }
    const TermDecl& d = p.terms[k];
    for (const auto& e : q.terms)
      if (e.dom == apply(cur, d.dom) && e.cod == apply(cur, d.cod)) {
        cur.term_map[d.name] = Term::atom(e.name);
        self(self, k + 1);
      }
  };
  auto tys = [&](auto&& self, std::size_t k) -> void {
    if (k == p.types.size()) {
      terms(terms, 0);
      return;
    }
    for (const auto& t : types) {
      cur.type_map[p.types[k]] = t;
      self(self, k + 1);
    }
  };
  tys(tys, 0);
  return out;
}

}  // namespace

TEST(Pushout, AddingTheParameter) {
  Span s;
  Pushout po = pushout(s.gamma, s.i_A, "Oper_a");
  EXPECT_EQ(po.spec.types, (std::vector<std::string>{"A", "X", "Y"}));
  ASSERT_NE(po.spec.find_term("a"), nullptr);
  EXPECT_EQ(po.spec.find_term("a")->cod, Type::base("A"));
  ASSERT_NE(po.spec.find_term("f'"), nullptr);
  EXPECT_TRUE(same_on_generators(compose(po.in1, s.gamma), compose(po.in2, s.i_A)));
}

TEST(Pushout, CollapsingTheParameterType) {
  Span s;
  Builtins b = builtins();
  Pushout po = pushout(s.gamma, b.pi_A_to_pi, "Oper");
  EXPECT_EQ(po.spec.types, (std::vector<std::string>{"X", "Y"}));
  const TermDecl* f = po.spec.find_term("f'");
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->dom, Type::prod(Type::unit(), Type::base("X")));
  EXPECT_TRUE(same_on_generators(compose(po.in1, s.gamma), compose(po.in2, b.pi_A_to_pi)));
  // The generalization leg is surjective on generators.
  for (const auto& t : po.spec.types) {
    bool hit = false;
    for (const auto& [_, img] : po.in1.type_map) hit = hit || img == Type::base(t);
    EXPECT_TRUE(hit) << t;
  }
  for (const auto& d : po.spec.terms) {
    bool hit = false;
    for (const auto& [_, img] : po.in1.term_map) hit = hit || img == Term::atom(d.name);
    EXPECT_TRUE(hit) << d.name;
  }
}

TEST(Pushout, OfIdentities) {
  Builtins b = builtins();
  Pushout po = pushout(identity(b.pi), identity(b.pi), "Pi");
  EXPECT_TRUE(po.spec.types.empty());
  EXPECT_TRUE(po.spec.terms.empty());
}

TEST(Pushout, Errors) {
  Span s;
  Builtins b = builtins();
  try {
    pushout(s.gamma, identity(b.pi), "x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::spec_mismatch);
  }
  Spec g2 = load("sgp.sf").spec("Mgm");
  Spec p;
  p.name = "P";
  p.types = {"T"};
  Morphism f1{"f1", p, g2, {{"T", Type::prod(Type::base("G"), Type::base("G"))}}, {}};
  try {
    pushout(f1, f1, "x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unsupported_pushout);
  }
}

TEST(Pushout, MediatingMorphismIsUnique) {
  Span s;
  Pushout po = pushout(s.gamma, s.i_A, "Oper_a");
  // Cocone: the vertex itself, legs in1 and in2.
  Morphism h = mediate(po, s.gamma, s.i_A, po.in1, po.in2);
  EXPECT_TRUE(same_on_generators(compose(h, po.in1), po.in1));
  std::size_t solutions = 0;
  for (const auto& c : generator_assignments(po.spec, po.spec)) {
    if (!check_typing(c).empty()) continue;
    Morphism c1 = compose(c, po.in1), c2 = compose(c, po.in2);
    c1.name = po.in1.name;
    c2.name = po.in2.name;
    if (same_on_generators(c1, po.in1) && same_on_generators(c2, po.in2)) {
      ++solutions;
      EXPECT_TRUE(same_on_generators(c, h));
    }
  }
  EXPECT_EQ(solutions, 1u);
}

TEST(Pushout, IncompatibleCocone) {
  Span s;
  Pushout po = pushout(s.gamma, s.i_A, "Oper_a");
  Morphism bad = po.in2;
  bad.type_map["A"] = Type::base("X");
  EXPECT_THROW(mediate(po, s.gamma, s.i_A, po.in1, bad), Error);
}

TEST(Decompose, OperHasTwoTypesAndOneTerm) {
  Diagram d = decompose(spec("oper.sf", "Oper"));
  EXPECT_EQ(d.count(Elementary::type), 2u);
  EXPECT_EQ(d.count(Elementary::term), 1u);
  EXPECT_EQ(d.nodes.size(), 3u);
  for (const auto& e : d.edges) EXPECT_TRUE(check_typing(e.m).empty());
}

TEST(Decompose, EmptyPresentation) {
  Diagram d = decompose(builtins().pi);
  EXPECT_TRUE(d.nodes.empty());
  Glued g = glue(d, "Pi");
  EXPECT_TRUE(g.spec.types.empty());
  EXPECT_TRUE(g.spec.terms.empty());
}

TEST(Decompose, SemigroupMatchesHandCount) {
  // Hand decomposition of the desugared associativity equation:
  //   lhs prd . pair(x, prd . pair(y, z)), rhs prd . pair(prd . pair(x, y), z)
  //   x = p1 . p1, y = p2 . p1: two composites on each side, twice
  //   composites with prd: two per side; pairs: two per side
  Diagram d = decompose(spec("sgp.sf", "Sgp"));
  EXPECT_EQ(d.count(Elementary::type), 1u);
  EXPECT_EQ(d.count(Elementary::term), 1u);
  EXPECT_EQ(d.count(Elementary::prod2), 2u);
  EXPECT_EQ(d.count(Elementary::comp), 8u);
  EXPECT_EQ(d.count(Elementary::tuple2), 4u);
  EXPECT_EQ(d.count(Elementary::equa), 1u);
  EXPECT_EQ(d.nodes.size(), 17u);
}

TEST(Glue, RoundTripOnCorpus) {
  for (const char* file : {"oper.sf", "sgp.sf", "mon.sf", "dm.sf", "nat.sf", "state.sf"})
    for (const auto& s : load(file).specs) {
      Glued g = glue(decompose(s), s.name);
      auto r = order_renaming(g.spec, s);
      CheckReport eq = equivalent_specs(g.spec, s);
      EXPECT_TRUE(r.has_value() || eq.status == Status::proven) << s.name;
      EXPECT_EQ(eq.status, Status::proven) << s.name << ": " << eq.note;
    }
}

TEST(Glue, SharedTypeIsIdentified) {
  Spec t;
  t.name = "T";
  t.types = {"T"};
  Spec u = t, v = t;
  u.name = "U";
  v.name = "V";
  Morphism e1{"e1", t, u, {{"T", Type::base("T")}}, {}};
  Morphism e2{"e2", t, v, {{"T", Type::base("T")}}, {}};
  Diagram d;
  d.nodes = {{"Type#1", Elementary::type, t, "T"}, {"Type#2", Elementary::type, u, "T"}, {"Type#3", Elementary::type, v, "T"}};
  d.edges = {{"Type#1", "Type#2", e1}, {"Type#1", "Type#3", e2}};
  Glued g = glue(d);
  EXPECT_EQ(g.spec.types.size(), 1u);
}

TEST(Glue, RejectsNonGeneratorEdges) {
  Spec mgm = load("sgp.sf").spec("Mgm");
  Spec t;
  t.name = "T";
  t.types = {"T"};
  Morphism e{"e", t, mgm, {{"T", Type::prod(Type::base("G"), Type::base("G"))}}, {}};
  Diagram d;
  d.nodes = {{"Type#1", Elementary::type, t, "T"}, {"Term#1", Elementary::term, mgm, "prd"}};
  d.edges = {{"Type#1", "Term#1", e}};
  try {
    glue(d);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::invalid_diagram);
  }
}
