#include <gtest/gtest.h>

#include "sketchforge/deduction.hpp"
#include "sketchforge/parser.hpp"
#include "support.hpp"

using namespace sketchforge;
using testing_support::load;
using testing_support::spec;

namespace {

Type X = Type::base("X"), Y = Type::base("Y"), G = Type::base("G");

// All binary operations on {0, 1}, as tables indexed by 2x + y.
std::vector<std::vector<int>> binary_ops() {
  std::vector<std::vector<int>> out;
  for (int code = 0; code < 16; ++code) out.push_back({code >> 3 & 1, code >> 2 & 1, code >> 1 & 1, code & 1});
  return out;
}

bool associative(const std::vector<int>& t) {
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        if (t[2 * x + t[2 * y + z]] != t[2 * t[2 * x + y] + z]) return false;
  return true;
}

FinModel magma(const std::vector<int>& t) {
  FinModel m;
  m.carriers["G"] = {"0", "1"};
  m.tables["prd"] = Table{Type::prod(G, G), G, t};
  return m;
}

}  // namespace

TEST(Normalize, UnitRules) {
  Spec s = spec("oper.sf", "Oper");
  EXPECT_EQ(normalize(s, Term::comp(Term::id(Y), Term::comp(Term::atom("f"), Term::id(X)))), Term::atom("f"));
}

TEST(Normalize, PairingRules) {
  Spec s = spec("oper.sf", "Oper");
  Term f = Term::atom("f");
  Term g = Term::comp(f, Term::id(X));
  EXPECT_EQ(normalize(s, Term::comp(Term::proj1(Y, Y), Term::pair(f, g))), f);
  EXPECT_EQ(normalize(s, Term::pair(Term::proj1(X, Y), Term::proj2(X, Y))), Term::id(Type::prod(X, Y)));
}

TEST(Normalize, PairingUniquenessAgreesWithModels) {
  // <p1, p2> and id agree in every model with |X|, |Y| <= 3.
  Spec s = spec("oper.sf", "Oper");
  Term l = Term::pair(Term::proj1(X, Y), Term::proj2(X, Y)), r = Term::id(Type::prod(X, Y));
  for (std::size_t nx = 0; nx <= 3; ++nx)
    for (std::size_t ny = 0; ny <= 3; ++ny)
      enumerate_models(s, FinModel{}, {{"X", nx}, {"Y", ny}}, [&](const FinModel& m) {
        EXPECT_TRUE(agree(m, l, r));
        return true;
      });
}

TEST(Normalize, CollapsesIntoUnit) {
  Spec s = spec("nat.sf", "Nat");
  Type N = Type::base("N");
  EXPECT_EQ(normalize(s, Term::comp(Term::bang(N), Term::atom("s"))), Term::bang(N));
  EXPECT_EQ(normalize(s, Term::comp(Term::bang(N), Term::atom("z"))), normalize(s, Term::id(Type::unit())));
}

TEST(Entails, FourElementReassociation) {
  Document d = load("sgp.sf");
  const Spec& s = d.spec("Sgp");
  auto g = parse_goal(s, "prd(x, prd(y, prd(z, w))) == prd(prd(prd(x, y), z), w) where x y z w : G");
  Verdict v = entails(s, g.first, g.second);
  ASSERT_EQ(v.status, Status::proven) << v.reason;
  EXPECT_GE(v.trace.size(), 2u);
  // Oracle: every associative operation on a 2-set satisfies it.
  int associative_count = 0;
  for (const auto& t : binary_ops())
    if (associative(t)) {
      ++associative_count;
      EXPECT_TRUE(agree(magma(t), g.first, g.second));
    }
  EXPECT_EQ(associative_count, 8);
}

TEST(Entails, Reflexivity) {
  Spec s = spec("oper.sf", "Oper");
  EXPECT_EQ(entails(s, Term::atom("f"), Term::atom("f")).status, Status::proven);
}

TEST(Entails, MagmaIsNotAssociative) {
  Document d = load("sgp.sf");
  const Equation& assoc = d.spec("Sgp").equations[0];
  Verdict v = entails(d.spec("Mgm"), assoc.lhs, assoc.rhs);
  ASSERT_EQ(v.status, Status::refuted);
  ASSERT_TRUE(v.countermodel.has_value());
  EXPECT_EQ(v.countermodel->carriers.at("G").size(), 2u);
  EXPECT_FALSE(associative(v.countermodel->tables.at("prd").values));
  EXPECT_TRUE(satisfies(d.spec("Mgm"), *v.countermodel));
}

TEST(Entails, TraceStepsAreSound) {
  Spec s = spec("mon.sf", "Mon");
  auto g = parse_goal(s, "prd(unt, prd(x, unt)) == x where x : G");
  Verdict v = entails(s, g.first, g.second);
  ASSERT_EQ(v.status, Status::proven);
  // Every step holds in every monoid on at most 3 elements.
  enumerate_models(s, FinModel{}, {{"G", 3}}, [&](const FinModel& m) {
    for (const auto& st : v.trace) EXPECT_TRUE(agree(m, st.from, st.to)) << st.equation;
    return true;
  });
}

TEST(Entails, DifferentialConsequences) {
  Spec s = spec("dm.sf", "Dm");
  for (const char* goal : {"dif(dif(dif(x))) == dif(unt) where x : G", "dif(prd(x, unt)) == dif(x) where x : G",
                           "prd(dif(dif(x)), y) == y where x y : G"}) {
    auto g = parse_goal(s, goal);
    Verdict v = entails(s, g.first, g.second);
    EXPECT_EQ(v.status, Status::proven) << goal << ": " << v.reason;
  }
}

TEST(Entails, BudgetExhaustionIsUnknown) {
  Spec s = spec("sgp.sf", "Sgp");
  auto g = parse_goal(s, "prd(x, prd(y, prd(z, w))) == prd(prd(prd(x, y), z), w) where x y z w : G");
  Budget b;
  b.max_iters = 0;
  b.countermodels = false;
  EXPECT_EQ(entails(s, g.first, g.second, b).status, Status::unknown);
}

TEST(Equivalence, AlternativePresentationsOfOperWithArgument) {
  Document d = load("oper.sf");
  CheckReport r = equivalent_specs(d.spec("OperA1"), d.spec("OperA2"));
  EXPECT_EQ(r.status, Status::proven) << r.note;
}

TEST(Equivalence, SameSpecAndMagmaVersusSemigroup) {
  Document d = load("sgp.sf");
  EXPECT_EQ(equivalent_specs(d.spec("Sgp"), d.spec("Sgp")).status, Status::proven);
  Spec mgm = d.spec("Mgm");
  EXPECT_NE(equivalent_specs(d.spec("Sgp"), mgm).status, Status::proven);
}

TEST(Budget, ReadFromEnvironment) {
  setenv("SKETCHFORGE_BUDGET", "3,5", 1);
  Budget b = budget_from_env();
  unsetenv("SKETCHFORGE_BUDGET");
  EXPECT_EQ(b.max_depth, 3u);
  EXPECT_EQ(b.max_iters, 5u);
  EXPECT_EQ(b.max_model_size, Budget{}.max_model_size);
}
