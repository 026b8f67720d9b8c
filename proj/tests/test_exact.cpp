#include <gtest/gtest.h>

#include "sketchforge/exact.hpp"
#include "sketchforge/json_io.hpp"
#include "support.hpp"

using namespace sketchforge;
using testing_support::fixture_path;
using testing_support::spec;

namespace {

Type A = Type::base("A"), X = Type::base("X"), Y = Type::base("Y");

FinModel state_m0() { return model_from_json(spec("state.sf", "St"), read_json_file(fixture_path("models/state_m0.json"))); }

// Every model of Oper_A with the given carriers for X and Y and |A| = k.
std::vector<FinModel> oper_A_models(std::size_t k, std::size_t nx, std::size_t ny) {
  Expansion x = expand(spec("oper.sf", "Oper"));
  return all_models(x.expanded, FinModel{}, {{"A", k}, {"X", nx}, {"Y", ny}});
}

}  // namespace

TEST(Extend, ChoosesTheArgument) {
  Passing p = lax_cocone(spec("oper.sf", "Oper"));
  FinModel n = carriers_only({{"A", 2}, {"X", 1}, {"Y", 2}});
  n.tables["f'"] = Table{Type::prod(A, X), Y, {0, 1}};
  EXPECT_EQ(extend_with_argument(p.w.spec, n, "1").tables.at("a").values, (std::vector<int>{1}));
  EXPECT_EQ(all_models(p.w.spec, n, {}).size(), 2u);
  FinModel empty = carriers_only({{"A", 0}, {"X", 1}, {"Y", 2}});
  empty.tables["f'"] = Table{Type::prod(A, X), Y, {}};
  EXPECT_EQ(all_models(p.w.spec, empty, {}).size(), 0u);
  EXPECT_THROW(extend_with_argument(p.w.spec, n, "7"), Error);
}

TEST(Terminal, SizesOfParameterSets) {
  EXPECT_EQ(terminal_model(spec("oper.sf", "Oper"), carriers_only({{"X", 2}, {"Y", 3}})).params.size(), 9u);
  FinModel z2 = model_from_json(spec("naturality.sf", "Mon"), read_json_file(fixture_path("models/z2_monoid.json")));
  EXPECT_EQ(terminal_model(spec("naturality.sf", "Dm"), z2).params.size(), 1u);
  TerminalModel st = terminal_model(spec("state.sf", "St"), state_m0());
  EXPECT_EQ(st.params.size(), 4u);
  EXPECT_EQ(st.model.carriers.at("A"), (std::vector<std::string>{"m0", "m1", "m2", "m3"}));
  EXPECT_EQ(st.model.tables.at("v'").values.size(), 8u);
}

TEST(Terminal, EveryModelOverHasExactlyOneMorphism) {
  FinModel m0 = carriers_only({{"X", 2}, {"Y", 2}});
  TerminalModel t = terminal_model(spec("oper.sf", "Oper"), m0);
  std::size_t checked = 0;
  for (std::size_t k = 0; k <= 3; ++k)
    for (const auto& n : oper_A_models(k, 2, 2)) {
      std::vector<Table> found;
      ASSERT_EQ(count_morphisms_over(t, n, &found), 1u);
      EXPECT_EQ(found[0], unique_to_terminal(t, n, m0).components.at("A"));
      ++checked;
    }
  EXPECT_EQ(checked, 1u + 4u + 16u + 64u);
}

TEST(Terminal, StateExample) {
  FinModel m0 = state_m0();
  TerminalModel t = terminal_model(spec("state.sf", "St"), m0);
  // Two states: one reads 0 everywhere, one reads (1, 0).
  FinModel n = m0;
  n.carriers["A"] = {"s", "u"};
  n.tables["v'"] = Table{Type::prod(A, Type::base("L")), Type::base("Z"), {0, 0, 1, 0}};
  ModelMorphism h = unique_to_terminal(t, n, m0);
  for (int k = 0; k < 2; ++k) {
    FinModel mu = t.params[h.components.at("A").values[k]];
    EXPECT_EQ(mu, induced_model(t.x, n, k));
  }
  EXPECT_TRUE(check_model_morphism(t.x.expanded, h).empty());
  EXPECT_EQ(count_morphisms_over(t, n), 1u);
}

TEST(Terminal, IdentityOnItself) {
  FinModel m0 = state_m0();
  TerminalModel t = terminal_model(spec("state.sf", "St"), m0);
  ModelMorphism h = unique_to_terminal(t, t.model, m0);
  EXPECT_EQ(h.components.at("A").values, (std::vector<int>{0, 1, 2, 3}));
}

TEST(Terminal, NotOverM0) {
  FinModel m0 = carriers_only({{"X", 2}, {"Y", 2}});
  TerminalModel t = terminal_model(spec("oper.sf", "Oper"), m0);
  FinModel n = oper_A_models(1, 1, 2).front();
  try {
    unique_to_terminal(t, n, m0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_over_m0);
  }
}

TEST(Terminal, BrokenMorphismIsReported) {
  FinModel m0 = state_m0();
  TerminalModel t = terminal_model(spec("state.sf", "St"), m0);
  ModelMorphism h = unique_to_terminal(t, t.model, m0);
  h.components["A"].values = {1, 1, 2, 3};
  EXPECT_FALSE(check_model_morphism(t.x.expanded, h).empty());
}

TEST(PassParameter, BijectionWithModels) {
  FinModel m0 = carriers_only({{"X", 2}, {"Y", 3}});
  Spec oper = spec("oper.sf", "Oper");
  TerminalModel t = terminal_model(oper, m0);
  for (std::size_t k = 0; k < t.params.size(); ++k) {
    PassedParameter pp = pass_parameter(oper, t.model, parameter_label(k));
    EXPECT_EQ(pp.model, t.params[k]);
    EXPECT_EQ(pp.m.components.at("A").values, (std::vector<int>{static_cast<int>(k)}));
  }
}

TEST(PassParameter, Currying) {
  // M(f)(x) = M_A(f')(alpha, x) for every alpha and x.
  Spec oper = spec("oper.sf", "Oper");
  for (const auto& n : oper_A_models(2, 2, 2))
    for (const std::string alpha : {"0", "1"}) {
      PassedParameter pp = pass_parameter(oper, n, alpha);
      int av = std::stoi(alpha);
      for (int x = 0; x < 2; ++x) EXPECT_EQ(pp.model.tables.at("f").values[x], n.tables.at("f'").values[av * 2 + x]);
    }
}
