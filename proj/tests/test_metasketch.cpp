#include <gtest/gtest.h>

#include "sketchforge/deduction.hpp"
#include "sketchforge/json_io.hpp"
#include "sketchforge/metasketch.hpp"
#include "support.hpp"

using namespace sketchforge;
using testing_support::fixture_path;
using testing_support::spec;

namespace {

bool has(const std::vector<SketchViolation>& vs, const std::string& kind, const std::string& where) {
  for (const auto& v : vs)
    if (v.kind == kind && v.where == where) return true;
  return false;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// P --f--> Q, g, e : Q -> Q with e an identity and h = g . f; R = Q x Q with
// a tuple t = <f, h> : P -> R.
LimitSketch small_sketch() {
  LimitSketch k;
  k.name = "K";
  k.points = {"P", "Q", "R"};
  k.arrows = {{"f", "P", "Q"}, {"g", "Q", "Q"}, {"h", "P", "Q"}, {"e", "Q", "Q"},
              {"r1", "R", "Q"}, {"r2", "R", "Q"}, {"t", "P", "R"}};
  k.identities = {{"e", "Q"}};
  k.composites = {{"f", "g", "h"}};
  k.cones = {{"R", "R", {{"x", "Q"}, {"y", "Q"}}, {}, {detail::path("R", {"r1"}), detail::path("R", {"r2"})}}};
  k.tuples = {{"R", "t", {detail::path("P", {"f"}), detail::path("P", {"h"})}}};
  return k;
}

Realization small_model(const LimitSketch& k) {
  Realization r;
  r.over = &k;
  r.sets = {{"P", {"p0", "p1"}}, {"Q", {"0", "1"}}, {"R", {"00", "01", "10", "11"}}};
  r.fns = {{"f", {0, 1}}, {"g", {1, 0}}, {"h", {1, 0}}, {"e", {0, 1}},
           {"r1", {0, 0, 1, 1}}, {"r2", {0, 1, 0, 1}}, {"t", {1, 2}}};
  return r;
}

}  // namespace

TEST(Sketches, Shapes) {
  auto b = builtin_sketches();
  EXPECT_EQ(b->gr.points.size(), 2u);
  EXPECT_EQ(b->gr.arrows.size(), 2u);
  EXPECT_EQ(b->grco.points.size(), 4u);
  EXPECT_EQ(b->eqS.points.size(), 14u);
  EXPECT_TRUE(b->eqS.has_point("Equa"));
  EXPECT_FALSE(b->spec.has_point("Equa"));
  EXPECT_EQ(sorted(b->eqS.monos), sorted({"i", "i0", "j", "bdom", "j0", "zcodom", "equa"}));
}

TEST(Sketches, InclusionsPreserveFeatures) {
  auto b = builtin_sketches();
  for (const SketchMorphism* e : {&b->gr_to_grco, &b->grco_to_eqS, &b->gr_to_eqS, &b->spec_to_eqS})
    EXPECT_TRUE(check_sketch_morphism(*e).empty()) << e->name;
  SketchMorphism c = compose(b->grco_to_eqS, b->gr_to_grco);
  EXPECT_EQ(c.points, b->gr_to_eqS.points);
  EXPECT_EQ(c.arrows, b->gr_to_eqS.arrows);
  EXPECT_THROW(compose(b->gr_to_grco, b->gr_to_eqS), Error);
}

TEST(Sketches, BrokenMorphismIsReported) {
  auto b = builtin_sketches();
  SketchMorphism e = b->gr_to_grco;
  e.arrows["dom"] = "fst";
  EXPECT_TRUE(has(check_sketch_morphism(e), "NotAGraphMorphism", "dom"));
}

TEST(Realize, NaturalsTable) {
  auto b = builtin_sketches();
  Realization r = spec_to_realization(spec("nat.sf", "SNat"), b->eqS);
  EXPECT_EQ(r.sets.at("Type"), (std::vector<std::string>{"N", "N'", "1"}));
  EXPECT_EQ(r.sets.at("Term"), (std::vector<std::string>{"z", "s", "p", "p . s", "id[N]"}));
  EXPECT_EQ(r.sets.at("Comp"), (std::vector<std::string>{"<s, p>"}));
  EXPECT_EQ(r.sets.at("Selid"), (std::vector<std::string>{"N"}));
  EXPECT_EQ(r.size("Cons"), 13u);
  EXPECT_EQ(r.size("Cone2"), 11u);
  EXPECT_EQ(r.size("Para"), 7u);
  EXPECT_EQ(r.size("Equa"), 1u);
  EXPECT_TRUE(check_realization(r).empty());
  EXPECT_EQ(r, realization_from_json(b->eqS, read_json_file(fixture_path("models/snat_realization.json"))));
}

TEST(Realize, ConsIsTheSetOfComposablePairs) {
  // Oracle: count pairs (f, g) of terms with codom f == dom g.
  auto b = builtin_sketches();
  for (auto [file, name] : {std::pair{"oper.sf", "Oper"}, {"sgp.sf", "Sgp"}, {"naturality.sf", "Dm"}, {"pi.sf", "Pi"}}) {
    Realization r = spec_to_realization(spec(file, name), b->eqS);
    EXPECT_TRUE(check_realization(r).empty()) << name;
    std::size_t n = r.size("Term"), pairs = 0;
    for (std::size_t f = 0; f < n; ++f)
      for (std::size_t g = 0; g < n; ++g) pairs += r.fns.at("codom")[f] == r.fns.at("dom")[g];
    EXPECT_EQ(r.size("Cons"), pairs) << name;
  }
}

TEST(Realize, BrokenRealization) {
  auto b = builtin_sketches();
  Realization r = realization_from_json(b->eqS, read_json_file(fixture_path("models/broken_realization.json")));
  auto v = check_realization(r);
  EXPECT_TRUE(has(v, "NotMono", "equa"));
  EXPECT_TRUE(has(v, "ConeNotLimiting", "Cons"));
}

TEST(Realize, EmptyGraph) {
  auto b = builtin_sketches();
  Realization r;
  r.over = &b->gr;
  r.sets = {{"Type", {}}, {"Term", {}}};
  r.fns = {{"dom", {}}, {"codom", {}}};
  EXPECT_TRUE(check_realization(r).empty());
  r.sets["Term"] = {"f"};
  EXPECT_TRUE(has(check_realization(r), "BadArity", "dom"));
}

TEST(Realize, BackToPresentation) {
  auto b = builtin_sketches();
  for (auto [file, name] : {std::pair{"nat.sf", "SNat"}, {"sgp.sf", "Sgp"}, {"oper.sf", "Oper"}}) {
    Spec s = spec(file, name);
    Spec back = realization_to_spec(spec_to_realization(s, b->eqS), name);
    EXPECT_EQ(back.types, s.types) << name;
    CheckReport r = equivalent_specs(back, s);
    EXPECT_EQ(r.status, Status::proven) << name << ": " << r.note;
  }
}

TEST(Precompose, IdentityInclusionAndComposition) {
  auto b = builtin_sketches();
  Realization r = spec_to_realization(spec("nat.sf", "SNat"), b->eqS);
  SketchMorphism id = detail::inclusion("id", b->eqS, b->eqS);
  EXPECT_EQ(precompose(id, r), r);
  Realization g = precompose(b->gr_to_eqS, r);
  EXPECT_EQ(g.sets.size(), 2u);
  EXPECT_EQ(g.sets.at("Term"), r.sets.at("Term"));
  EXPECT_TRUE(check_realization(g).empty());
  EXPECT_EQ(precompose(b->gr_to_grco, precompose(b->grco_to_eqS, r)), g);
  EXPECT_THROW(precompose(b->gr_to_grco, r), Error);
}

TEST(Realize, PotentialFeaturesOfSmallSketch) {
  LimitSketch k = small_sketch();
  Realization good = small_model(k);
  EXPECT_TRUE(check_realization(good).empty());

  Realization r = good;
  r.fns["e"] = {1, 1};
  EXPECT_TRUE(has(check_realization(r), "NotIdentity", "e"));
  r = good;
  r.fns["h"] = {0, 0};
  r.fns["t"] = {0, 2};
  EXPECT_TRUE(has(check_realization(r), "NotComposite", "h"));
  r = good;
  r.fns["t"] = {0, 2};
  EXPECT_TRUE(has(check_realization(r), "NotMediating", "t"));
  r = good;
  r.fns["r2"] = {0, 0, 0, 1};
  EXPECT_TRUE(has(check_realization(r), "ConeNotLimiting", "R"));
  r = good;
  r.fns["f"] = {0, 2};
  EXPECT_TRUE(has(check_realization(r), "ValueOutOfSet", "f"));
}
