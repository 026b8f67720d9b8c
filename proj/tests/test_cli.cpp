#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "sketchforge/cli.hpp"
#include "support.hpp"

using testing_support::fixture_path;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "sketchforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = sketchforge::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ExpandPrintsThePresentation) {
  Result r = call({"expand", fixture_path("oper.sf"), "Oper"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("spec Oper_A"), std::string::npos);
  EXPECT_NE(r.out.find("term f' : A * X -> Y"), std::string::npos);
}

TEST(Cli, ExitCodesFollowVerdicts) {
  std::string sgp = fixture_path("sgp.sf");
  EXPECT_EQ(call({"entail", sgp, "Sgp", "--goal", "prd(x, prd(y, z)) == prd(prd(x, y), z) where x y z : G"}).code, 0);
  EXPECT_EQ(call({"entail", sgp, "Mgm", "--goal", "prd(x, prd(y, z)) == prd(prd(x, y), z) where x y z : G"}).code, 1);
  Result unknown = call({"--max-iters", "0", "--max-model", "0", "entail", sgp, "Sgp", "--goal",
                         "prd(x, prd(y, prd(z, w))) == prd(prd(prd(x, y), z), w) where x y z w : G"});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_NE(unknown.out.find("reason"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({}).code, 3);
  EXPECT_EQ(call({"expand", fixture_path("oper.sf"), "Nope"}).code, 3);
  EXPECT_EQ(call({"expand", fixture_path("oper.sf"), "Oper", "--bogus"}).code, 3);
  Result missing = call({"check", fixture_path("no_such_file.sf")});
  EXPECT_EQ(missing.code, 3);
  EXPECT_FALSE(missing.err.empty());
}

TEST(Cli, JsonOutputParses) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"models", fixture_path("sgp.sf"), "Sgp", "--size", "G=2", "--json"},
           {"terminal", fixture_path("state.sf"), "St", "--pure-model", fixture_path("models/state_m0.json"), "--json"},
           {"realize", fixture_path("nat.sf"), "SNat", "--json"},
           {"check", fixture_path("naturality.sf"), "--json"}}) {
    Result r = call(args);
    EXPECT_EQ(r.code, 0) << args[0] << ": " << r.err;
    EXPECT_TRUE(nlohmann::ordered_json::accept(r.out)) << args[0] << ":\n" << r.out;
  }
}

TEST(Cli, ModelsCountMatchesLibrary) {
  Result r = call({"models", fixture_path("sgp.sf"), "Sgp", "--size", "G=2", "--json"});
  auto j = nlohmann::ordered_json::parse(r.out);
  ASSERT_TRUE(j.contains("count"));
  EXPECT_EQ(j["count"], 8);
}

TEST(Cli, BrokenRealizationIsRefuted) {
  Result r = call({"check-realization", fixture_path("models/broken_realization.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("NotMono"), std::string::npos);
}
