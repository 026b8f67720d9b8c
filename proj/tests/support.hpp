#ifndef SKETCHFORGE_TESTS_SUPPORT_HPP
#define SKETCHFORGE_TESTS_SUPPORT_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "sketchforge/parser.hpp"

namespace testing_support {

inline std::string fixture_path(const std::string& name) { return std::string(SKETCHFORGE_FIXTURES) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline sketchforge::Document load(const std::string& name) { return sketchforge::parse_document(read_fixture(name)); }

inline sketchforge::Spec spec(const std::string& file, const std::string& name) { return load(file).spec(name); }

inline const char* const corpus[] = {"oper.sf", "sgp.sf", "mon.sf", "dm.sf", "nat.sf", "state.sf",
                                     "pi.sf", "naturality.sf", "pushout.sf", "expansions.sf"};

}  // namespace testing_support

#endif
