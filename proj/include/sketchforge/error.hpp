#ifndef SKETCHFORGE_ERROR_HPP
#define SKETCHFORGE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sketchforge {

enum class ErrorKind {
  parse,
  unknown_symbol,
  unknown_variable,
  arity_mismatch,
  ill_typed,
  non_parallel_goal,
  spec_mismatch,
  unsupported_pushout,
  invalid_diagram,
  name_clash,
  incompatible_cocone,
  value_out_of_carrier,
  not_over_m0,
  renaming_mismatch,
  non_finite_universe,
  invalid_model,
  usage,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return "ParseError";
    case ErrorKind::unknown_symbol: return "UnknownSymbol";
    case ErrorKind::unknown_variable: return "UnknownVariable";
    case ErrorKind::arity_mismatch: return "ArityMismatch";
    case ErrorKind::ill_typed: return "IllTyped";
    case ErrorKind::non_parallel_goal: return "NonParallelGoal";
    case ErrorKind::spec_mismatch: return "SpecMismatch";
    case ErrorKind::unsupported_pushout: return "UnsupportedPushout";
    case ErrorKind::invalid_diagram: return "InvalidDiagram";
    case ErrorKind::name_clash: return "NameClash";
    case ErrorKind::incompatible_cocone: return "IncompatibleCocone";
    case ErrorKind::value_out_of_carrier: return "ValueOutOfCarrier";
    case ErrorKind::not_over_m0: return "NotOverM0";
    case ErrorKind::renaming_mismatch: return "RenamingMismatch";
    case ErrorKind::non_finite_universe: return "NonFiniteUniverse";
    case ErrorKind::invalid_model: return "InvalidModel";
    case ErrorKind::usage: return "UsageError";
  }
  return "Error";
}

/// Exception carrying a machine-readable kind next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sketchforge

#endif  // SKETCHFORGE_ERROR_HPP
