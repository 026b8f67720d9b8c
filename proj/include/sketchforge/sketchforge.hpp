#ifndef SKETCHFORGE_SKETCHFORGE_HPP
#define SKETCHFORGE_SKETCHFORGE_HPP

#include "builtins.hpp"
#include "colimit.hpp"
#include "deduction.hpp"
#include "error.hpp"
#include "exact.hpp"
#include "json_io.hpp"
#include "metasketch.hpp"
#include "models.hpp"
#include "morphism.hpp"
#include "normalize.hpp"
#include "parameterize.hpp"
#include "parampass.hpp"
#include "parser.hpp"
#include "spec.hpp"
#include "syntax.hpp"

#endif  // SKETCHFORGE_SKETCHFORGE_HPP
