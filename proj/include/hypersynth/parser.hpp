#pragma once

#include <string>

#include "hypersynth/formula.hpp"

namespace hypersynth {

// formula := quant* body ; quant := ("forall"|"exists") IDENT "."
// Throws SyntaxError, UnboundVariable, DuplicateQuantifier.
Formula parse(const std::string& text);
Body parse_body(const std::string& text);

}  // namespace hypersynth
