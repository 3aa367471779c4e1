#pragma once

#include "lk/forest.hpp"

#include <string>
#include <string_view>

namespace lk {

// Line-oriented forest document:
//   vertex <id> <framing|unframed>
//   edge <id> <id>
// '#' starts a comment. Syntax problems raise ParseError with the line
// number; a well-formed document describing an invalid forest raises
// StructureError.
Forest parse_forest(std::string_view document);

// Normalized form: vertices sorted by id, then edges sorted by endpoint ids.
std::string emit_forest(const Forest& forest);

Forest read_forest_file(const std::string& path);

}  // namespace lk
