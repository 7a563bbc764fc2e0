#pragma once

#include <string_view>

#include "ltlfpo/formula.hpp"

namespace ltlfpo {

/// Reads the ASCII formula syntax:
///
///   true false ident ! & | -> <-> X WX U R F G ( )
///
/// Binding strength, tightest first: the prefix operators (! X WX F G),
/// then U and R (right associative), &, |, -> (right associative), <->.
/// A `#` starts a comment that runs to the end of the line.
///
/// Throws ParseError carrying the 1-based line and column of the offending
/// token.
Formula parse_formula(std::string_view text);

} // namespace ltlfpo
