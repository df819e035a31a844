#pragma once

#include "mpoly.hpp"

#include <string>

namespace g4 {

// Parses the canonical textual form: rational coefficients `p/q`, `*` for
// products, `^` for exponents, `+`/`-` and parentheses.  Round-trips with
// MPoly::str().  Unknown variable names are a parse error.
MPoly parse_poly(const std::string& text, const VarTablePtr& vars);

} // namespace g4
