#pragma once

#include <string>

#include "periods/motivic.hpp"

namespace periods {

// Expression grammar: zeta(n1,...,nr) with optional signs on parts, L,
// log(n), I(a0; a1 ... an; a1), + - * ^ (nonnegative integer powers),
// rational scalars p/q, parentheses. Throws ParseError or NotAdmissible.
MotivicExpr parse_motivic(const std::string& text);

}  // namespace periods
