#pragma once

#include <gmpxx.h>

#include <string>

namespace periods {

using Rat = mpq_class;
using BigInt = mpz_class;

// "p/q", or "p" when q = 1.
std::string to_string(const Rat& r);

// Accepts "p", "-p", "p/q"; the result is canonical.
Rat parse_rat(const std::string& s);

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

}  // namespace periods
