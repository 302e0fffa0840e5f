#pragma once

#include <string>
#include <vector>

#include "periods/derivations.hpp"

namespace periods {

// L^lef * f2^f2 * (word), lef in {0, 1}; word letters as in FLetter.
struct FMon {
  int lef = 0;
  int f2 = 0;
  std::vector<FLetter> word;

  int degree() const;  // mzv degree
  friend bool operator==(const FMon&, const FMon&) = default;
};

struct FMonLess {
  bool operator()(const FMon& a, const FMon& b) const;
};
inline bool operator<(const FMon& a, const FMon& b) { return FMonLess{}(a, b); }

using FPoly = LinComb<FMon, FMonLess>;

FPoly operator*(const FPoly& a, const FPoly& b);  // shuffle on words

FPoly decompose(const RExpr& x, const RelationTable& t);
FPoly decompose(const MotivicExpr& x, const RelationTable& t);

struct Leading {
  int degree = 0;
  FPoly leading;
};
Leading grC_leading(const MotivicExpr& x, const RelationTable& t);

// Right inverse of decompose; throws NotInRange outside the image.
RExpr recompose(const FPoly& f, const RelationTable& t);

// Suffix (x) prefix on words; f2 and L stay on the left.
LinComb<std::pair<FMon, FMon>> f_coaction(const FPoly& f);

std::string letter_to_string(FLetter a);  // "f5", "nu2"
std::string to_string(const FMon& m, bool l_form = false);
// "3*f2*f3 - 11/2*f5"; with l_form, f2^k prints as (-1/24)^k L^(2k).
std::string to_string(const FPoly& f, bool l_form = false);

}  // namespace periods
