#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "periods/bigfloat.hpp"
#include "periods/lincomb.hpp"

namespace periods {

// Monomial in named generators; only L may carry a negative exponent.
using PMon = std::map<std::string, int>;
using SymPoly = LinComb<PMon>;

SymPoly sym_const(const Rat& c);
SymPoly sym_gen(const std::string& name, int power = 1);
SymPoly operator*(const SymPoly& a, const SymPoly& b);
std::string to_string(const SymPoly& p);

struct GenInfo {
  int weight = 0;
  int frob_sign = 1;
  std::string frob_image;  // same name unless a bar partner
};

struct SymRing {
  std::map<std::string, GenInfo> gens;

  void add(const std::string& name, int weight, int sign, const std::string& image);
  // Adds a generator and its bar partner, swapped by Frobenius.
  void add_pair(const std::string& name, const std::string& bar, int weight);
  // Throws UnknownGenerator when an image is missing or not an involution.
  void validate() const;
};

SymRing default_ring();  // L with F(L) = -L

// Parses "2*log(2)*L^-1 - 1/2*zeta(3)"; generator names may contain a
// balanced parenthesized argument.
SymPoly parse_sym(const std::string& text, const SymRing& ring);

using SymMatrix = std::vector<std::vector<SymPoly>>;

struct PeriodMatrix {
  SymRing ring;
  SymMatrix entries;
  std::vector<std::pair<int, int>> hodge;  // (p, q) per basis vector
  std::vector<int> weights;                // Hodge weight 2n per column

  std::size_t size() const { return entries.size(); }
};

PeriodMatrix build_lefschetz();
PeriodMatrix build_kummer(const Rat& alpha);
PeriodMatrix build_zeta(int n);
PeriodMatrix build_polylog_tower(int depth);
PeriodMatrix build(const std::string& kind, const std::string& param);  // CLI helper

SymPoly frobenius(const SymPoly& p, const SymRing& ring);
PeriodMatrix frobenius_apply(const PeriodMatrix& m);

SymMatrix mat_mul(const SymMatrix& a, const SymMatrix& b);
SymMatrix upper_inverse(const SymMatrix& a);  // throws NotInvertible

PeriodMatrix single_valued(const PeriodMatrix& m);
PeriodMatrix single_valued_twisted(const PeriodMatrix& m);

struct Invariants {
  std::string hodge_poly;
  int rank = 0;
  SymPoly det;  // normalized to a monic monomial
};
Invariants invariants(const PeriodMatrix& m);

using RatMatrix = std::vector<std::vector<Rat>>;
PeriodMatrix monodromy_apply(const RatMatrix& g, const PeriodMatrix& m);

std::string matrix_to_string(const SymMatrix& m);

// Numerical value with L -> 2 pi i and the given generator values.
BigComplex per_sym(const SymPoly& p, const std::map<std::string, BigComplex>& values,
                   int prec);

std::string matrix_to_json(const PeriodMatrix& m);
PeriodMatrix matrix_from_json(const std::string& text);

}  // namespace periods
