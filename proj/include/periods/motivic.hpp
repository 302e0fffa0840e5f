#pragma once

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "periods/lincomb.hpp"
#include "periods/words.hpp"

namespace periods {

// One generator (L)^lef * I(0; w; 1) * prod log(p). The same shape serves as
// a motivic generator (left of the coaction) and as a de Rham generator
// (right of the coaction, where lef counts powers of L^dr).
struct Gen {
  int lef = 0;
  Word w;
  std::vector<int> logs;  // primes, sorted, with repetition

  int mzv_weight() const {
    return lef + static_cast<int>(w.size()) + static_cast<int>(logs.size());
  }
  int weight() const { return 2 * mzv_weight(); }
  int depth() const;  // number of nonzero letters
  bool is_unit() const { return lef == 0 && w.empty() && logs.empty(); }

  friend bool operator==(const Gen&, const Gen&) = default;
  friend bool operator<(const Gen& a, const Gen& b);
};

using MotivicExpr = LinComb<Gen>;
using DrExpr = LinComb<Gen>;
using GenPair = std::pair<Gen, Gen>;
using CoactionTensor = LinComb<GenPair>;
using GenTriple = std::tuple<Gen, Gen, Gen>;
using Coaction2 = LinComb<GenTriple>;

// True when the word is a valid I(0; w; 1) key: no leading 0, no trailing 1.
bool is_normal(const Word& w);

// I(a0; w; a1) as a combination of normal-form words read from 0 to 1, with
// both tangential regulators I(0;0;1) and I(0;1;1) set to 0.
WordComb regularize_ii(Letter a0, const Word& w, Letter a1);

// Builders.
MotivicExpr scalar(const Rat& c);
MotivicExpr lefschetz(int power = 1);
MotivicExpr log_of(long long n);  // n >= 2, split into primes
MotivicExpr zeta(const Composition& c);  // throws NotAdmissible
MotivicExpr iint(Letter a0, const Word& w, Letter a1);

// I-word of a composition: blocks a_i 0^{n_i - 1}; zeta(c) = (-1)^r I(word).
Word comp_to_iword(const Composition& c);
// Inverse on normal-form words; returns (composition, sign) with
// I(w) = sign * zeta(composition).
std::pair<Composition, int> iword_to_comp(const Word& w);

MotivicExpr operator*(const MotivicExpr& a, const MotivicExpr& b);
Gen mul_gen_shape(const Gen& a, const Gen& b);  // lef and logs only

int max_weight(const MotivicExpr& x);  // mzv weight; 0 for scalars

// Goncharov's formula on one generator; the right factor carries
// (L^dr)^{mzv weight of the left factor}.
CoactionTensor coaction(const Gen& g);
CoactionTensor coaction(const MotivicExpr& x);

// Sets L^dr to 1 on the right.
CoactionTensor unipotent(const CoactionTensor& t);

// Applies evaluation at the identity (counit) to the right factor.
MotivicExpr counit_right(const CoactionTensor& t);

// (coaction x id) and (id x de Rham coproduct) of a coaction output.
Coaction2 coassoc_left(const CoactionTensor& t);
Coaction2 coassoc_right(const CoactionTensor& t);

// Printing with the input grammar; de Rham factors use the same syntax.
std::string to_string(const Gen& g, Rat* coeff_sign = nullptr);
std::string to_string(const MotivicExpr& x);
std::string to_string(const CoactionTensor& t);

}  // namespace periods
