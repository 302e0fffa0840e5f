#pragma once

#include "periods/bigfloat.hpp"
#include "periods/motivic.hpp"
#include "periods/words.hpp"

namespace periods {

constexpr int kMaxPrec = 200;

// I(0; w; 1) for a normal-form word over {0, 1, -1}, by splitting the path
// at 1/2 (Hoelder convolution).
BigFloat eval_iword(const Word& w, int prec);

BigFloat eval_mzv(const Composition& c, int prec);  // throws Divergent

// I(0; a_1 ... a_n; x) over letters {0, 1, -1}, |x| <= 1, along the straight
// path from 0 with the tangential base point of unit speed at 0.
BigComplex eval_ii(const Word& letters, const BigComplex& x, int prec);

// Li_w(x) for a word over e0 (letter 0) and e1 (letter 1):
// Li_{e1 e0^{n-1}}(x) = Li_n(x), Li_{e0}(x) = log x.
BigComplex eval_li(const Word& w, const BigComplex& x, int prec);

BigFloat bloch_wigner(const BigComplex& z, int prec);

BigComplex per_eval(const MotivicExpr& x, int prec);

// Bound attached to printed values: prec - 5 correct digits, relative to
// max(1, |value|).
BigFloat tail_bound(const BigFloat& magnitude, int prec);

}  // namespace periods
