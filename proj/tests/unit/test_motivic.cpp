#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "periods/errors.hpp"
#include "periods/motivic.hpp"
#include "periods/numerics.hpp"
#include "periods/parse.hpp"

using namespace periods;

namespace {

Gen word_gen(const Word& w, int lef = 0) {
  Gen g;
  g.w = w;
  g.lef = lef;
  return g;
}

CoactionTensor tensor_mul(const CoactionTensor& a, const CoactionTensor& b) {
  CoactionTensor out;
  for (const auto& [pa, ca] : a) {
    for (const auto& [pb, cb] : b) {
      MotivicExpr l = MotivicExpr(pa.first) * MotivicExpr(pb.first);
      MotivicExpr r = MotivicExpr(pa.second) * MotivicExpr(pb.second);
      for (const auto& [gl, cl] : l)
        for (const auto& [gr, cr] : r) out.add({gl, gr}, ca * cb * cl * cr);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("regularization base cases") {
  CHECK(regularize_ii(0, {}, 1) == WordComb(Word{}));
  CHECK(regularize_ii(0, {1, 0, 1}, 0).empty());
  CHECK(regularize_ii(0, {0, 1}, 1) == WordComb(Word{1, 0}, -1));
  CHECK(regularize_ii(0, {0}, 1).empty());
  CHECK(regularize_ii(0, {1}, 1).empty());
  CHECK_THROWS_AS(regularize_ii(0, {2}, 1), UnsupportedLetter);
}

TEST_CASE("path reversal sign") {
  for (const Word& w : {Word{1, 0}, Word{1, 0, 0}, Word{1, 1, 0}, Word{1, 0, 1, 0}}) {
    WordComb rev = regularize_ii(1, Word(w.rbegin(), w.rend()), 0);
    CHECK(rev == regularize_ii(0, w, 1) * Rat(w.size() % 2 ? -1 : 1));
  }
}

TEST_CASE("coaction of log matches the displayed formula") {
  CoactionTensor t = coaction(log_of(2));
  Gen lg;
  lg.logs = {2};
  Gen l1;
  l1.lef = 1;
  CoactionTensor expect;
  expect.add({lg, l1}, 1);
  expect.add({Gen{}, lg}, 1);
  CHECK(t == expect);
  CHECK(to_string(t) == "1 ⊗ log(2) + log(2) ⊗ L");
}

TEST_CASE("coaction of zeta(3) and of the unit") {
  CoactionTensor t = coaction(zeta({{3, 1}}));
  CoactionTensor expect;
  Gen z3 = word_gen({1, 0, 0});
  expect.add({z3, word_gen({}, 3)}, -1);
  expect.add({Gen{}, z3}, -1);
  CHECK(t == expect);
  CoactionTensor u = coaction(scalar(1));
  CHECK(u == CoactionTensor({Gen{}, Gen{}}));
}

TEST_CASE("coassociativity and counit for all zeta words of weight <= 8") {
  int count = 0;
  for (int w = 2; w <= 8; ++w) {
    for (const auto& c : testing::admissible(w)) {
      MotivicExpr x = zeta(c);
      CoactionTensor t = coaction(x);
      CHECK(coassoc_left(t) == coassoc_right(t));
      CHECK(counit_right(t) == x);
      for (const auto& [p, coef] : t) CHECK(p.second.mzv_weight() == w);
      ++count;
    }
  }
  CHECK(count >= 60);
  CHECK(count == 127);
}

TEST_CASE("coaction is multiplicative on random pairs") {
  std::mt19937 rng(23);
  std::vector<MotivicExpr> gens{zeta({{2, 1}}), zeta({{3, 1}}), zeta({{1, 1}, {2, 1}}),
                                log_of(2), lefschetz(1), log_of(3), zeta({{2, 1}, {2, 1}})};
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (int i = 0; i < 20; ++i) {
    const auto& x = gens[pick(rng)];
    const auto& y = gens[pick(rng)];
    CHECK(coaction(x * y) == tensor_mul(coaction(x), coaction(y)));
  }
}

TEST_CASE("product expansion is numerically sound") {
  const int prec = 40;
  auto close = [&](const BigComplex& a, const BigComplex& b) {
    return (a - b).norm().to_double() < 1e-30;
  };
  MotivicExpr z2 = zeta({{2, 1}}), z3 = zeta({{3, 1}});
  CHECK(close(per_eval(z2 * z3, prec), per_eval(z2, prec) * per_eval(z3, prec)));
  MotivicExpr a = zeta({{1, 1}, {2, 1}});
  CHECK(close(per_eval(a * z2, prec), per_eval(a, prec) * per_eval(z2, prec)));
}

TEST_CASE("expressions print in the input grammar and re-parse") {
  for (const char* s : {"zeta(2,3)", "3*zeta(2)*zeta(3) - 11/2*zeta(5)", "L^3*zeta(5)", "log(6)",
                        "I(0; 1 0 0 1 0; 1)", "zeta(2)^2 - 2/5*zeta(4)", "zeta(2,-3)",
                        "(1 + L)*(1 - L)"}) {
    MotivicExpr x = parse_motivic(s);
    CHECK(parse_motivic(to_string(x)) == x);
  }
  CHECK(parse_motivic("zeta(1,2)") == zeta({{1, 1}, {2, 1}}));
  CHECK(parse_motivic("L*L") == lefschetz(2));
  CHECK_THROWS_AS(parse_motivic("zeta(2,1)"), NotAdmissible);
  CHECK_THROWS_AS(parse_motivic("zeta(2"), ParseError);
  CHECK_THROWS_AS(parse_motivic("foo(2)"), ParseError);
  CHECK_THROWS_AS(parse_motivic("zeta(2)/zeta(3)"), ParseError);
}
