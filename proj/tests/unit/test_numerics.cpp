#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "periods/errors.hpp"
#include "periods/numerics.hpp"
#include "periods/parse.hpp"
#include "oracles.hpp"

using namespace periods;

namespace {

constexpr int kPrec = 40;
const mpfr_prec_t kBits = bits_for_digits(kPrec);

double diff(const BigFloat& a, const BigFloat& b) { return abs(a - b).to_double(); }

BigFloat pi() { return BigFloat::pi(kBits); }

BigFloat rat(long p, long q = 1) { return BigFloat(Rat(p, q), kBits); }

}  // namespace

TEST_CASE("zeta(2) and zeta(3) against closed forms") {
  CHECK(diff(eval_mzv({Part{2, 1}}, kPrec), pi() * pi() / rat(6)) < 1e-38);
  BigFloat apery = oracle::apery_zeta3(kBits);
  CHECK(diff(eval_mzv({Part{3, 1}}, kPrec), apery) < 1e-38);
  CHECK(diff(eval_mzv({Part{4, 1}}, kPrec), pi() * pi() * pi() * pi() / rat(90)) < 1e-38);
  CHECK_THROWS_AS(eval_mzv({Part{2, 1}, Part{1, 1}}, kPrec), Divergent);
  CHECK_THROWS_AS(eval_mzv({Part{2, 1}}, 0), OutOfDomain);
  CHECK_THROWS_AS(eval_mzv({Part{2, 1}}, kMaxPrec + 1), OutOfDomain);
}

TEST_CASE("alternating words") {
  BigFloat l2 = BigFloat::log2(kBits);
  CHECK(diff(eval_iword({-1}, kPrec), l2) < 1e-38);
  CHECK(diff(eval_iword({-1, 0}, kPrec), pi() * pi() / rat(12)) < 1e-38);
  CHECK_THROWS_AS(eval_iword({2}, kPrec), UnsupportedLetter);
}

TEST_CASE("polylogarithms at rational points") {
  BigComplex half(rat(1, 2));
  BigFloat l2 = BigFloat::log2(kBits);
  BigComplex li2 = eval_li({1, 0}, half, kPrec);
  CHECK(diff(li2.re, pi() * pi() / rat(12) - l2 * l2 / rat(2)) < 1e-38);
  CHECK(abs(li2.im).to_double() < 1e-38);
  BigComplex x(rat(3, 10));
  CHECK(diff(eval_li({1}, x, kPrec).re, -log(rat(7, 10))) < 1e-38);
  CHECK(diff(eval_li({0}, x, kPrec).re, log(rat(3, 10))) < 1e-38);
  // Li3(1/2) = 7/8 zeta(3) - pi^2/12 log 2 + (log 2)^3 / 6.
  BigFloat li3 = rat(7, 8) * eval_mzv({Part{3, 1}}, kPrec) - pi() * pi() / rat(12) * l2 +
                 l2 * l2 * l2 / rat(6);
  CHECK(diff(eval_li({1, 0, 0}, half, kPrec).re, li3) < 1e-36);
  CHECK_THROWS_AS(eval_ii({1}, BigComplex(rat(2)), kPrec), OutOfDomain);
}

TEST_CASE("Bloch-Wigner at i is Catalan's constant") {
  BigFloat catalan = oracle::catalan(kBits);
  BigComplex i(rat(0), rat(1));
  CHECK(diff(bloch_wigner(i, kPrec), catalan) < 1e-36);
}

TEST_CASE("Bloch-Wigner symmetries") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> num(-9, 9);
  for (int k = 0; k < 10; ++k) {
    long a = num(rng), b = num(rng);
    if (b == 0) b = 1;
    BigComplex z(rat(a, 7), rat(b, 5));
    BigFloat d = bloch_wigner(z, kPrec);
    CHECK(diff(bloch_wigner(z.conj(), kPrec), -d) < 1e-35);
    BigComplex one(rat(1));
    CHECK(diff(bloch_wigner(one - z, kPrec), -d) < 1e-35);
    CHECK(diff(bloch_wigner(one / (one - z), kPrec), d) < 1e-35);
    CHECK(diff(bloch_wigner(one / z, kPrec), -d) < 1e-35);
  }
  CHECK_THROWS_AS(bloch_wigner(BigComplex(rat(0)), kPrec), OutOfDomain);
}

TEST_CASE("nested sums agree with the iterated-integral evaluator") {
  for (int w = 2; w <= 5; ++w) {
    for (const auto& c : testing::admissible(w)) {
      BigFloat ref = oracle::nested_sum(c);
      BigFloat v = eval_mzv(c, 30);
      CHECK(diff(v, ref) < 1e-12);
    }
  }
}

TEST_CASE("period map") {
  BigComplex z = per_eval(parse_motivic("zeta(2) + L^2/24"), kPrec);
  CHECK(z.norm().to_double() < 1e-38);
  BigComplex l = per_eval(parse_motivic("L"), kPrec);
  CHECK(abs(l.re).to_double() < 1e-38);
  CHECK(diff(l.im, rat(2) * pi()) < 1e-38);
  BigComplex lg = per_eval(parse_motivic("log(6)"), kPrec);
  CHECK(diff(lg.re, log(rat(6))) < 1e-38);
}

TEST_CASE("period map is multiplicative") {
  std::vector<Composition> small;
  for (int w = 2; w <= 4; ++w)
    for (const auto& c : testing::admissible(w)) small.push_back(c);
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
  for (int k = 0; k < 20; ++k) {
    MotivicExpr x = zeta(small[pick(rng)]) + lefschetz(1);
    MotivicExpr y = zeta(small[pick(rng)]) + log_of(3);
    BigComplex lhs = per_eval(x * y, kPrec);
    BigComplex rhs = per_eval(x, kPrec) * per_eval(y, kPrec);
    CHECK((lhs - rhs).norm().to_double() < 1e-35);
  }
}

TEST_CASE("printed bound") {
  BigFloat b = tail_bound(rat(1), 30);
  CHECK(b.to_double() > 0);
  CHECK(b.to_double() < 1e-24);
  CHECK(tail_bound(rat(1000), 30).to_double() > b.to_double());
}
