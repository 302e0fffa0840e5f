#include <fstream>

#include "doctest.h"
#include "periods/errors.hpp"
#include "periods/numerics.hpp"
#include "periods/period_matrix.hpp"

using namespace periods;

namespace {

constexpr int kPrec = 40;
const mpfr_prec_t kBits = bits_for_digits(kPrec);

BigFloat rat(long p, long q = 1) { return BigFloat(Rat(p, q), kBits); }

using Values = std::map<std::string, BigComplex>;

Values dilog_values(const BigComplex& z) {
  BigComplex li1 = eval_li({1}, z, kPrec), li2 = eval_li({1, 0}, z, kPrec), lg = z.log();
  return {{"Li1(x)", li1}, {"Li1bar(x)", li1.conj()}, {"Li2(x)", li2},
          {"Li2bar(x)", li2.conj()}, {"log(x)", lg}, {"logbar(x)", lg.conj()}};
}

BigComplex two_pi_i() { return BigComplex(rat(0), BigFloat::pi(kBits).mul_si(2)); }

double dist(const BigComplex& a, const BigComplex& b) { return (a - b).norm().to_double(); }

}  // namespace

TEST_CASE("single-valued matrices of the basic towers") {
  CHECK(matrix_to_string(single_valued(build_lefschetz()).entries) == "[[-1]]");
  CHECK(matrix_to_string(single_valued_twisted(build_lefschetz()).entries) == "[[1]]");
  CHECK(matrix_to_string(single_valued(build_kummer(2)).entries) == "[[1, 2*log(2)], [0, -1]]");
  CHECK(matrix_to_string(single_valued_twisted(build_kummer(2)).entries) ==
        "[[1, 2*log(2)], [0, 1]]");
  CHECK(matrix_to_string(single_valued(build_zeta(3)).entries) == "[[1, 2*zeta(3)], [0, -1]]");
  CHECK(matrix_to_string(single_valued_twisted(build_zeta(3)).entries) ==
        "[[1, 2*zeta(3)], [0, 1]]");
  CHECK(matrix_to_string(single_valued(build_polylog_tower(2)).entries) ==
        "[[1, Li1(x) + Li1bar(x), Li1bar(x)*log(x) + Li1bar(x)*logbar(x) + Li2(x) - Li2bar(x)], "
        "[0, -1, -log(x) - logbar(x)], [0, 0, 1]]");
  CHECK_THROWS_AS(build("nope", ""), UnsupportedKind);
  CHECK_THROWS_AS(build_polylog_tower(3), UnsupportedKind);
}

TEST_CASE("Frobenius is an involution and inverses are exact") {
  for (const PeriodMatrix& m : {build_kummer(Rat(3, 2)), build_zeta(5), build_polylog_tower(2)}) {
    PeriodMatrix ff = frobenius_apply(frobenius_apply(m));
    CHECK(ff.entries == m.entries);
    SymMatrix prod = mat_mul(m.entries, upper_inverse(m.entries));
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        CHECK(prod[i][j] == (i == j ? sym_const(1) : SymPoly{}));
    // sv(M) times its Frobenius image is the identity up to the twist.
    SymMatrix sv = single_valued(m).entries;
    SymMatrix f = frobenius_apply(single_valued(m)).entries;
    SymMatrix back = mat_mul(f, sv);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        CHECK(back[i][j] == (i == j ? sym_const(1) : SymPoly{}));
  }
  SymMatrix singular{{SymPoly{}}};
  CHECK_THROWS_AS(upper_inverse(singular), NotInvertible);
}

TEST_CASE("invariants") {
  Invariants a = invariants(build_polylog_tower(2));
  CHECK(a.hodge_poly == "1 + r*s + r^2*s^2");
  CHECK(a.rank == 3);
  CHECK(to_string(a.det) == "L^3");
  Invariants z = invariants(build_zeta(3));
  CHECK(z.hodge_poly == "1 + r^3*s^3");
  CHECK(to_string(z.det) == "L^3");
  CHECK(invariants(build_lefschetz()).hodge_poly == "r*s");
}

TEST_CASE("sv top-right entry of the dilog tower") {
  const BigComplex z(rat(1, 2), rat(1, 2));
  SymPoly top = single_valued(build_polylog_tower(2)).entries[0][2];
  BigComplex v = per_sym(top, dilog_values(z), kPrec);
  BigFloat l2 = BigFloat::log2(kBits);
  // Imaginary part 2 D(z); real part -2 log|z| log|1 - z| = -(log 2)^2 / 2.
  CHECK(abs(v.im - rat(2) * bloch_wigner(z, kPrec)).to_double() < 1e-35);
  CHECK(abs(v.re + l2 * l2 / rat(2)).to_double() < 1e-35);
  for (auto [a, b] : {std::pair{1, 3}, std::pair{-2, 5}, std::pair{3, -4}}) {
    BigComplex w(rat(a, 5), rat(b, 7));
    BigComplex u = per_sym(top, dilog_values(w), kPrec);
    BigComplex one(rat(1));
    BigFloat expect_re = rat(-2) * log(w.norm()) * log((one - w).norm());
    CHECK(abs(u.im - rat(2) * bloch_wigner(w, kPrec)).to_double() < 1e-35);
    CHECK(abs(u.re - expect_re).to_double() < 1e-35);
  }
}

TEST_CASE("sv entries are invariant under analytic continuation") {
  SymMatrix sv = single_valued(build_polylog_tower(2)).entries;
  const BigComplex z(rat(1, 3), rat(1, 4));
  Values base = dilog_values(z);
  Values around0 = base, around1 = base;
  around0["log(x)"] += two_pi_i();
  around0["logbar(x)"] -= two_pi_i();
  around1["Li1(x)"] -= two_pi_i();
  around1["Li1bar(x)"] += two_pi_i();
  around1["Li2(x)"] -= two_pi_i() * base["log(x)"];
  around1["Li2bar(x)"] += two_pi_i() * base["logbar(x)"];
  for (const auto& row : sv) {
    for (const auto& e : row) {
      BigComplex v = per_sym(e, base, kPrec);
      CHECK(dist(per_sym(e, around0, kPrec), v) < 1e-35);
      CHECK(dist(per_sym(e, around1, kPrec), v) < 1e-35);
    }
  }
}

TEST_CASE("rational monodromy leaves sv unchanged") {
  PeriodMatrix m = build_polylog_tower(2);
  for (const RatMatrix& rho : {RatMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}},
                               RatMatrix{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}}) {
    CHECK(single_valued(monodromy_apply(rho, m)).entries == single_valued(m).entries);
  }
  CHECK_THROWS_AS(monodromy_apply(RatMatrix{{1}}, m), SizeMismatch);
}

TEST_CASE("matrix JSON round trip") {
  for (const PeriodMatrix& m : {build_kummer(Rat(5)), build_zeta(3), build_polylog_tower(2)}) {
    PeriodMatrix r = matrix_from_json(matrix_to_json(m));
    CHECK(r.entries == m.entries);
    CHECK(r.hodge == m.hodge);
    CHECK(r.weights == m.weights);
    CHECK(single_valued(r).entries == single_valued(m).entries);
  }
  SymRing ring = default_ring();
  CHECK(to_string(parse_sym("2*L^-1 - 1/2*L", ring)) == to_string(sym_const(2) * sym_gen("L", -1) +
                                                               sym_const(Rat(-1, 2)) * sym_gen("L")));
}

TEST_CASE("shipped matrix files match the builders") {
  auto read = [](const std::string& name) {
    std::ifstream in(std::string(PERIODS_SOURCE_DIR) + "/docs/matrices/" + name);
    REQUIRE(in.good());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  };
  CHECK(matrix_from_json(read("dilog.json")).entries == build_polylog_tower(2).entries);
  CHECK(matrix_from_json(read("kummer2.json")).entries == build_kummer(2).entries);
  CHECK(matrix_from_json(read("zeta3.json")).entries == build_zeta(3).entries);
}
