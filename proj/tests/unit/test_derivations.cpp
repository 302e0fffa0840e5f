#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "periods/derivations.hpp"
#include "periods/errors.hpp"
#include "periods/parse.hpp"

using namespace periods;

namespace {

RExpr red(const char* s) { return reduce(parse_motivic(s), testing::table8()); }

int depth(const Composition& c) { return static_cast<int>(c.size()); }

RExpr d_of(int r, const RExpr& x) {
  auto all = derivations(x, testing::table8());
  return all.count(r) ? all.at(r) : RExpr{};
}

}  // namespace

TEST_CASE("D5 of zeta(3,5)") {
  const auto& t = testing::table8();
  MotivicExpr x = parse_motivic("zeta(3,5)");
  CHECK(derivation_D(5, x, t) == red("-5*zeta(3)"));
  CHECK(derivation_D(3, x, t).empty());
  CHECK(derivation_D(7, x, t).empty());
  CHECK(derivation_D(3, parse_motivic("zeta(3)"), t) == red("1"));
  CHECK_THROWS_AS(derivation_D(3, parse_motivic("zeta(2)"), t), WeightOutOfRange);
}

TEST_CASE("derivation map agrees with single derivations") {
  const auto& t = testing::table8();
  for (int w = 3; w <= 8; ++w) {
    for (const auto& c : testing::admissible(w)) {
      MotivicExpr x = zeta(c);
      auto all = derivations(reduce(x, t), t);
      for (int r = 3; r <= w; r += 2) {
        RExpr expect = all.count(r) ? all.at(r) : RExpr{};
        CHECK(derivation_D(r, x, t) == expect);
      }
    }
  }
}

TEST_CASE("derivations obey Leibniz") {
  const auto& t = testing::table8();
  std::vector<Composition> small;
  for (int w = 2; w <= 5; ++w)
    for (const auto& c : testing::admissible(w)) small.push_back(c);
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
  int tried = 0;
  while (tried < 30) {
    MotivicExpr x = zeta(small[pick(rng)]), y = zeta(small[pick(rng)]);
    if (max_weight(x) + max_weight(y) > 8) continue;
    ++tried;
    for (int r = 3; r <= 7; r += 2) {
      RExpr rx = reduce(x, t), ry = reduce(y, t);
      RExpr lhs = d_of(r, reduce(x * y, t));
      RExpr rhs = d_of(r, rx) * ry + rx * d_of(r, ry);
      CHECK(lhs == reduce(to_motivic(rhs), t));
    }
  }
}

TEST_CASE("reduced coaction has the counit property") {
  const auto& t = testing::table8();
  for (int w = 2; w <= 8; ++w) {
    for (const auto& c : testing::admissible(w)) {
      RExpr x = reduce(zeta(c), t);
      for (bool unip : {false, true}) {
        RExpr back;
        for (const auto& [p, coef] : reduced_coaction(x, t, unip)) {
          if (p.second.mono.empty() && p.second.logs.empty()) {
            CHECK(p.second.lef == (unip ? 0 : w));
            back.add(p.first, coef);
          }
        }
        CHECK(back == x);
      }
    }
  }
}

TEST_CASE("unipotency degree values and depth bound") {
  const auto& t = testing::table8();
  CHECK(unipotency_degree(parse_motivic("zeta(3,5)"), t) == 2);
  CHECK(unipotency_degree(parse_motivic("zeta(2,3)"), t) == 1);
  CHECK(unipotency_degree(parse_motivic("zeta(3)*zeta(5)"), t) == 2);
  CHECK(unipotency_degree(parse_motivic("zeta(5)"), t) == 1);
  CHECK(unipotency_degree(parse_motivic("zeta(2)^2"), t) == 0);
  CHECK(unipotency_degree(parse_motivic("L"), t) == 0);
  CHECK(unipotency_degree(parse_motivic("log(2)*zeta(3)"), t) == 2);
  for (int w = 2; w <= 8; ++w) {
    for (const auto& c : testing::admissible(w)) {
      CHECK(unipotency_degree(zeta(c), t) <= depth(c));
    }
  }
}

TEST_CASE("Galois conjugates") {
  const auto& t = testing::table8();
  Conjugates c = galois_conjugates(parse_motivic("zeta(3,5)"), t);
  CHECK(c.basis.size() == 3);
  int total = 0;
  for (const auto& [p, h] : c.hodge) total += h;
  CHECK(total == 3);
  CHECK(galois_conjugates(parse_motivic("zeta(2)^2"), t).basis.size() == 1);
  CHECK(galois_conjugates(parse_motivic("zeta(3)*zeta(5)"), t).basis.size() == 4);
  // Conjugates of a conjugate stay inside the span.
  for (const auto& b : c.basis) {
    CHECK(galois_conjugates(to_motivic(b), t).basis.size() <= 3);
  }
}

TEST_CASE("de Rham projection") {
  const auto& t = testing::table8();
  CHECK(project_dr(parse_motivic("zeta(2)"), t).empty());
  CHECK(project_dr(parse_motivic("L^3"), t).empty());
  CHECK(project_dr(parse_motivic("zeta(3)"), t) == red("zeta(3)"));
  CHECK(project_dr(parse_motivic("zeta(2,3)"), t) == red("-11/2*zeta(5)"));
  CHECK(project_dr(parse_motivic("zeta(3)^2 + zeta(2)*zeta(3)"), t) == red("zeta(3)^2"));
  MotivicExpr neg(Gen{-1, {}, {}});
  CHECK_THROWS_AS(project_dr(neg, t), NotEffective);
}
