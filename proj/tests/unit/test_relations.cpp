#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "periods/errors.hpp"
#include "periods/numerics.hpp"
#include "periods/parse.hpp"
#include "periods/relations.hpp"

using namespace periods;

TEST_CASE("datamined dimensions") {
  RelationTable t = datamine(9);
  const int expect[] = {0, 0, 1, 1, 1, 2, 2, 3, 4, 5};
  for (int w = 2; w <= 9; ++w) {
    CHECK(t.at(w).basis.size() == static_cast<std::size_t>(expect[w]));
    CHECK(expected_dimension(w) == expect[w]);
    CHECK_FALSE(t.at(w).fallback);
  }
  CHECK_THROWS_AS(datamine(10), WeightTooLarge);
  CHECK_THROWS_AS(t.at(10), WeightTooLarge);
}

TEST_CASE("low-weight reductions") {
  const auto& t = testing::table8();
  auto red = [&](const char* s) { return to_string(reduce(parse_motivic(s), t)); };
  CHECK(red("zeta(2,3)") == "3*zeta(2)*zeta(3) - 11/2*zeta(5)");
  CHECK(red("zeta(3,2)") == "-2*zeta(2)*zeta(3) + 9/2*zeta(5)");
  CHECK(red("zeta(1,2)") == "zeta(3)");
  CHECK(red("zeta(4)") == "2/5*zeta(2)^2");
  CHECK(red("zeta(3)") == "zeta(3)");
  CHECK(red("L^2") == "-24*zeta(2)");
}

TEST_CASE("reduction is idempotent on all zeta words up to weight 8") {
  const auto& t = testing::table8();
  for (int w = 2; w <= 8; ++w) {
    for (const auto& c : testing::admissible(w)) {
      RExpr r = reduce(zeta(c), t);
      CHECK(reduce(to_motivic(r), t) == r);
    }
  }
}

TEST_CASE("reduction is compatible with products") {
  const auto& t = testing::table8();
  std::vector<Composition> small;
  for (int w = 2; w <= 4; ++w)
    for (const auto& c : testing::admissible(w)) small.push_back(c);
  std::mt19937 rng(29);
  std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
  for (int i = 0; i < 40; ++i) {
    MotivicExpr x = zeta(small[pick(rng)]), y = zeta(small[pick(rng)]);
    if (max_weight(x) + max_weight(y) > 8) continue;
    RExpr lhs = reduce(x * y, t);
    RExpr rhs = reduce(x, t) * reduce(y, t);
    CHECK(lhs == reduce(to_motivic(rhs), t));
  }
}

TEST_CASE("every relation row vanishes numerically") {
  const auto& t = testing::table8();
  std::map<Word, BigFloat> cache;
  const int prec = 40;
  std::size_t rows = 0;
  for (int w = 2; w <= 8; ++w) {
    for (const auto& rel : t.at(w).relations) {
      BigFloat s(0, bits_for_digits(prec));
      for (const auto& [word, c] : rel) {
        auto it = cache.find(word);
        if (it == cache.end()) it = cache.emplace(word, eval_iword(word, prec)).first;
        s += it->second * BigFloat(c, bits_for_digits(prec));
      }
      CHECK(abs(s).to_double() < 1e-30);
      ++rows;
    }
  }
  CHECK(rows > 0);
}

TEST_CASE("reductions agree numerically with the reduced value") {
  const auto& t = testing::table8();
  for (int w = 2; w <= 7; ++w) {
    for (const auto& c : testing::admissible(w)) {
      MotivicExpr x = zeta(c);
      BigComplex a = per_eval(x, 40), b = per_eval(to_motivic(reduce(x, t)), 40);
      CHECK((a - b).norm().to_double() < 1e-30);
    }
  }
}

TEST_CASE("datamine is deterministic and the cache round-trips") {
  RelationTable a = datamine(6), b = datamine(6);
  CHECK(table_to_json(a) == table_to_json(b));
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / ("periods-cache-test-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  std::string path = (dir / "relations-w6-v1.json").string();
  save_table(a, path);
  CHECK(table_to_json(load_table(path)) == table_to_json(a));
  CHECK(table_to_json(load_or_datamine(5, dir.string())) == table_to_json(a));
  {
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto pos = text.find("\"rank\": 1");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 9, "\"rank\": 7");
    std::ofstream out(path);
    out << text;
  }
  CHECK_THROWS_AS(load_table(path), CacheError);
  // A corrupt entry is rebuilt rather than trusted.
  CHECK(table_to_json(load_or_datamine(6, dir.string())) == table_to_json(a));
  fs::remove_all(dir);
}

TEST_CASE("printed reductions re-parse to the same value") {
  const auto& t = testing::table8();
  for (int w = 2; w <= 8; ++w) {
    for (const auto& c : testing::admissible(w)) {
      RExpr r = reduce(zeta(c), t);
      CHECK(reduce(parse_motivic(to_string(r)), t) == r);
      MotivicExpr x = zeta(c) * log_of(2) + lefschetz(1);
      if (max_weight(x) <= 8) CHECK(reduce(parse_motivic(to_string(x)), t) == reduce(x, t));
    }
  }
}
