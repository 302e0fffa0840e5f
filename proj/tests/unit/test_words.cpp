#include <random>
#include <set>

#include "doctest.h"
#include "periods/errors.hpp"
#include "periods/words.hpp"
#include "oracles.hpp"

using namespace periods;

using oracle::brute_shuffle;
using oracle::brute_stuffle;

namespace {

Word random_word(std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), letter(-1, 1);
  Word w(len(rng));
  for (auto& l : w) l = letter(rng);
  return w;
}

Composition random_comp(std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len), part(1, 3), sign(0, 1);
  Composition c(len(rng));
  for (auto& p : c) p = Part{part(rng), sign(rng) ? 1 : -1};
  return c;
}

CompComb stuffle(const CompComb& a, const CompComb& b) {
  CompComb out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) out.axpy(cu * cv, stuffle(u, v));
  return out;
}

}  // namespace

TEST_CASE("shuffle agrees with the position-choice definition") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    Word u = random_word(rng, 4), v = random_word(rng, 4);
    CHECK(shuffle(u, v) == brute_shuffle(u, v));
  }
}

TEST_CASE("shuffle is commutative and associative on random words") {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    Word u = random_word(rng, 3), v = random_word(rng, 3), w = random_word(rng, 3);
    CHECK(shuffle(u, v) == shuffle(v, u));
    CHECK(shuffle(shuffle(u, v), WordComb(w)) == shuffle(WordComb(u), shuffle(v, w)));
  }
}

TEST_CASE("stuffle agrees with the surjection definition") {
  std::mt19937 rng(13);
  for (int i = 0; i < 200; ++i) {
    Composition a = random_comp(rng, 3), b = random_comp(rng, 3);
    CHECK(stuffle(a, b) == brute_stuffle(a, b));
  }
}

TEST_CASE("stuffle is commutative and associative on random compositions") {
  std::mt19937 rng(17);
  for (int i = 0; i < 200; ++i) {
    Composition a = random_comp(rng, 3), b = random_comp(rng, 2), c = random_comp(rng, 2);
    CHECK(stuffle(a, b) == stuffle(b, a));
    CHECK(stuffle(stuffle(a, b), CompComb(c)) == stuffle(CompComb(a), stuffle(b, c)));
  }
}

TEST_CASE("deconcatenation is coassociative, exhaustively up to length 6") {
  int checked = 0;
  for (int len = 0; len <= 6; ++len) {
    for (int m = 0; m < (1 << len); ++m) {
      Word w(len);
      for (int i = 0; i < len; ++i) w[i] = m >> i & 1;
      std::multiset<std::vector<Word>> left, right;
      for (const auto& [u, v] : deconcat(w))
        for (const auto& [u1, u2] : deconcat(u)) left.insert({u1, u2, v});
      for (const auto& [u, v] : deconcat(w))
        for (const auto& [v1, v2] : deconcat(v)) right.insert({u, v1, v2});
      CHECK(left == right);
      ++checked;
    }
  }
  CHECK(checked == 127);
}

TEST_CASE("Lyndon word counts match the necklace formula") {
  for (int k = 2; k <= 3; ++k) {
    for (int n = 1; n <= (k == 2 ? 12 : 8); ++n) {
      auto ws = lyndon_words(k, n);
      CHECK(static_cast<long long>(ws.size()) == witt_count(k, n));
      for (const auto& w : ws) {
        // Strictly smaller than every proper rotation.
        for (int r = 1; r < n; ++r) {
          Word rot(w.begin() + r, w.end());
          rot.insert(rot.end(), w.begin(), w.begin() + r);
          CHECK(w < rot);
        }
      }
    }
  }
  CHECK(witt_count(2, 12) == 335);
}

TEST_CASE("composition <-> word round trip") {
  std::mt19937 rng(19);
  for (int i = 0; i < 100; ++i) {
    Composition c = random_comp(rng, 4);
    if (c.back().n == 1 && c.back().sign == 1) c.back().n = 2;
    CHECK(word_to_comp(comp_to_word(c)) == c);
  }
  CHECK(comp_to_string(Composition{{2, 1}, {3, -1}}) == "zeta(2,-3)");
  CHECK_THROWS_AS(word_to_comp(Word{1, 0}), NotAdmissible);
}
