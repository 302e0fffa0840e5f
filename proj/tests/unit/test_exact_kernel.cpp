#include "doctest.h"
#include "periods/errors.hpp"
#include "periods/rational.hpp"
#include "periods/sparse.hpp"

using namespace periods;

TEST_CASE("rationals print and parse canonically") {
  Rat r(6, 4);
  r.canonicalize();
  CHECK(to_string(r) == "3/2");
  CHECK(to_string(Rat(-5)) == "-5");
  CHECK(parse_rat("10/4") == Rat(5, 2));
  CHECK(parse_rat("-7") == Rat(-7));
  CHECK_THROWS(parse_rat("1/0"));
  CHECK_THROWS(parse_rat("abc"));
}

TEST_CASE("lincomb drops zero coefficients") {
  LinComb<int> a(1, Rat(2));
  a.add(1, Rat(-2));
  CHECK(a.empty());
  LinComb<int> b(3, Rat(1, 3));
  b *= Rat(0);
  CHECK(b.empty());
}

namespace {

// Dense Gauss-Jordan over Q; independent oracle for rref rank and pivots.
std::pair<std::size_t, std::vector<std::size_t>> hand_rref(std::vector<std::vector<Rat>> m) {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || sgn(m[r][c]) == 0) continue;
      Rat f = m[r][c] / m[rank][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    pivots.push_back(c);
    ++rank;
  }
  return {rank, pivots};
}

}  // namespace

TEST_CASE("sparse rref matches a dense hand elimination") {
  unsigned seed = 12345;
  auto next = [&] {
    seed = seed * 1103515245u + 12345u;
    return static_cast<int>((seed >> 16) % 7) - 3;
  };
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 3 + trial % 5, cols = 4 + trial % 4;
    std::vector<std::vector<Rat>> dense(rows, std::vector<Rat>(cols));
    SparseMat m;
    m.ncols = cols;
    for (std::size_t r = 0; r < rows; ++r) {
      SparseRow row;
      for (std::size_t c = 0; c < cols; ++c) {
        int v = next();
        if (trial % 3 == 0 && r > 1) v = 0;
        dense[r][c] = v;
        row.add(c, Rat(v));
      }
      m.rows.push_back(row);
    }
    if (rows > 2) {
      // Force a dependency.
      m.rows.push_back(m.rows[0] + m.rows[1]);
      std::vector<Rat> s(cols);
      for (std::size_t c = 0; c < cols; ++c) s[c] = dense[0][c] + dense[1][c];
      dense.push_back(s);
    }
    auto ref = hand_rref(dense);
    auto got = rref(m);
    CHECK(got.rank == ref.first);
    CHECK(got.pivots == ref.second);
  }
}

TEST_CASE("span solver expresses members and rejects non-members") {
  using V = LinComb<int>;
  V a(0), b(1), c;
  c.add(0, 1);
  c.add(1, 1);
  auto sol = solve_in_span(V(0, Rat(3)) + V(1, Rat(2)), std::vector<V>{a, b, c});
  REQUIRE(sol.has_value());
  Rat x = (*sol)[0], y = (*sol)[1], z = (*sol)[2];
  CHECK(x + z == 3);
  CHECK(y + z == 2);
  CHECK_FALSE(solve_in_span(V(2), std::vector<V>{a, b, c}).has_value());
}
