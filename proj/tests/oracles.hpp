#pragma once

#include <functional>
#include <vector>

#include "periods/bigfloat.hpp"
#include "periods/words.hpp"

// Reference implementations that share no code with the library.
namespace oracle {

using namespace periods;

// Shuffle by choosing which positions come from the first word.
inline WordComb brute_shuffle(const Word& u, const Word& v) {
  WordComb out;
  const std::size_t n = u.size() + v.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != u.size()) continue;
    Word w;
    std::size_t i = 0, j = 0;
    for (std::size_t k = 0; k < n; ++k) w.push_back(mask >> k & 1 ? u[i++] : v[j++]);
    out.add(w, 1);
  }
  return out;
}

// Quasi-shuffle via the defining sum over surjections onto ordered positions.
inline CompComb brute_stuffle(const Composition& a, const Composition& b) {
  CompComb out;
  const std::size_t p = a.size(), q = b.size();
  for (std::size_t len = std::max(p, q); len <= p + q; ++len) {
    // Strictly increasing maps a -> [len], b -> [len] jointly covering [len].
    std::vector<int> fa(p), fb(q);
    std::function<void(std::size_t, int)> pick_a, pick_b;
    pick_b = [&](std::size_t i, int lo) {
      if (i == q) {
        std::vector<int> hit(len, 0);
        for (int x : fa) hit[x]++;
        for (int x : fb) hit[x]++;
        for (int h : hit)
          if (!h) return;
        Composition c(len, Part{0, 1});
        for (std::size_t k = 0; k < p; ++k) {
          c[fa[k]].n += a[k].n;
          c[fa[k]].sign *= a[k].sign;
        }
        for (std::size_t k = 0; k < q; ++k) {
          c[fb[k]].n += b[k].n;
          c[fb[k]].sign *= b[k].sign;
        }
        out.add(c, 1);
        return;
      }
      for (int x = lo; x < static_cast<int>(len); ++x) {
        fb[i] = x;
        pick_b(i + 1, x + 1);
      }
    };
    pick_a = [&](std::size_t i, int lo) {
      if (i == p) {
        pick_b(0, 0);
        return;
      }
      for (int x = lo; x < static_cast<int>(len); ++x) {
        fa[i] = x;
        pick_a(i + 1, x + 1);
      }
    };
    pick_a(0, 0);
  }
  return out;
}

// Apery: zeta(3) = 5/2 sum (-1)^(n+1) / (n^3 binomial(2n, n)).
inline BigFloat apery_zeta3(mpfr_prec_t bits) {
  BigFloat sum(0, bits), binom(1, bits);
  const long terms = static_cast<long>(bits) / 2 + 10;
  for (long n = 1; n <= terms; ++n) {
    binom.mul_si(2 * (2 * n - 1));
    binom.div_si(n);
    BigFloat term = BigFloat(1, bits) / binom;
    term.div_si(n * n * n);
    if (n % 2 == 0) term = -term;
    sum += term;
  }
  sum.mul_si(5);
  sum.div_si(2);
  return sum;
}

// Ramanujan: G = pi/8 log(2 + sqrt 3) + 3/8 sum (n!)^2 / ((2n)! (2n + 1)^2).
inline BigFloat catalan(mpfr_prec_t bits) {
  BigFloat series(0, bits), term(1, bits);
  const long terms = static_cast<long>(bits) / 2 + 10;
  for (long n = 0; n <= terms; ++n) {
    if (n > 0) {
      term.mul_si(n);
      term.div_si(2 * (2 * n - 1));
    }
    BigFloat t = term;
    t.div_si((2 * n + 1) * (2 * n + 1));
    series += t;
  }
  BigFloat head = BigFloat::pi(bits) * log(BigFloat(2, bits) + sqrt(BigFloat(3, bits)));
  head.div_si(8);
  series.mul_si(3);
  series.div_si(8);
  return head + series;
}

// Solves a dense system by partial pivoting.
inline std::vector<BigFloat> solve(std::vector<std::vector<BigFloat>> a, std::vector<BigFloat> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(a[piv][c]) < abs(a[r][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      BigFloat f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<BigFloat> x(n, BigFloat(a[0][0].bits()));
  for (std::size_t c = n; c-- > 0;) {
    BigFloat s = b[c];
    for (std::size_t k = c + 1; k < n; ++k) s -= a[c][k] * x[k];
    x[c] = s / a[c][c];
  }
  return x;
}

// Truncated nested sums over m_1 < ... < m_r, extrapolated in N with an
// expansion in N^-k log(N)^j.
inline BigFloat nested_sum(const Composition& c) {
  const mpfr_prec_t bits = 400;
  const int r = static_cast<int>(c.size());
  const int kmax = 7, jmax = r;
  const int unknowns = 1 + kmax * jmax;
  const long step = 400;
  std::vector<BigFloat> s(r + 1, BigFloat(0, bits));
  s[0] = BigFloat(1, bits);
  std::vector<long> ns;
  std::vector<BigFloat> vals;
  for (long m = 1; static_cast<int>(ns.size()) < unknowns; ++m) {
    BigFloat inv(1, bits);
    inv.div_si(m);
    for (int j = r; j >= 1; --j) {
      BigFloat t = s[j - 1];
      for (int e = 0; e < c[j - 1].n; ++e) t *= inv;
      s[j] += t;
    }
    if (m % step == 0 && m >= 4 * step) {
      ns.push_back(m);
      vals.push_back(s[r]);
    }
  }
  std::vector<std::vector<BigFloat>> a;
  for (long n : ns) {
    std::vector<BigFloat> row{BigFloat(1, bits)};
    BigFloat ln = log(BigFloat(n, bits));
    for (int k = 1; k <= kmax; ++k) {
      BigFloat nk(1, bits);
      for (int e = 0; e < k; ++e) nk.div_si(n);
      BigFloat lj(1, bits);
      for (int j = 0; j < jmax; ++j) {
        row.push_back(nk * lj);
        lj *= ln;
      }
    }
    a.push_back(row);
  }
  return solve(a, vals)[0];
}

}  // namespace oracle
