#include "periods/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "periods/errors.hpp"

namespace periods {

namespace {

void check_prec(int prec) {
  if (prec < 1 || prec > kMaxPrec) {
    throw OutOfDomain("precision must be in 1.." + std::to_string(kMaxPrec));
  }
}

// Series terms needed for a convergence ratio of 1/2.
std::size_t terms_for(int prec, std::size_t len) {
  return static_cast<std::size_t>((prec + 12) * 3.33) + 12 * len + 24;
}

// Values of I(y; c_1 ... c_k; y + h) for k = 0..n, expanding around y. The
// letters are already shifted (c - y); letter 0 is only allowed at y itself,
// and never in the first position.
std::vector<BigComplex> prefix_series(const std::vector<BigComplex>& c,
                                      const std::vector<bool>& is_zero,
                                      const BigComplex& h, std::size_t N,
                                      mpfr_prec_t bits) {
  std::vector<BigComplex> out;
  out.emplace_back(BigFloat(1, bits), BigFloat(0, bits));
  // Scaled coefficients F[m] * h^m.
  std::vector<BigComplex> F(N + 1, BigComplex(bits));
  F[0] = BigComplex(BigFloat(1, bits), BigFloat(0, bits));
  for (std::size_t j = 0; j < c.size(); ++j) {
    std::vector<BigComplex> next(N + 1, BigComplex(bits));
    if (is_zero[j]) {
      for (std::size_t m = 1; m <= N; ++m) {
        next[m] = F[m];
        next[m].re.div_si(static_cast<long>(m));
        next[m].im.div_si(static_cast<long>(m));
      }
    } else {
      BigComplex hc = h / c[j];
      BigComplex inv = BigComplex(BigFloat(1, bits), BigFloat(0, bits)) / c[j];
      BigComplex g(bits);
      for (std::size_t m = 0; m + 1 <= N; ++m) {
        g = g * hc - F[m] * inv;
        BigComplex t = g * h;
        t.re.div_si(static_cast<long>(m + 1));
        t.im.div_si(static_cast<long>(m + 1));
        next[m + 1] = t;
      }
    }
    F = std::move(next);
    BigComplex sum(bits);
    for (std::size_t m = N + 1; m-- > 0;) sum += F[m];
    out.push_back(sum);
  }
  return out;
}

BigComplex cplx(long v, mpfr_prec_t bits) {
  return BigComplex(BigFloat(v, bits), BigFloat(0, bits));
}

// Straight-path evaluation for words whose first letter is nonzero.
BigComplex eval_ii_admissible(const Word& a, const BigComplex& x, int prec) {
  const mpfr_prec_t bits = bits_for_digits(prec);
  const std::size_t n = a.size();
  if (n == 0) return cplx(1, bits);
  const std::size_t N = terms_for(prec, n);
  std::vector<Letter> letters(a.begin(), a.end());
  std::sort(letters.begin(), letters.end());
  letters.erase(std::unique(letters.begin(), letters.end()), letters.end());

  // V[k] = I(0; a_1..a_k; y).
  std::vector<BigComplex> V(n + 1, BigComplex(bits));
  V[0] = cplx(1, bits);
  BigComplex y(bits);
  bool at_origin = true;
  const double xr = x.re.to_double(), xi = x.im.to_double();
  for (int guard = 0; guard < 100000; ++guard) {
    double yr = y.re.to_double(), yi = y.im.to_double();
    double remaining = std::hypot(xr - yr, xi - yi);
    if (!at_origin && remaining == 0) break;
    double radius = 1e300;
    for (Letter l : letters) {
      if (at_origin && l == 0) continue;
      radius = std::min(radius, std::hypot(l - yr, yi));
    }
    double step = std::min(remaining, radius / 2);
    BigComplex target = x;
    if (step < remaining) {
      BigComplex dir = x - y;
      BigFloat scale(0, bits);
      scale = BigFloat(Rat(1), bits);
      // y + (x - y) * step / remaining
      BigFloat s(bits);
      mpfr_set_d(s.raw(), step / remaining, MPFR_RNDN);
      dir *= s;
      target = y + dir;
    }
    BigComplex h = target - y;
    std::vector<BigComplex> W(n + 1, BigComplex(bits));
    std::size_t starts = at_origin ? 1 : n;
    for (std::size_t j = 0; j < starts; ++j) {
      if (V[j].re.is_zero() && V[j].im.is_zero()) continue;
      std::vector<BigComplex> shifted;
      std::vector<bool> zero;
      for (std::size_t k = j; k < n; ++k) {
        BigComplex c = cplx(a[k], bits) - y;
        zero.push_back(at_origin && a[k] == 0);
        shifted.push_back(c);
      }
      auto S = prefix_series(shifted, zero, h, N, bits);
      for (std::size_t m = 0; m < S.size(); ++m) W[j + m] += V[j] * S[m];
    }
    if (!at_origin) W[n] += V[n];
    V = std::move(W);
    y = target;
    at_origin = false;
    if (step == remaining) break;
  }
  return V[n];
}

BigComplex factorial_inv(std::size_t j, mpfr_prec_t bits) {
  BigFloat f(1, bits);
  for (std::size_t i = 2; i <= j; ++i) f.div_si(static_cast<long>(i));
  return BigComplex(f, BigFloat(0, bits));
}

}  // namespace

BigFloat eval_iword(const Word& w, int prec) {
  check_prec(prec);
  for (Letter l : w) {
    if (l != 0 && l != 1 && l != -1) throw UnsupportedLetter("in numeric evaluation");
  }
  if (!is_normal(w)) throw Divergent("word is not in normal form");
  const mpfr_prec_t bits = bits_for_digits(prec);
  const std::size_t n = w.size();
  if (n == 0) return BigFloat(1, bits);
  const std::size_t N = terms_for(prec, n);
  BigComplex half(BigFloat(Rat(1, 2), bits), BigFloat(0, bits));

  std::vector<BigComplex> c;
  std::vector<bool> zero;
  for (Letter l : w) {
    c.push_back(cplx(l, bits));
    zero.push_back(l == 0);
  }
  auto P = prefix_series(c, zero, half, N, bits);

  std::vector<BigComplex> d;
  std::vector<bool> dzero;
  for (std::size_t i = n; i-- > 0;) {
    d.push_back(cplx(1 - w[i], bits));
    dzero.push_back(w[i] == 1);
  }
  auto Q = prefix_series(d, dzero, half, N, bits);

  BigFloat sum(bits);
  for (std::size_t k = 0; k <= n; ++k) {
    BigFloat t = (P[k] * Q[n - k]).re;
    if ((n - k) % 2) t = -t;
    sum += t;
  }
  return sum;
}

BigFloat eval_mzv(const Composition& c, int prec) {
  if (!c.empty() && c.back().n == 1 && c.back().sign == 1) {
    throw Divergent(comp_to_string(c));
  }
  BigFloat v = eval_iword(comp_to_iword(c), prec);
  return (c.size() % 2) ? -v : v;
}

BigComplex eval_ii(const Word& a, const BigComplex& x, int prec) {
  check_prec(prec);
  for (Letter l : a) {
    if (l != 0 && l != 1 && l != -1) throw UnsupportedLetter("in numeric evaluation");
  }
  const mpfr_prec_t bits = bits_for_digits(prec);
  BigFloat r = x.norm();
  if (BigFloat(1, bits) < r) throw OutOfDomain("|x| > 1");
  if (a.empty()) return cplx(1, bits);
  if (x.re.is_zero() && x.im.is_zero()) return BigComplex(bits);
  for (Letter l : a) {
    if (l != 0 && x.im.is_zero() && x.re.to_double() == l) {
      // Endpoint on a singular letter: only the regularized value at +-1.
      Word b = a;
      if (l == -1) {
        for (auto& t : b) t = -t;
      }
      BigComplex out(bits);
      for (const auto& [u, c] : regularize_ii(0, b, 1)) {
        BigFloat v = eval_iword(u, prec) * BigFloat(c, bits);
        out.re += v;
      }
      if (a.back() == l) throw OutOfDomain("divergent at the endpoint");
      return out;
    }
  }
  // Leading zeros: 0^k b w' = sum_j 0^j sh (-1)^{k-j} b (0^{k-j} sh w').
  std::size_t k = 0;
  while (k < a.size() && a[k] == 0) ++k;
  BigComplex lx = x.log();
  if (k == a.size()) {
    BigComplex p = cplx(1, bits);
    for (std::size_t i = 0; i < k; ++i) p *= lx;
    return p * factorial_inv(k, bits);
  }
  if (k == 0) return eval_ii_admissible(a, x, prec);
  Letter b = a[k];
  Word tail(a.begin() + k + 1, a.end());
  BigComplex total(bits);
  BigComplex lpow = cplx(1, bits);
  for (std::size_t j = 0; j <= k; ++j) {
    BigComplex inner(bits);
    for (const auto& [u, c] : shuffle(Word(k - j, 0), tail)) {
      Word v{b};
      v.insert(v.end(), u.begin(), u.end());
      BigComplex t = eval_ii_admissible(v, x, prec);
      t *= BigFloat(c, bits);
      inner += t;
    }
    if ((k - j) % 2) inner = -inner;
    total += lpow * factorial_inv(j, bits) * inner;
    lpow *= lx;
  }
  return total;
}

BigComplex eval_li(const Word& w, const BigComplex& x, int prec) {
  int ones = 0;
  for (Letter l : w) {
    if (l != 0 && l != 1) throw UnsupportedLetter("Li words use e0 and e1");
    ones += l;
  }
  BigComplex v = eval_ii(w, x, prec);
  return (ones % 2) ? -v : v;
}

BigFloat bloch_wigner(const BigComplex& z, int prec) {
  const mpfr_prec_t bits = bits_for_digits(prec);
  BigFloat r = z.norm();
  if (r.is_zero()) throw OutOfDomain("D(0)");
  BigComplex one = cplx(1, bits);
  BigComplex omz = one - z;
  if (omz.re.is_zero() && omz.im.is_zero()) throw OutOfDomain("D(1)");
  if (BigFloat(1, bits) < r) return -bloch_wigner(one / z, prec);
  BigComplex li2 = eval_li(Word{1, 0}, z, prec);
  return li2.im + omz.arg() * log(r);
}

BigComplex per_eval(const MotivicExpr& x, int prec) {
  check_prec(prec);
  const mpfr_prec_t bits = bits_for_digits(prec);
  BigComplex two_pi_i(BigFloat(0, bits), BigFloat::pi(bits).mul_si(2));
  std::map<Word, BigFloat> words;
  std::map<int, BigFloat> logs;
  BigComplex out(bits);
  for (const auto& [g, c] : x) {
    BigComplex t(BigFloat(c, bits), BigFloat(0, bits));
    if (g.lef < 0) throw Unevaluable("negative power of L");
    for (int i = 0; i < g.lef; ++i) t *= two_pi_i;
    if (!g.w.empty()) {
      auto it = words.find(g.w);
      if (it == words.end()) it = words.emplace(g.w, eval_iword(g.w, prec)).first;
      t *= it->second;
    }
    for (int p : g.logs) {
      auto it = logs.find(p);
      if (it == logs.end()) it = logs.emplace(p, log(BigFloat(p, bits))).first;
      t *= it->second;
    }
    out += t;
  }
  return out;
}

BigFloat tail_bound(const BigFloat& magnitude, int prec) {
  const mpfr_prec_t bits = bits_for_digits(prec);
  BigFloat m = abs(magnitude);
  if (m < BigFloat(1, bits)) m = BigFloat(1, bits);
  return m * pow10_neg(std::max(prec - 5, 0), bits);
}

}  // namespace periods
