#include "periods/motivic.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "periods/errors.hpp"

namespace periods {

int Gen::depth() const {
  return static_cast<int>(std::count_if(w.begin(), w.end(), [](Letter l) { return l != 0; }));
}

bool operator<(const Gen& a, const Gen& b) {
  int wa = a.mzv_weight(), wb = b.mzv_weight();
  if (wa != wb) return wa < wb;
  if (a.lef != b.lef) return a.lef > b.lef;
  if (a.logs.size() != b.logs.size()) return a.logs.size() < b.logs.size();
  if (a.logs != b.logs) return a.logs < b.logs;
  return LenLex{}(a.w, b.w);
}

bool is_normal(const Word& w) {
  return w.empty() || (w.front() != 0 && w.back() != 1);
}

namespace {

void check_letter(Letter l) {
  if (l != 0 && l != 1 && l != -1) {
    throw UnsupportedLetter("letter " + std::to_string(l) + " outside {0,1,-1}");
  }
}

Word reversed(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

Word negated(Word w) {
  for (auto& l : w) l = -l;
  return w;
}

WordComb reg01(const Word& w);

WordComb reg01_uncached(const Word& w) {
  WordComb out;
  if (is_normal(w)) {
    out.add(w, 1);
    return out;
  }
  const std::size_t n = w.size();
  if (w.back() == 1) {
    std::size_t k = 0;
    while (k < n && w[n - 1 - k] == 1) ++k;
    if (k == n) return out;
    Letter b = w[n - k - 1];
    Word head(w.begin(), w.begin() + (n - k - 1));
    Rat sign = (k % 2) ? -1 : 1;
    for (const auto& [u, c] : shuffle(head, Word(k, 1))) {
      Word v = u;
      v.push_back(b);
      out.axpy(sign * c, reg01(v));
    }
    return out;
  }
  std::size_t k = 0;
  while (k < n && w[k] == 0) ++k;
  if (k == n) return out;
  Letter b = w[k];
  Word tail(w.begin() + k + 1, w.end());
  Rat sign = (k % 2) ? -1 : 1;
  for (const auto& [u, c] : shuffle(Word(k, 0), tail)) {
    Word v{b};
    v.insert(v.end(), u.begin(), u.end());
    out.axpy(sign * c, reg01(v));
  }
  return out;
}

WordComb reg01(const Word& w) {
  if (is_normal(w)) return WordComb(w);
  static std::mutex mu;
  static std::map<Word, WordComb> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
  }
  WordComb r = reg01_uncached(w);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(w, r);
  return r;
}

Rat parity(std::size_t n) { return (n % 2) ? Rat(-1) : Rat(1); }

}  // namespace

WordComb regularize_ii(Letter a0, const Word& w, Letter a1) {
  check_letter(a0);
  check_letter(a1);
  for (Letter l : w) check_letter(l);
  if (w.empty()) return WordComb(Word{});
  if (a0 == a1) return {};
  const std::size_t n = w.size();
  if (a0 == 0 && a1 == 1) return reg01(w);
  if (a0 == 1 && a1 == 0) return reg01(reversed(w)) * parity(n);
  if (a0 == 0 && a1 == -1) return reg01(negated(w));
  if (a0 == -1 && a1 == 0) return reg01(negated(reversed(w))) * parity(n);
  if (a0 == 1 && a1 == -1) return regularize_ii(-1, reversed(w), 1) * parity(n);
  // a0 = -1, a1 = 1: compose through 0.
  WordComb out;
  for (const auto& [u, v] : deconcat(w)) {
    WordComb left = regularize_ii(-1, u, 0);
    if (left.empty()) continue;
    out += shuffle(left, reg01(v));
  }
  return out;
}

MotivicExpr scalar(const Rat& c) { return MotivicExpr(Gen{}, c); }

MotivicExpr lefschetz(int power) {
  Gen g;
  g.lef = power;
  return MotivicExpr(g);
}

MotivicExpr log_of(long long n) {
  if (n < 2) throw ParseError("log argument must be an integer >= 2");
  Gen g;
  for (long long p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      g.logs.push_back(static_cast<int>(p));
      n /= p;
    }
  }
  if (n > 1) g.logs.push_back(static_cast<int>(n));
  // log(ab) = log a + log b: expand the product of primes additively.
  MotivicExpr out;
  for (int p : g.logs) {
    Gen h;
    h.logs = {p};
    out.add(h, 1);
  }
  return out;
}

Word comp_to_iword(const Composition& c) {
  Word w;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].n < 1) throw NotAdmissible("parts must be positive");
    int a = 1;
    for (std::size_t j = i; j < c.size(); ++j) a *= c[j].sign;
    w.push_back(a);
    w.insert(w.end(), c[i].n - 1, 0);
  }
  return w;
}

std::pair<Composition, int> iword_to_comp(const Word& w) {
  if (!w.empty() && w.front() == 0) {
    throw NotAdmissible("word starts with 0");
  }
  Composition c;
  std::vector<int> letters;
  for (Letter l : w) {
    if (l == 0) {
      ++c.back().n;
    } else {
      c.push_back(Part{1, 1});
      letters.push_back(l);
    }
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    int next = i + 1 < c.size() ? letters[i + 1] : 1;
    c[i].sign = letters[i] * next;
  }
  int sign = (c.size() % 2) ? -1 : 1;
  return {c, sign};
}

MotivicExpr zeta(const Composition& c) {
  for (const auto& p : c) {
    if (p.n < 1 || (p.sign != 1 && p.sign != -1)) {
      throw NotAdmissible("bad part in " + comp_to_string(c));
    }
  }
  if (!c.empty() && c.back().n == 1 && c.back().sign == 1) {
    throw NotAdmissible(comp_to_string(c) + " diverges");
  }
  Gen g;
  g.w = comp_to_iword(c);
  return MotivicExpr(g, (c.size() % 2) ? Rat(-1) : Rat(1));
}

MotivicExpr iint(Letter a0, const Word& w, Letter a1) {
  MotivicExpr out;
  for (const auto& [u, c] : regularize_ii(a0, w, a1)) {
    Gen g;
    g.w = u;
    out.add(g, c);
  }
  return out;
}

Gen mul_gen_shape(const Gen& a, const Gen& b) {
  Gen g;
  g.lef = a.lef + b.lef;
  g.logs = a.logs;
  g.logs.insert(g.logs.end(), b.logs.begin(), b.logs.end());
  std::sort(g.logs.begin(), g.logs.end());
  return g;
}

namespace {

MotivicExpr mul_gen(const Gen& a, const Gen& b) {
  MotivicExpr out;
  Gen shape = mul_gen_shape(a, b);
  for (const auto& [w, c] : shuffle(a.w, b.w)) {
    Gen g = shape;
    g.w = w;
    out.add(g, c);
  }
  return out;
}

}  // namespace

MotivicExpr operator*(const MotivicExpr& a, const MotivicExpr& b) {
  MotivicExpr out;
  for (const auto& [ga, ca] : a) {
    for (const auto& [gb, cb] : b) out.axpy(ca * cb, mul_gen(ga, gb));
  }
  return out;
}

int max_weight(const MotivicExpr& x) {
  int w = 0;
  for (const auto& [g, c] : x) w = std::max(w, g.mzv_weight());
  return w;
}

namespace {

// Goncharov's formula for I(0; w; 1) alone: pairs (left word, right word,
// mzv weight of the left factor).
struct WordTerm {
  Word left;
  Word right;
  auto operator<=>(const WordTerm&) const = default;
};

LinComb<WordTerm> word_coaction_uncached(const Word& w) {
  LinComb<WordTerm> out;
  const std::size_t n = w.size();
  std::vector<Letter> a(n + 2);
  a[0] = 0;
  a[n + 1] = 1;
  for (std::size_t i = 0; i < n; ++i) a[i + 1] = w[i];
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    std::vector<std::size_t> idx{0};
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) idx.push_back(i + 1);
    }
    idx.push_back(n + 1);
    WordComb right(Word{});
    bool zero = false;
    for (std::size_t p = 0; p + 1 < idx.size() && !zero; ++p) {
      std::size_t lo = idx[p], hi = idx[p + 1];
      if (hi == lo + 1) continue;
      Word gap(a.begin() + lo + 1, a.begin() + hi);
      WordComb f = regularize_ii(a[lo], gap, a[hi]);
      if (f.empty()) {
        zero = true;
      } else {
        right = shuffle(right, f);
      }
    }
    if (zero) continue;
    Word sub;
    for (std::size_t p = 1; p + 1 < idx.size(); ++p) sub.push_back(a[idx[p]]);
    WordComb left = regularize_ii(0, sub, 1);
    for (const auto& [lw, lc] : left) {
      for (const auto& [rw, rc] : right) out.add(WordTerm{lw, rw}, lc * rc);
    }
  }
  return out;
}

const LinComb<WordTerm>& word_coaction(const Word& w) {
  static std::mutex mu;
  static std::map<Word, LinComb<WordTerm>> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
  }
  LinComb<WordTerm> r = word_coaction_uncached(w);
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(w, std::move(r)).first->second;
}

}  // namespace

CoactionTensor coaction(const Gen& g) {
  // Lefschetz part: L -> L (x) L^dr. Logs: log p -> log p (x) L^dr + 1 (x) log^dr p.
  CoactionTensor prefix;
  {
    std::size_t m = g.logs.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
      Gen l, r;
      l.lef = g.lef;
      r.lef = g.lef;
      for (std::size_t i = 0; i < m; ++i) {
        if (mask >> i & 1) {
          l.logs.push_back(g.logs[i]);
          ++r.lef;
        } else {
          r.logs.push_back(g.logs[i]);
        }
      }
      prefix.add({l, r}, 1);
    }
  }
  CoactionTensor out;
  for (const auto& [t, c] : word_coaction(g.w)) {
    for (const auto& [pr, pc] : prefix) {
      Gen l = pr.first, r = pr.second;
      l.w = t.left;
      r.w = t.right;
      r.lef += static_cast<int>(t.left.size());
      out.add({l, r}, c * pc);
    }
  }
  return out;
}

CoactionTensor coaction(const MotivicExpr& x) {
  CoactionTensor out;
  for (const auto& [g, c] : x) out.axpy(c, coaction(g));
  return out;
}

CoactionTensor unipotent(const CoactionTensor& t) {
  CoactionTensor out;
  for (const auto& [p, c] : t) {
    Gen r = p.second;
    r.lef = 0;
    out.add({p.first, r}, c);
  }
  return out;
}

MotivicExpr counit_right(const CoactionTensor& t) {
  MotivicExpr out;
  for (const auto& [p, c] : t) {
    if (p.second.w.empty() && p.second.logs.empty()) out.add(p.first, c);
  }
  return out;
}

Coaction2 coassoc_left(const CoactionTensor& t) {
  Coaction2 out;
  for (const auto& [p, c] : t) {
    for (const auto& [q, d] : coaction(p.first)) {
      out.add({q.first, q.second, p.second}, c * d);
    }
  }
  return out;
}

Coaction2 coassoc_right(const CoactionTensor& t) {
  Coaction2 out;
  for (const auto& [p, c] : t) {
    for (const auto& [q, d] : coaction(p.second)) {
      out.add({p.first, q.first, q.second}, c * d);
    }
  }
  return out;
}

std::string to_string(const Gen& g, Rat* coeff_sign) {
  std::vector<std::string> factors;
  if (g.lef == 1) {
    factors.push_back("L");
  } else if (g.lef != 0) {
    factors.push_back("L^" + std::to_string(g.lef));
  }
  if (!g.w.empty()) {
    if (g.w.front() == 0) {
      std::string s = "I(0;";
      for (Letter l : g.w) s += " " + std::to_string(l);
      factors.push_back(s + "; 1)");
    } else {
      auto [comp, sign] = iword_to_comp(g.w);
      if (coeff_sign) *coeff_sign *= sign;
      factors.push_back(comp_to_string(comp));
    }
  }
  for (std::size_t i = 0; i < g.logs.size();) {
    std::size_t j = i;
    while (j < g.logs.size() && g.logs[j] == g.logs[i]) ++j;
    std::string s = "log(" + std::to_string(g.logs[i]) + ")";
    if (j - i > 1) s += "^" + std::to_string(j - i);
    factors.push_back(s);
    i = j;
  }
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += "*";
    s += factors[i];
  }
  return s.empty() ? "1" : s;
}

namespace {

void append_term(std::string& out, Rat c, const std::string& body) {
  if (out.empty()) {
    if (sgn(c) < 0) out += "-";
  } else {
    out += sgn(c) < 0 ? " - " : " + ";
  }
  c = abs(c);
  if (body == "1") {
    out += to_string(c);
  } else if (c == 1) {
    out += body;
  } else {
    out += to_string(c) + "*" + body;
  }
}

}  // namespace

std::string to_string(const MotivicExpr& x) {
  if (x.empty()) return "0";
  std::string out;
  for (const auto& [g, c] : x) {
    Rat s = c;
    std::string body = to_string(g, &s);
    append_term(out, s, body);
  }
  return out;
}

std::string to_string(const CoactionTensor& t) {
  if (t.empty()) return "0";
  std::string out;
  for (const auto& [p, c] : t) {
    Rat s = c;
    std::string l = to_string(p.first, &s);
    std::string r = to_string(p.second, &s);
    append_term(out, s, l + " ⊗ " + r);
  }
  return out;
}

}  // namespace periods
