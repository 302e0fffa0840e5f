#include "periods/words.hpp"

#include <functional>

#include "periods/errors.hpp"

namespace periods {

int weight(const Composition& c) {
  int w = 0;
  for (const auto& p : c) w += p.n;
  return w;
}

namespace {

void stuffle_into(const Composition& a, std::size_t i, const Composition& b,
                  std::size_t j, Composition& prefix, CompComb& out) {
  if (i == a.size() && j == b.size()) {
    out.add(prefix, 1);
    return;
  }
  if (i < a.size()) {
    prefix.push_back(a[i]);
    stuffle_into(a, i + 1, b, j, prefix, out);
    prefix.pop_back();
  }
  if (j < b.size()) {
    prefix.push_back(b[j]);
    stuffle_into(a, i, b, j + 1, prefix, out);
    prefix.pop_back();
  }
  if (i < a.size() && j < b.size()) {
    prefix.push_back(Part{a[i].n + b[j].n, a[i].sign * b[j].sign});
    stuffle_into(a, i + 1, b, j + 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

CompComb stuffle(const Composition& a, const Composition& b) {
  CompComb out;
  Composition prefix;
  stuffle_into(a, 0, b, 0, prefix, out);
  return out;
}

std::vector<Word> lyndon_words(int k, int n) {
  std::vector<Word> out;
  if (n <= 0 || k <= 0) return out;
  // Duval's generation in lexicographic order.
  Word w{0};
  while (!w.empty()) {
    if (static_cast<int>(w.size()) == n) out.push_back(w);
    std::size_t m = w.size();
    while (static_cast<int>(w.size()) < n) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == k - 1) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return out;
}

long long witt_count(int k, int n) {
  auto mobius = [](int d) {
    int mu = 1;
    for (int p = 2; p * p <= d; ++p) {
      if (d % p == 0) {
        d /= p;
        if (d % p == 0) return 0;
        mu = -mu;
      }
    }
    if (d > 1) mu = -mu;
    return mu;
  };
  long long total = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    long long p = 1;
    for (int i = 0; i < n / d; ++i) p *= k;
    total += mobius(d) * p;
  }
  return total / n;
}

Word comp_to_word(const Composition& c) {
  Word w;
  for (std::size_t i = 0; i < c.size(); ++i) {
    int a = 1;
    for (std::size_t j = i; j < c.size(); ++j) a *= c[j].sign;
    w.insert(w.end(), c[i].n - 1, 0);
    w.push_back(a);
  }
  return w;
}

Composition word_to_comp(const Word& w) {
  Composition c;
  std::vector<int> letters;
  int zeros = 0;
  for (Letter l : w) {
    if (l == 0) {
      ++zeros;
    } else if (l == 1 || l == -1) {
      c.push_back(Part{zeros + 1, 1});
      letters.push_back(l);
      zeros = 0;
    } else {
      throw NotAdmissible("letter " + std::to_string(l) + " outside {0,1,-1}");
    }
  }
  if (zeros) throw NotAdmissible("word ends in e0: " + word_to_string(w));
  for (std::size_t i = 0; i < c.size(); ++i) {
    int next = i + 1 < c.size() ? letters[i + 1] : 1;
    c[i].sign = letters[i] * next;
  }
  if (!c.empty() && c.back().n == 1 && c.back().sign == 1) {
    throw NotAdmissible("last part is 1: " + word_to_string(w));
  }
  return c;
}

std::string word_to_string(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += w[i] < 0 ? "e-" + std::to_string(-w[i]) : "e" + std::to_string(w[i]);
  }
  return s;
}

std::string comp_to_string(const Composition& c) {
  std::string s = "zeta(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    if (c[i].sign < 0) s += '-';
    s += std::to_string(c[i].n);
  }
  return s + ")";
}

}  // namespace periods
