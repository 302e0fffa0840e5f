#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "periods/lincomb.hpp"

namespace periods {

// Letters of integral words are 0, +1, -1. Other modules reuse the templates
// below with their own letter types.
using Letter = int;
using Word = std::vector<Letter>;
using WordComb = LinComb<Word, LenLex>;

struct Part {
  int n = 1;
  int sign = 1;
  auto operator<=>(const Part&) const = default;
};
using Composition = std::vector<Part>;
using CompComb = LinComb<Composition, LenLex>;

int weight(const Composition& c);

template <class T>
using SeqComb = LinComb<std::vector<T>, LenLex>;

namespace detail {
template <class T>
void shuffle_into(const std::vector<T>& u, std::size_t i, const std::vector<T>& v,
                  std::size_t j, std::vector<T>& prefix, const Rat& c,
                  SeqComb<T>& out) {
  if (i == u.size() && j == v.size()) {
    out.add(prefix, c);
    return;
  }
  if (i < u.size()) {
    prefix.push_back(u[i]);
    shuffle_into(u, i + 1, v, j, prefix, c, out);
    prefix.pop_back();
  }
  if (j < v.size()) {
    prefix.push_back(v[j]);
    shuffle_into(u, i, v, j + 1, prefix, c, out);
    prefix.pop_back();
  }
}
}  // namespace detail

template <class T>
SeqComb<T> shuffle(const std::vector<T>& u, const std::vector<T>& v) {
  SeqComb<T> out;
  std::vector<T> prefix;
  prefix.reserve(u.size() + v.size());
  detail::shuffle_into(u, 0, v, 0, prefix, Rat(1), out);
  return out;
}

// Bilinear extension.
template <class T>
SeqComb<T> shuffle(const SeqComb<T>& a, const SeqComb<T>& b) {
  SeqComb<T> out;
  for (const auto& [u, cu] : a) {
    for (const auto& [v, cv] : b) out.axpy(cu * cv, shuffle(u, v));
  }
  return out;
}

// Quasi-shuffle: merged parts add exponents and multiply signs.
CompComb stuffle(const Composition& a, const Composition& b);

template <class T>
std::vector<std::pair<std::vector<T>, std::vector<T>>> deconcat(
    const std::vector<T>& w) {
  std::vector<std::pair<std::vector<T>, std::vector<T>>> out;
  for (std::size_t k = 0; k <= w.size(); ++k) {
    out.emplace_back(std::vector<T>(w.begin(), w.begin() + k),
                     std::vector<T>(w.begin() + k, w.end()));
  }
  return out;
}

// Lyndon words of exact length over letters 0..k-1, in lex order.
std::vector<Word> lyndon_words(int alphabet_size, int length);

// Necklace count (1/n) sum_{d|n} mu(d) k^{n/d}.
long long witt_count(int alphabet_size, int length);

// Composition <-> word e0^{n1-1} e_{a1} ... e0^{nr-1} e_{ar}, where
// a_i is the product of the signs of parts i..r.
Word comp_to_word(const Composition& c);
Composition word_to_comp(const Word& w);  // throws NotAdmissible

std::string word_to_string(const Word& w);  // "e0 e1 e0 e0 e1"
std::string comp_to_string(const Composition& c);  // "zeta(2,-3)"

}  // namespace periods
