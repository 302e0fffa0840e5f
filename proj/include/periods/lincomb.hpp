#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "periods/rational.hpp"

namespace periods {

// Length-then-lex order on sequences.
struct LenLex {
  template <class Seq>
  bool operator()(const Seq& a, const Seq& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Finite Q-linear combination; zero coefficients are never stored.
template <class G, class Cmp = std::less<G>>
class LinComb {
 public:
  using Map = std::map<G, Rat, Cmp>;
  using const_iterator = typename Map::const_iterator;

  LinComb() = default;
  explicit LinComb(const G& g, const Rat& c = Rat(1)) { add(g, c); }

  void add(const G& g, const Rat& c) {
    if (sgn(c) == 0) return;
    auto [it, fresh] = terms_.try_emplace(g, c);
    if (!fresh) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  Rat coeff(const G& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const Map& terms() const { return terms_; }

  LinComb& operator+=(const LinComb& o) {
    for (const auto& [g, c] : o.terms_) add(g, c);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    for (const auto& [g, c] : o.terms_) add(g, -c);
    return *this;
  }
  LinComb& operator*=(const Rat& s) {
    if (sgn(s) == 0) {
      terms_.clear();
    } else {
      for (auto& kv : terms_) kv.second *= s;
    }
    return *this;
  }
  // Adds s * o.
  void axpy(const Rat& s, const LinComb& o) {
    if (sgn(s) == 0) return;
    for (const auto& [g, c] : o.terms_) add(g, s * c);
  }

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator-(LinComb a) { return a *= Rat(-1); }
  friend LinComb operator*(LinComb a, const Rat& s) { return a *= s; }
  friend LinComb operator*(const Rat& s, LinComb a) { return a *= s; }
  friend bool operator==(const LinComb& a, const LinComb& b) {
    return a.terms_ == b.terms_;
  }

  // Applies a linear map given on generators.
  template <class H, class HCmp, class F>
  LinComb<H, HCmp> map_linear(F&& f) const {
    LinComb<H, HCmp> out;
    for (const auto& [g, c] : terms_) out.axpy(c, f(g));
    return out;
  }

 private:
  Map terms_;
};

}  // namespace periods
