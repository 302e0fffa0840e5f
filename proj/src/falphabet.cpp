#include "periods/falphabet.hpp"

#include <mutex>

#include "periods/errors.hpp"
#include "periods/sparse.hpp"

namespace periods {

namespace {

int letter_degree(FLetter a) { return a < 0 ? 1 : a; }

}  // namespace

int FMon::degree() const {
  int d = lef + 2 * f2;
  for (FLetter a : word) d += letter_degree(a);
  return d;
}

bool FMonLess::operator()(const FMon& a, const FMon& b) const {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  if (a.f2 != b.f2) return a.f2 > b.f2;
  if (a.lef != b.lef) return a.lef > b.lef;
  return a.word < b.word;
}

FPoly operator*(const FPoly& a, const FPoly& b) {
  FPoly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      int lef = ma.lef + mb.lef;
      int f2 = ma.f2 + mb.f2;
      Rat c = ca * cb;
      if (lef == 2) {
        lef = 0;
        ++f2;
        c *= -24;
      }
      for (const auto& [w, k] : shuffle(ma.word, mb.word)) {
        out.add(FMon{lef, f2, w}, c * k);
      }
    }
  }
  return out;
}

namespace {

const Composition kZeta2{Part{2, 1}};

FPoly phi_generator(const Composition& c, const RelationTable& t);

FPoly phi_key(const RKey& k, const RelationTable& t) {
  FPoly out(FMon{k.lef, 0, {}});
  for (const auto& c : k.mono) {
    if (c == kZeta2) {
      out = out * FPoly(FMon{0, 1, {}});
    } else {
      out = out * phi_generator(c, t);
    }
  }
  for (int p : k.logs) out = out * FPoly(FMon{0, 0, {-p}});
  return out;
}

FPoly phi(const RExpr& x, const RelationTable& t) {
  FPoly out;
  for (const auto& [k, c] : x) out.axpy(c, phi_key(k, t));
  return out;
}

// New generators get the letter expansion of their derivations and no pure
// f2-power term.
FPoly phi_generator(const Composition& c, const RelationTable& t) {
  static std::mutex mu;
  static std::map<std::pair<const RelationTable*, Composition>, FPoly> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({&t, c});
    if (it != memo.end()) return it->second;
  }
  FPoly out;
  for (const auto& [a, left] : derivations(RExpr(RKey{0, {c}, {}}), t)) {
    for (const auto& [m, k] : phi(left, t)) {
      FMon n = m;
      n.word.insert(n.word.begin(), a);
      out.add(n, k);
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(std::make_pair(&t, c), out);
  return out;
}

}  // namespace

FPoly decompose(const RExpr& x, const RelationTable& t) { return phi(x, t); }

FPoly decompose(const MotivicExpr& x, const RelationTable& t) {
  return phi(reduce(x, t), t);
}

Leading grC_leading(const MotivicExpr& x, const RelationTable& t) {
  RExpr r = reduce(x, t);
  Leading out;
  out.degree = unipotency_degree(r, t);
  for (const auto& [m, c] : phi(r, t)) {
    if (static_cast<int>(m.word.size()) == out.degree) out.leading.add(m, c);
  }
  return out;
}

RExpr recompose(const FPoly& f, const RelationTable& t) {
  // Group by the data that decompose preserves: L power, nu letters, degree.
  using Sig = std::tuple<int, int, std::vector<int>>;
  std::map<Sig, FPoly> groups;
  for (const auto& [m, c] : f) {
    std::vector<int> nus;
    for (FLetter a : m.word) {
      if (a < 0) {
        nus.push_back(-a);
      } else if (a < 3 || a % 2 == 0) {
        throw NotInRange("letter " + std::to_string(a));
      }
    }
    std::sort(nus.begin(), nus.end());
    groups[{m.degree(), m.lef, nus}].add(m, c);
  }
  RExpr out;
  for (const auto& [sig, target] : groups) {
    const auto& [d, lef, nus] = sig;
    int m = d - lef - static_cast<int>(nus.size());
    std::vector<RKey> keys;
    if (m == 0) {
      keys.push_back(RKey{lef, {}, nus});
    } else if (m >= 2) {
      for (const auto& b : t.at(m).basis) keys.push_back(RKey{lef, b, nus});
    }
    std::vector<FPoly> images;
    for (const auto& k : keys) images.push_back(phi_key(k, t));
    auto coords = solve_in_span(target, images);
    if (!coords) throw NotInRange("not in the image of decompose");
    for (std::size_t i = 0; i < keys.size(); ++i) out.add(keys[i], (*coords)[i]);
  }
  return out;
}

LinComb<std::pair<FMon, FMon>> f_coaction(const FPoly& f) {
  LinComb<std::pair<FMon, FMon>> out;
  for (const auto& [m, c] : f) {
    for (std::size_t k = 0; k <= m.word.size(); ++k) {
      FMon left{m.lef, m.f2, std::vector<FLetter>(m.word.begin() + k, m.word.end())};
      FMon right{0, 0, std::vector<FLetter>(m.word.begin(), m.word.begin() + k)};
      out.add({left, right}, c);
    }
  }
  return out;
}

std::string letter_to_string(FLetter a) {
  return a < 0 ? "nu" + std::to_string(-a) : "f" + std::to_string(a);
}

std::string to_string(const FMon& m, bool l_form) {
  std::vector<std::string> f;
  int lef = m.lef + (l_form ? 2 * m.f2 : 0);
  if (lef == 1) f.push_back("L");
  if (lef > 1) f.push_back("L^" + std::to_string(lef));
  if (!l_form && m.f2 == 1) f.push_back("f2");
  if (!l_form && m.f2 > 1) f.push_back("f2^" + std::to_string(m.f2));
  if (!m.word.empty()) {
    std::string w;
    for (std::size_t i = 0; i < m.word.size(); ++i) {
      w += (i ? "|" : "") + letter_to_string(m.word[i]);
    }
    f.push_back(w);
  }
  std::string s;
  for (const auto& x : f) s += (s.empty() ? "" : "*") + x;
  return s.empty() ? "1" : s;
}

std::string to_string(const FPoly& f, bool l_form) {
  if (f.empty()) return "0";
  std::string out;
  for (const auto& [m, c0] : f) {
    Rat c = c0;
    if (l_form) {
      for (int i = 0; i < m.f2; ++i) c /= -24;
    }
    std::string body = to_string(m, l_form);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    Rat a = abs(c);
    if (body == "1") {
      out += to_string(a);
    } else {
      out += (a == 1 ? "" : to_string(a) + "*") + body;
    }
  }
  return out;
}

}  // namespace periods
