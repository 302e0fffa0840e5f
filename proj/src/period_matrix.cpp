#include "periods/period_matrix.hpp"

#include <cctype>

#include "json.hpp"
#include "periods/errors.hpp"

namespace periods {

SymPoly sym_const(const Rat& c) { return SymPoly(PMon{}, c); }

SymPoly sym_gen(const std::string& name, int power) {
  if (power == 0) return sym_const(1);
  return SymPoly(PMon{{name, power}});
}

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
  SymPoly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      PMon m = ma;
      for (const auto& [g, e] : mb) {
        int& x = m[g];
        x += e;
        if (x == 0) m.erase(g);
      }
      out.add(m, ca * cb);
    }
  }
  return out;
}

namespace {

std::string mon_to_string(const PMon& m) {
  std::string s;
  for (const auto& [g, e] : m) {
    if (!s.empty()) s += "*";
    s += g;
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

}  // namespace

std::string to_string(const SymPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : p) {
    std::string body = mon_to_string(m);
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

void SymRing::add(const std::string& name, int weight, int sign, const std::string& image) {
  gens[name] = GenInfo{weight, sign, image};
}

void SymRing::add_pair(const std::string& name, const std::string& bar, int weight) {
  add(name, weight, 1, bar);
  add(bar, weight, 1, name);
}

void SymRing::validate() const {
  for (const auto& [name, info] : gens) {
    auto it = gens.find(info.frob_image);
    if (it == gens.end()) throw UnknownGenerator("Frobenius image of " + name);
    if (it->second.frob_image != name || it->second.frob_sign != info.frob_sign) {
      throw UnknownGenerator("Frobenius is not an involution on " + name);
    }
  }
}

SymRing default_ring() {
  SymRing r;
  r.add("L", 2, -1, "L");
  return r;
}

namespace {

class SymParser {
 public:
  SymParser(const std::string& s, const SymRing& ring) : s_(s), ring_(ring) {}

  SymPoly parse() {
    SymPoly p = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " in '" + s_ + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  SymPoly expr() {
    SymPoly out;
    bool neg = eat('-');
    if (!neg) eat('+');
    SymPoly t = term();
    out.axpy(neg ? Rat(-1) : Rat(1), t);
    while (true) {
      if (eat('+')) {
        out += term();
      } else if (eat('-')) {
        out -= term();
      } else {
        return out;
      }
    }
  }

  SymPoly term() {
    SymPoly out = factor();
    while (eat('*')) out = out * factor();
    return out;
  }

  int exponent() {
    skip();
    std::size_t start = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::string e = s_.substr(start, i_ - start);
    if (e.empty() || e == "-" || e == "+") fail("bad exponent");
    return std::stoi(e);
  }

  SymPoly power(SymPoly base, bool is_l) {
    if (!eat('^')) return base;
    int e = exponent();
    if (e < 0 && !is_l) fail("negative powers are only allowed for L");
    SymPoly out = sym_const(1);
    if (is_l) return sym_gen("L", e);
    for (int k = 0; k < e; ++k) out = out * base;
    return out;
  }

  SymPoly factor() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      SymPoly p = expr();
      if (!eat(')')) fail("missing ')'");
      return power(p, false);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '/')) {
        ++i_;
      }
      return power(sym_const(parse_rat(s_.substr(start, i_ - start))), false);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i_;
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
        ++i_;
      }
      if (i_ < s_.size() && s_[i_] == '(') {
        int depth = 0;
        do {
          if (s_[i_] == '(') ++depth;
          if (s_[i_] == ')') --depth;
          ++i_;
        } while (i_ < s_.size() && depth > 0);
        if (depth != 0) fail("unbalanced parentheses");
      }
      std::string name = s_.substr(start, i_ - start);
      if (!ring_.gens.count(name)) throw UnknownGenerator(name);
      return power(sym_gen(name), name == "L");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  const SymRing& ring_;
  std::size_t i_ = 0;
};

SymMatrix zeros(std::size_t n) { return SymMatrix(n, std::vector<SymPoly>(n)); }

}  // namespace

SymPoly parse_sym(const std::string& text, const SymRing& ring) {
  return SymParser(text, ring).parse();
}

PeriodMatrix build_lefschetz() {
  PeriodMatrix m;
  m.ring = default_ring();
  m.entries = {{sym_gen("L")}};
  m.hodge = {{1, 1}};
  m.weights = {2};
  return m;
}

PeriodMatrix build_kummer(const Rat& alpha) {
  if (sgn(alpha) <= 0) throw UnsupportedKind("kummer needs a positive rational");
  std::string name = "log(" + to_string(alpha) + ")";
  PeriodMatrix m;
  m.ring = default_ring();
  m.ring.add(name, 2, 1, name);
  m.entries = {{sym_const(1), sym_gen(name)}, {SymPoly{}, sym_gen("L")}};
  m.hodge = {{0, 0}, {1, 1}};
  m.weights = {0, 2};
  return m;
}

PeriodMatrix build_zeta(int n) {
  if (n < 3 || n % 2 == 0) throw UnsupportedKind("zeta needs an odd n >= 3");
  std::string name = "zeta(" + std::to_string(n) + ")";
  PeriodMatrix m;
  m.ring = default_ring();
  m.ring.add(name, 2 * n, 1, name);
  m.entries = {{sym_const(1), sym_gen(name)}, {SymPoly{}, sym_gen("L", n)}};
  m.hodge = {{0, 0}, {n, n}};
  m.weights = {0, 2 * n};
  return m;
}

PeriodMatrix build_polylog_tower(int depth) {
  if (depth < 1 || depth > 2) throw UnsupportedKind("polylog_tower depth must be 1 or 2");
  PeriodMatrix m;
  m.ring = default_ring();
  m.ring.add_pair("Li1(x)", "Li1bar(x)", 2);
  if (depth == 1) {
    m.entries = {{sym_const(1), sym_gen("Li1(x)")}, {SymPoly{}, sym_gen("L")}};
    m.hodge = {{0, 0}, {1, 1}};
    m.weights = {0, 2};
    return m;
  }
  m.ring.add_pair("Li2(x)", "Li2bar(x)", 4);
  m.ring.add_pair("log(x)", "logbar(x)", 2);
  SymPoly L = sym_gen("L");
  m.entries = {{sym_const(1), sym_gen("Li1(x)"), sym_gen("Li2(x)")},
               {SymPoly{}, L, L * sym_gen("log(x)")},
               {SymPoly{}, SymPoly{}, sym_gen("L", 2)}};
  m.hodge = {{0, 0}, {1, 1}, {2, 2}};
  m.weights = {0, 2, 4};
  return m;
}

PeriodMatrix build(const std::string& kind, const std::string& param) {
  if (kind == "lefschetz") return build_lefschetz();
  if (kind == "kummer") return build_kummer(parse_rat(param.empty() ? "2" : param));
  if (kind == "zeta") return build_zeta(param.empty() ? 3 : std::stoi(param));
  if (kind == "polylog_tower" || kind == "dilog") {
    return build_polylog_tower(param.empty() ? 2 : std::stoi(param));
  }
  throw UnsupportedKind(kind);
}

SymPoly frobenius(const SymPoly& p, const SymRing& ring) {
  SymPoly out;
  for (const auto& [m, c] : p) {
    SymPoly t = sym_const(c);
    for (const auto& [g, e] : m) {
      auto it = ring.gens.find(g);
      if (it == ring.gens.end()) throw UnknownGenerator(g);
      int sign = (it->second.frob_sign < 0 && e % 2) ? -1 : 1;
      t = t * sym_gen(it->second.frob_image, e);
      t *= sign;
    }
    out += t;
  }
  return out;
}

PeriodMatrix frobenius_apply(const PeriodMatrix& m) {
  PeriodMatrix out = m;
  for (auto& row : out.entries) {
    for (auto& e : row) e = frobenius(e, m.ring);
  }
  return out;
}

SymMatrix mat_mul(const SymMatrix& a, const SymMatrix& b) {
  if (a.empty() || a[0].size() != b.size()) throw SizeMismatch("matrix product");
  SymMatrix out(a.size(), std::vector<SymPoly>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].empty()) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) {
        if (!b[k][j].empty()) out[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return out;
}

namespace {

SymPoly unit_inverse(const SymPoly& d) {
  if (d.size() != 1) throw NotInvertible("diagonal entry " + to_string(d));
  const auto& [m, c] = *d.begin();
  PMon inv;
  for (const auto& [g, e] : m) {
    if (g != "L") throw NotInvertible("diagonal entry " + to_string(d));
    inv[g] = -e;
  }
  return SymPoly(inv, 1 / c);
}

}  // namespace

SymMatrix upper_inverse(const SymMatrix& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw SizeMismatch("matrix is not square");
    for (std::size_t j = 0; j < i; ++j) {
      if (!a[i][j].empty()) throw NotInvertible("matrix is not upper triangular");
    }
  }
  SymMatrix x = zeros(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j + 1; i-- > 0;) {
      SymPoly inv = unit_inverse(a[i][i]);
      if (i == j) {
        x[i][j] = inv;
        continue;
      }
      SymPoly s;
      for (std::size_t k = i + 1; k <= j; ++k) {
        if (!a[i][k].empty() && !x[k][j].empty()) s += a[i][k] * x[k][j];
      }
      x[i][j] = -(inv * s);
    }
  }
  return x;
}

PeriodMatrix single_valued(const PeriodMatrix& m) {
  PeriodMatrix f = frobenius_apply(m);
  PeriodMatrix out = m;
  out.entries = mat_mul(upper_inverse(f.entries), m.entries);
  return out;
}

PeriodMatrix single_valued_twisted(const PeriodMatrix& m) {
  if (m.weights.size() != m.size()) throw MissingWeights("weight profile");
  PeriodMatrix f = frobenius_apply(m);
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m.weights[j] % 2) throw MissingWeights("weights must be even");
    if ((m.weights[j] / 2) % 2) {
      for (std::size_t i = 0; i < m.size(); ++i) f.entries[i][j] *= -1;
    }
  }
  PeriodMatrix out = m;
  out.entries = mat_mul(upper_inverse(f.entries), m.entries);
  return out;
}

Invariants invariants(const PeriodMatrix& m) {
  if (m.hodge.size() != m.size() || m.hodge.empty()) throw MissingHodge("hodge numbers");
  std::map<std::pair<int, int>, int> h;
  for (const auto& pq : m.hodge) ++h[pq];
  Invariants out;
  for (const auto& [pq, k] : h) {
    std::string t;
    auto var = [](const char* v, int e) {
      if (e == 0) return std::string();
      return std::string(v) + (e == 1 ? "" : "^" + std::to_string(e));
    };
    std::string r = var("r", pq.first), s = var("s", pq.second);
    std::string mon = r + (!r.empty() && !s.empty() ? "*" : "") + s;
    if (mon.empty()) {
      t = std::to_string(k);
    } else {
      t = (k == 1 ? "" : std::to_string(k) + "*") + mon;
    }
    out.hodge_poly += (out.hodge_poly.empty() ? "" : " + ") + t;
    out.rank += k;
  }
  SymPoly det = sym_const(1);
  for (std::size_t i = 0; i < m.size(); ++i) det = det * m.entries[i][i];
  if (det.size() == 1) {
    det = SymPoly(det.begin()->first);
  }
  out.det = det;
  return out;
}

PeriodMatrix monodromy_apply(const RatMatrix& g, const PeriodMatrix& m) {
  if (g.size() != m.size()) throw SizeMismatch("monodromy matrix size");
  SymMatrix gs(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].size() != m.size()) throw SizeMismatch("monodromy matrix size");
    for (const auto& c : g[i]) gs[i].push_back(sym_const(c));
  }
  PeriodMatrix out = m;
  out.entries = mat_mul(gs, m.entries);
  return out;
}

std::string matrix_to_string(const SymMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      s += (j ? ", " : "") + to_string(m[i][j]);
    }
    s += "]";
  }
  return s + "]";
}

BigComplex per_sym(const SymPoly& p, const std::map<std::string, BigComplex>& values,
                   int prec) {
  const mpfr_prec_t bits = bits_for_digits(prec);
  BigComplex two_pi_i(BigFloat(0, bits), BigFloat::pi(bits).mul_si(2));
  BigComplex one(BigFloat(1, bits), BigFloat(0, bits));
  BigComplex out(bits);
  for (const auto& [m, c] : p) {
    BigComplex t(BigFloat(c, bits), BigFloat(0, bits));
    for (const auto& [g, e] : m) {
      BigComplex v(bits);
      if (g == "L") {
        v = two_pi_i;
      } else {
        auto it = values.find(g);
        if (it == values.end()) throw Unevaluable(g);
        v = it->second;
      }
      if (e < 0) v = one / v;
      for (int k = 0; k < std::abs(e); ++k) t *= v;
    }
    out += t;
  }
  return out;
}

std::string matrix_to_json(const PeriodMatrix& m) {
  using nlohmann::json;
  json j;
  json gens = json::array();
  for (const auto& [name, info] : m.ring.gens) {
    std::string image = (info.frob_sign < 0 ? "-" : "") + info.frob_image;
    gens.push_back({{"name", name}, {"weight", info.weight}, {"frobenius", image}});
  }
  j["generators"] = gens;
  json rows = json::array();
  for (const auto& row : m.entries) {
    json r = json::array();
    for (const auto& e : row) r.push_back(to_string(e));
    rows.push_back(r);
  }
  j["entries"] = rows;
  json hodge = json::array();
  for (const auto& [p, q] : m.hodge) hodge.push_back({p, q});
  j["hodge"] = hodge;
  j["weights"] = m.weights;
  return j.dump(2);
}

PeriodMatrix matrix_from_json(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("matrix file: ") + e.what());
  }
  try {
    PeriodMatrix m;
    m.ring = default_ring();
    for (const auto& g : j.value("generators", json::array())) {
      std::string name = g.at("name").get<std::string>();
      std::string image = g.value("frobenius", name);
      int sign = 1;
      if (!image.empty() && image[0] == '-') {
        sign = -1;
        image = image.substr(1);
      }
      m.ring.add(name, g.value("weight", 0), sign, image);
    }
    m.ring.validate();
    for (const auto& row : j.at("entries")) {
      std::vector<SymPoly> r;
      for (const auto& e : row) r.push_back(parse_sym(e.get<std::string>(), m.ring));
      m.entries.push_back(r);
    }
    for (const auto& row : m.entries) {
      if (row.size() != m.entries.size()) throw SizeMismatch("matrix is not square");
    }
    for (const auto& pq : j.value("hodge", json::array())) {
      m.hodge.emplace_back(pq.at(0).get<int>(), pq.at(1).get<int>());
    }
    m.weights = j.value("weights", std::vector<int>{});
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("matrix file: ") + e.what());
  }
}

}  // namespace periods
