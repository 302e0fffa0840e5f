#include "periods/symbol.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <tuple>

#include "json.hpp"
#include "periods/errors.hpp"
#include "periods/sparse.hpp"

namespace periods {

bool operator<(const PFKey& a, const PFKey& b) {
  if (a.pole != b.pole) return a.pole < b.pole;
  if (a.p != b.p) return a.p < b.p;
  return a.k < b.k;
}

bool operator<(const FormKey& a, const FormKey& b) {
  if (a.gens != b.gens) return LenLex{}(a.gens, b.gens);
  return a.f < b.f;
}

bool operator<(const BarKey& a, const BarKey& b) {
  if (a.slots.size() != b.slots.size()) return a.slots.size() < b.slots.size();
  if (a.slots != b.slots) return a.slots < b.slots;
  return a.coeff < b.coeff;
}

namespace {

PFKey x_pow(int n) { return PFKey{false, 0, n}; }
PFKey pole_pow(const Rat& p, int k) { return k == 0 ? x_pow(0) : PFKey{true, p, k}; }

Func pf_mul(const PFKey& a, const PFKey& b) {
  if (a.is_one()) return Func(b);
  if (b.is_one()) return Func(a);
  if (!a.pole && !b.pole) return Func(x_pow(a.k + b.k));
  if (!a.pole) {
    // x (x - p)^-k = (x - p)^-(k-1) + p (x - p)^-k
    Func rest = pf_mul(x_pow(a.k - 1), pole_pow(b.p, b.k - 1));
    rest.axpy(b.p, pf_mul(x_pow(a.k - 1), b));
    return rest;
  }
  if (!b.pole) return pf_mul(b, a);
  if (a.p == b.p) return Func(pole_pow(a.p, a.k + b.k));
  // 1/((x-p)(x-q)) = (1/(x-p) - 1/(x-q)) / (p - q)
  Rat s = 1 / (a.p - b.p);
  Func out = pf_mul(a, pole_pow(b.p, b.k - 1)) * s;
  out.axpy(-s, pf_mul(pole_pow(a.p, a.k - 1), b));
  return out;
}

int koszul(int da, int db) { return (da * db) % 2 ? -1 : 1; }

std::string signed_point(const Rat& p) {
  if (sgn(p) < 0) return "x+" + to_string(-p);
  return "x-" + to_string(p);
}

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

DGA DGA::p1minus(const std::vector<Rat>& points) {
  DGA g;
  g.set_coordinate(points);
  return g;
}

void DGA::set_coordinate(const std::vector<Rat>& points) {
  if (coordinate_) throw ParseError("coordinate declared twice");
  if (!names_.empty()) throw ParseError("coordinate must be declared before generators");
  coordinate_ = true;
  points_ = points;
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  names_.push_back("dx");
  degrees_.push_back(1);
}

int DGA::add_generator(const std::string& name, int degree) {
  if (degree != 1 && degree != 2) throw ParseError("generator degree must be 1 or 2: " + name);
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
    throw ParseError("bad generator name: " + name);
  if (name == "x" || name == "dx" || name == "dlog" ||
      std::find(names_.begin(), names_.end(), name) != names_.end())
    throw ParseError("duplicate or reserved generator name: " + name);
  names_.push_back(name);
  degrees_.push_back(degree);
  return static_cast<int>(names_.size()) - 1;
}

int DGA::generator(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw UnknownGenerator(name);
  return static_cast<int>(it - names_.begin());
}

void DGA::set_d(const std::string& name, const Form& value) {
  int id = generator(name);
  for (const auto& [k, c] : value) {
    if (degree(k) != degrees_[id] + 1)
      throw ParseError("differential of " + name + " has the wrong degree");
  }
  dtable_[id] = value;
}

void DGA::set_wedge(const std::string& a, const std::string& b, const Form& value) {
  int ia = generator(a), ib = generator(b);
  if (degrees_[ia] != 1 || degrees_[ib] != 1 || ia == ib)
    throw ParseError("wedge table entries pair two distinct one-forms");
  for (const auto& [k, c] : value) {
    if (degree(k) != 2) throw ParseError("wedge value must be a two-form");
  }
  if (ia < ib) {
    wedge_[{ia, ib}] = value;
  } else {
    wedge_[{ib, ia}] = -value;
  }
}

int DGA::degree(const FormKey& k) const {
  int d = 0;
  for (int g : k.gens) d += degrees_.at(g);
  return d;
}

Form DGA::gen(const std::string& name) const {
  return Form(FormKey{x_pow(0), {generator(name)}});
}

Form DGA::func(const Func& f) const {
  Form out;
  for (const auto& [k, c] : f) out.add(FormKey{k, {}}, c);
  return out;
}

Form DGA::constant(const Rat& c) const { return Form(FormKey{x_pow(0), {}}, c); }

Func DGA::func_mul(const Func& a, const Func& b) const {
  Func out;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) out.axpy(ca * cb, pf_mul(ka, kb));
  }
  return out;
}

Func DGA::derivative(const Func& a) const {
  Func out;
  for (const auto& [k, c] : a) {
    if (!k.pole) {
      if (k.k > 0) out.add(x_pow(k.k - 1), c * k.k);
    } else {
      out.add(pole_pow(k.p, k.k + 1), -c * k.k);
    }
  }
  return out;
}

Form DGA::rewrite(const Rat& c, const PFKey& f, std::vector<int> gens) const {
  Rat sign = c;
  for (std::size_t i = 1; i < gens.size(); ++i) {
    for (std::size_t j = i; j > 0 && gens[j - 1] > gens[j]; --j) {
      sign *= koszul(degrees_[gens[j - 1]], degrees_[gens[j]]);
      std::swap(gens[j - 1], gens[j]);
    }
  }
  for (std::size_t i = 1; i < gens.size(); ++i) {
    if (gens[i] == gens[i - 1] && degrees_[gens[i]] % 2) return {};
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (degrees_[gens[i]] != 1) continue;
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      auto it = wedge_.find({gens[i], gens[j]});
      if (it == wedge_.end()) continue;
      // Move gens[j] next to gens[i], then the degree-2 pair to the front.
      int between = 0;
      for (std::size_t m = i + 1; m < j; ++m) between += degrees_[gens[m]];
      Rat s = sign * koszul(1, between);
      std::vector<int> rest;
      for (std::size_t m = 0; m < gens.size(); ++m) {
        if (m != i && m != j) rest.push_back(gens[m]);
      }
      Form pair = mul(func(Func(f)), it->second);
      return mul(pair, Form(FormKey{x_pow(0), rest})) * s;
    }
  }
  return Form(FormKey{f, gens}, sign);
}

Form DGA::mul_keys(const FormKey& a, const FormKey& b) const {
  std::vector<int> gens = a.gens;
  gens.insert(gens.end(), b.gens.begin(), b.gens.end());
  Form out;
  for (const auto& [pf, c] : pf_mul(a.f, b.f)) out += rewrite(c, pf, gens);
  return out;
}

Form DGA::mul(const Form& a, const Form& b) const {
  Form out;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) out.axpy(ca * cb, mul_keys(ka, kb));
  }
  return out;
}

Form DGA::d(const Form& a) const {
  Form out;
  for (const auto& [k, c] : a) {
    Form mono(FormKey{x_pow(0), k.gens});
    if (coordinate_) {
      Func df = derivative(Func(k.f));
      if (!df.empty()) out.axpy(c, mul(mul(func(df), Form(FormKey{x_pow(0), {0}})), mono));
    }
    int before = 0;
    for (std::size_t i = 0; i < k.gens.size(); ++i) {
      auto it = dtable_.find(k.gens[i]);
      if (it != dtable_.end()) {
        Form pre(FormKey{k.f, std::vector<int>(k.gens.begin(), k.gens.begin() + i)});
        Form post(FormKey{x_pow(0), std::vector<int>(k.gens.begin() + i + 1, k.gens.end())});
        out.axpy(c * (before % 2 ? -1 : 1), mul(mul(pre, it->second), post));
      }
      before += degrees_[k.gens[i]];
    }
  }
  return out;
}

namespace {

struct Token {
  enum Kind { Num, Ident, Op, End } kind;
  std::string text;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Num, s.substr(i, j - i)});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      out.push_back({Token::Ident, s.substr(i, j - i)});
      i = j;
    } else if (std::string("+-*/^()").find(ch) != std::string::npos) {
      out.push_back({Token::Op, std::string(1, ch)});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + ch + "' in form");
    }
  }
  out.push_back({Token::End, ""});
  return out;
}

class FormParser {
 public:
  FormParser(const DGA& dga, const std::string& text)
      : dga_(dga), toks_(tokenize(text)) {}

  Form run() {
    Form f = expr();
    if (peek().kind != Token::End) throw ParseError("trailing input '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool accept(const std::string& op) {
    if (peek().kind == Token::Op && peek().text == op) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& op) {
    if (!accept(op)) throw ParseError("expected '" + op + "'");
  }

  Form expr() {
    Form out;
    Rat sign = 1;
    if (accept("-")) {
      sign = -1;
    } else {
      accept("+");
    }
    out.axpy(sign, term());
    while (true) {
      if (accept("+")) {
        out += term();
      } else if (accept("-")) {
        out -= term();
      } else {
        return out;
      }
    }
  }

  Form term() {
    Form out = power();
    while (true) {
      if (accept("*")) {
        out = dga_.mul(out, power());
      } else if (accept("/")) {
        out = dga_.mul(out, inverse(power()));
      } else {
        return out;
      }
    }
  }

  Form power() {
    Form base = atom();
    if (!accept("^")) return base;
    bool neg = accept("-");
    if (peek().kind != Token::Num) throw ParseError("expected integer exponent");
    int e = std::stoi(toks_[pos_++].text);
    if (neg) base = inverse(base);
    Form out = dga_.constant(1);
    for (int i = 0; i < e; ++i) out = dga_.mul(out, base);
    return out;
  }

  Form atom() {
    const Token& t = peek();
    if (t.kind == Token::Num) {
      ++pos_;
      return dga_.constant(Rat(BigInt(t.text)));
    }
    if (t.kind == Token::Ident) {
      ++pos_;
      if (t.text == "x") {
        if (!dga_.has_coordinate()) throw ParseError("no coordinate declared");
        return dga_.func(Func(PFKey{false, 0, 1}));
      }
      if (t.text == "dlog") {
        expect("(");
        Form inner = expr();
        expect(")");
        return dga_.mul(dga_.d(inner), inverse(inner));
      }
      try {
        return dga_.gen(t.text);
      } catch (const UnknownGenerator&) {
        throw ParseError("unknown generator '" + t.text + "'");
      }
    }
    if (accept("(")) {
      Form f = expr();
      expect(")");
      return f;
    }
    throw ParseError("unexpected token '" + t.text + "'");
  }

  Form inverse(const Form& a) const {
    for (const auto& [k, c] : a) {
      if (!k.gens.empty()) throw ParseError("only functions can be inverted");
    }
    if (a.size() == 1) {
      const PFKey& k = a.begin()->first.f;
      const Rat& c = a.begin()->second;
      if (k.is_one()) return dga_.constant(1 / c);
      if (!k.pole) return checked_pole(0, k.k, 1 / c);
      // (x - p)^k expanded by the binomial theorem.
      Form out;
      BigInt binom = 1;
      for (int i = 0; i <= k.k; ++i) {
        Rat coef = Rat(binom) / c;
        for (int j = 0; j < k.k - i; ++j) coef *= -k.p;
        out.add(FormKey{PFKey{false, 0, i}, {}}, coef);
        binom = binom * (k.k - i) / (i + 1);
      }
      return out;
    }
    if (a.size() == 2) {
      Rat c0 = a.coeff(FormKey{PFKey{false, 0, 0}, {}});
      Rat c1 = a.coeff(FormKey{PFKey{false, 0, 1}, {}});
      if (sgn(c0) != 0 && sgn(c1) != 0) return checked_pole(-c0 / c1, 1, 1 / c1);
    }
    throw ParseError("cannot invert a non-linear function");
  }

  Form checked_pole(const Rat& p, int k, const Rat& c) const {
    const auto& pts = dga_.points();
    if (std::find(pts.begin(), pts.end(), p) == pts.end())
      throw ParseError("pole at " + to_string(p) + " outside the declared points");
    return dga_.func(Func(PFKey{true, p, k}, c));
  }

  const DGA& dga_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Form DGA::parse(const std::string& text) const { return FormParser(*this, text).run(); }

std::string DGA::func_to_string(const PFKey& k) const {
  if (!k.pole) {
    if (k.k == 0) return "1";
    if (k.k == 1) return "x";
    return "x^" + std::to_string(k.k);
  }
  if (sgn(k.p) == 0) return "x^-" + std::to_string(k.k);
  return "(" + signed_point(k.p) + ")^-" + std::to_string(k.k);
}

std::string DGA::to_string(const FormKey& k) const {
  if (coordinate_ && k.gens == std::vector<int>{0} && k.f.pole && k.f.k == 1) {
    if (sgn(k.f.p) == 0) return "dlog(x)";
    if (k.f.p == 1) return "dlog(1-x)";
    return "dlog(" + signed_point(k.f.p) + ")";
  }
  std::string s = k.f.is_one() ? "" : func_to_string(k.f);
  for (int g : k.gens) s += (s.empty() ? "" : "*") + names_[g];
  return s.empty() ? "1" : s;
}

std::string DGA::to_string(const Form& a) const {
  std::string out;
  for (const auto& [k, c] : a) append_term(out, c, to_string(k));
  return out.empty() ? "0" : out;
}

std::optional<LinComb<std::string>> DGA::class_of(const FormKey& k) const {
  if (degree(k) != 1) return std::nullopt;
  if (coordinate_ && k.gens == std::vector<int>{0}) {
    if (k.f.pole && k.f.k == 1) return LinComb<std::string>(to_string(k));
    return LinComb<std::string>();
  }
  if (k.f.is_one() && k.gens.size() == 1 && !dtable_.count(k.gens[0])) {
    return LinComb<std::string>(names_[k.gens[0]]);
  }
  return std::nullopt;
}

std::optional<LinComb<std::string>> DGA::class_of(const Form& a) const {
  LinComb<std::string> out;
  for (const auto& [k, c] : a) {
    auto cls = class_of(k);
    if (!cls) return std::nullopt;
    out.axpy(c, *cls);
  }
  return out;
}

bool DGA::is_exact(const Form& two_form) const {
  Form rest;
  for (const auto& [k, c] : two_form) {
    // h dx ^ g with g closed is d(H g) whenever h has no simple pole.
    bool exact_piece = coordinate_ && k.gens.size() == 2 && k.gens[0] == 0 &&
                       degrees_[k.gens[1]] == 1 && !dtable_.count(k.gens[1]) &&
                       !(k.f.pole && k.f.k == 1);
    if (!exact_piece) rest.add(k, c);
  }
  if (rest.empty()) return true;
  std::vector<Form> span;
  for (const auto& [id, value] : dtable_) {
    if (degrees_[id] == 1) span.push_back(value);
  }
  return solve_in_span(rest, span).has_value();
}

int bar_degree(const DGA& dga, const BarKey& k) {
  int d = 0;
  for (const auto& s : k.slots) d += dga.degree(s) - 1;
  return d;
}

namespace {

BarElem scale_coeff(const DGA& dga, const BarElem& b, const Func& f) {
  BarElem out;
  for (const auto& [k, c] : b) {
    for (const auto& [pf, cf] : dga.func_mul(Func(k.coeff), f)) {
      out.add(BarKey{pf, k.slots}, c * cf);
    }
  }
  return out;
}

BarElem append_slot(const BarElem& b, const Form& f) {
  BarElem out;
  for (const auto& [k, c] : b) {
    for (const auto& [fk, cf] : f) {
      BarKey nk = k;
      nk.slots.push_back(fk);
      out.add(nk, c * cf);
    }
  }
  return out;
}

BarElem from_func(const Func& f) {
  BarElem out;
  for (const auto& [pf, c] : f) out.add(BarKey{pf, {}}, c);
  return out;
}

}  // namespace

BarElem bar_word(const DGA& dga, const std::vector<Form>& slots) {
  BarElem out = from_func(Func(PFKey{}));
  for (const auto& s : slots) out = append_slot(out, s);
  (void)dga;
  return out;
}

BarElem bar_d(const DGA& dga, const BarElem& b) {
  BarElem out;
  for (const auto& [key, c] : b) {
    const auto& s = key.slots;
    const std::size_t n = s.size();
    if (n == 0) continue;
    std::vector<int> deg(n);
    for (std::size_t i = 0; i < n; ++i) deg[i] = dga.degree(s[i]);
    // d_I, differential part: (-1)^i [j w_1|...|j w_{i-1}|d w_i|...].
    int jsign = 1;
    for (std::size_t i = 0; i < n; ++i) {
      int sign = ((i + 1) % 2 ? -1 : 1) * jsign;
      for (const auto& [fk, cf] : dga.d(Form(s[i]))) {
        BarKey nk = key;
        nk.slots[i] = fk;
        out.add(nk, c * cf * sign);
      }
      if (i + 1 < n) {
        // (-1)^{i+1} [j w_1|...|j w_i ^ w_{i+1}|...].
        int wsign = ((i + 2) % 2 ? -1 : 1) * jsign * (deg[i] % 2 ? -1 : 1);
        for (const auto& [fk, cf] : dga.mul(Form(s[i]), Form(s[i + 1]))) {
          BarKey nk{key.coeff, {}};
          nk.slots.insert(nk.slots.end(), s.begin(), s.begin() + i);
          nk.slots.push_back(fk);
          nk.slots.insert(nk.slots.end(), s.begin() + i + 2, s.end());
          out.add(nk, c * cf * wsign);
        }
      }
      if (deg[i] % 2) jsign = -jsign;
    }
    // d_C: degree-0 projections of the outer slots.
    if (deg[0] == 0) {
      BarElem t(BarKey{key.coeff, std::vector<FormKey>(s.begin() + 1, s.end())}, -c);
      out += scale_coeff(dga, t, Func(s[0].f));
    }
    if (deg[n - 1] == 0) {
      int inner = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) inner += deg[i] - 1;
      int nu = (deg[n - 1] - 1) * inner;
      BarElem t(BarKey{key.coeff, std::vector<FormKey>(s.begin(), s.end() - 1)},
                c * (nu % 2 ? -1 : 1));
      out += scale_coeff(dga, t, Func(s[n - 1].f));
    }
  }
  return out;
}

BarElem bar_shuffle(const DGA& dga, const BarElem& a, const BarElem& b) {
  BarElem out;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) {
      Func coeff = dga.func_mul(Func(ka.coeff), Func(kb.coeff));
      for (const auto& [w, cw] : shuffle(ka.slots, kb.slots)) {
        for (const auto& [pf, cf] : coeff) out.add(BarKey{pf, w}, ca * cb * cw * cf);
      }
    }
  }
  return out;
}

std::string to_string(const DGA& dga, const BarElem& b) {
  std::string out;
  for (const auto& [k, c] : b) {
    std::string body = k.coeff.is_one() ? "" : dga.func_to_string(k.coeff) + "*";
    body += "[";
    for (std::size_t i = 0; i < k.slots.size(); ++i) {
      if (i) body += "|";
      body += dga.to_string(k.slots[i]);
    }
    body += "]";
    append_term(out, c, body);
  }
  return out.empty() ? "0" : out;
}

namespace {

void validate(const ConnectionData& c) {
  const std::size_t r = c.n.size();
  for (const auto& row : c.n) {
    if (row.size() != r) throw BasisMismatch("connection matrix is not square");
  }
  if (c.levels.size() != r) throw BasisMismatch("filtration levels do not match the rank");
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (c.n[i][j].empty()) continue;
      if (c.levels[i] >= c.levels[j])
        throw BasisMismatch("entry (" + std::to_string(i) + "," + std::to_string(j) +
                            ") is not strictly upper triangular for the filtration");
      for (const auto& [k, cf] : c.n[i][j]) {
        if (c.dga.degree(k) != 1) throw BasisMismatch("matrix entries must be one-forms");
      }
    }
  }
}

void require_integrable(const ConnectionData& c) {
  auto r = check_integrability(c);
  if (!r.pass)
    throw NotIntegrable("dN + N^N is nonzero at (" + std::to_string(r.row) + "," +
                        std::to_string(r.col) + "): " + c.dga.to_string(r.witness));
}

}  // namespace

IntegrabilityResult check_integrability(const ConnectionData& c) {
  validate(c);
  const std::size_t r = c.n.size();
  IntegrabilityResult res;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      Form e = c.dga.d(c.n[i][j]);
      for (std::size_t k = 0; k < r; ++k) {
        if (!c.n[i][k].empty() && !c.n[k][j].empty()) e += c.dga.mul(c.n[i][k], c.n[k][j]);
      }
      if (!e.empty()) {
        res.pass = false;
        res.row = static_cast<int>(i);
        res.col = static_cast<int>(j);
        res.witness = e;
        return res;
      }
    }
  }
  return res;
}

BarElem smb(const ConnectionData& c, const FuncVector& f, const FuncVector& w) {
  const std::size_t r = c.n.size();
  if (f.size() != r || w.size() != r) throw BasisMismatch("covector/vector size differs from rank");
  require_integrable(c);
  std::vector<BarElem> row(r);
  for (std::size_t j = 0; j < r; ++j) row[j] = from_func(f[j]);
  BarElem out;
  for (std::size_t step = 0; step <= r; ++step) {
    bool any = false;
    for (std::size_t j = 0; j < r; ++j) {
      if (row[j].empty()) continue;
      any = true;
      out += scale_coeff(c.dga, row[j], w[j]);
    }
    if (!any) break;
    std::vector<BarElem> next(r);
    for (std::size_t i = 0; i < r; ++i) {
      if (row[i].empty()) continue;
      for (std::size_t j = 0; j < r; ++j) {
        if (!c.n[i][j].empty()) next[j] += append_slot(row[i], c.n[i][j]);
      }
    }
    row = std::move(next);
  }
  return out;
}

BarElem smb(const ConnectionData& c) { return smb(c, c.covector, c.vector); }

ConnectionData change_basis(const ConnectionData& c,
                            const std::vector<std::vector<Func>>& p) {
  const std::size_t r = c.n.size();
  if (p.size() != r) throw BasisMismatch("gauge matrix size differs from rank");
  const Func one(PFKey{});
  std::vector<std::vector<Func>> m(r, std::vector<Func>(r));
  for (std::size_t i = 0; i < r; ++i) {
    if (p[i].size() != r) throw BasisMismatch("gauge matrix is not square");
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j && !(p[i][j] == one)) throw BasisMismatch("gauge matrix must be unipotent");
      if (i != j && !p[i][j].empty() && c.levels[i] >= c.levels[j])
        throw BasisMismatch("gauge matrix does not preserve the filtration");
      if (i != j) m[i][j] = -p[i][j];
    }
  }
  auto fmul = [&](const std::vector<std::vector<Func>>& a,
                  const std::vector<std::vector<Func>>& b) {
    std::vector<std::vector<Func>> out(r, std::vector<Func>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k)
        if (!a[i][k].empty())
          for (std::size_t j = 0; j < r; ++j) out[i][j] += c.dga.func_mul(a[i][k], b[k][j]);
    return out;
  };
  // P^-1 = sum_k (I - P)^k.
  std::vector<std::vector<Func>> q(r, std::vector<Func>(r)), power = m;
  for (std::size_t i = 0; i < r; ++i) q[i][i] = one;
  for (std::size_t k = 1; k < r; ++k) {
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) q[i][j] += power[i][j];
    power = fmul(power, m);
  }
  ConnectionData out = c;
  FormMatrix np(r, std::vector<Form>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      Form e = c.dga.d(c.dga.func(p[i][j]));
      for (std::size_t k = 0; k < r; ++k) {
        if (!c.n[i][k].empty() && !p[k][j].empty()) e += c.dga.mul(c.n[i][k], c.dga.func(p[k][j]));
      }
      np[i][j] = e;
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      Form e;
      for (std::size_t k = 0; k < r; ++k) {
        if (!q[i][k].empty() && !np[k][j].empty()) e += c.dga.mul(c.dga.func(q[i][k]), np[k][j]);
      }
      out.n[i][j] = e;
    }
  }
  if (c.covector.size() == r) {
    for (std::size_t j = 0; j < r; ++j) {
      Func s;
      for (std::size_t i = 0; i < r; ++i) s += c.dga.func_mul(c.covector[i], p[i][j]);
      out.covector[j] = s;
    }
  }
  if (c.vector.size() == r) {
    for (std::size_t i = 0; i < r; ++i) {
      Func s;
      for (std::size_t j = 0; j < r; ++j) s += c.dga.func_mul(q[i][j], c.vector[j]);
      out.vector[i] = s;
    }
  }
  return out;
}

namespace {

std::size_t max_length(const BarElem& b) {
  std::size_t l = 0;
  for (const auto& [k, c] : b) l = std::max(l, k.slots.size());
  return l;
}

// Top-length part of b with slots replaced by classes; nullopt when some slot
// or coefficient is outside the constant-coefficient class case.
std::optional<CmbElem> top_classes(const DGA& dga, const BarElem& b, bool constant_only) {
  const std::size_t len = max_length(b);
  CmbElem out;
  for (const auto& [k, c] : b) {
    if (k.slots.size() != len) continue;
    if (constant_only && !k.coeff.is_one()) return std::nullopt;
    LinComb<ClassWord> words(ClassWord{});
    for (const auto& s : k.slots) {
      auto cls = dga.class_of(s);
      if (!cls) return std::nullopt;
      LinComb<ClassWord> next;
      for (const auto& [w, cw] : words) {
        for (const auto& [name, cn] : *cls) {
          ClassWord nw = w;
          nw.push_back(name);
          next.add(nw, cw * cn);
        }
      }
      words = std::move(next);
    }
    for (const auto& [w, cw] : words) out.add({k.coeff, w}, c * cw);
  }
  return out;
}

}  // namespace

EqualModR equal_mod_R(const DGA& dga, const BarElem& a, const BarElem& b,
                      const std::vector<Form>& hints) {
  EqualModR res;
  BarElem diff = a - b;
  if (diff.empty()) {
    res.verdict = Verdict::Equal;
    return res;
  }
  std::set<PFKey> funcs;
  std::set<FormKey> forms;
  auto note = [&](const FormKey& k) {
    if (dga.degree(k) == 0) funcs.insert(k.f);
    if (dga.degree(k) == 1) forms.insert(k);
  };
  for (const auto& [k, c] : diff) {
    if (!k.coeff.is_one()) funcs.insert(k.coeff);
    for (const auto& s : k.slots) note(s);
  }
  for (const auto& h : hints) {
    for (const auto& [k, c] : h) note(k);
  }
  const std::size_t ell = std::max(max_length(a), max_length(b));
  std::vector<FormKey> fl(forms.begin(), forms.end());
  std::vector<BarKey> cands;
  for (std::size_t len = 1; len <= ell + 1; ++len) {
    std::vector<std::size_t> idx(len - 1, 0);
    while (true) {
      if (len == 1 || !fl.empty()) {
        for (std::size_t pos = 0; pos < len; ++pos) {
          for (const auto& pf : funcs) {
            BarKey k{PFKey{}, {}};
            std::size_t m = 0;
            for (std::size_t i = 0; i < len; ++i) {
              k.slots.push_back(i == pos ? FormKey{pf, {}} : fl[idx[m++]]);
            }
            cands.push_back(k);
          }
        }
      }
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == fl.size()) idx[i++] = 0;
      if (i == idx.size() || fl.empty()) break;
    }
  }
  SpanSolver<BarKey> solver;
  for (const auto& k : cands) solver.add(bar_d(dga, BarElem(k)));
  if (auto combo = solver.express(diff)) {
    res.verdict = Verdict::Equal;
    for (const auto& [i, c] : *combo) res.preimage.add(cands[i], c);
    return res;
  }
  if (bar_d(dga, diff).empty()) {
    auto cls = top_classes(dga, diff, true);
    if (cls && !cls->empty()) res.verdict = Verdict::Distinct;
  }
  return res;
}

KernelCheck cmb_kernel_check(const DGA& dga, const BarElem& top) {
  KernelCheck res;
  const std::size_t len = max_length(top);
  auto classes = [&](const std::vector<FormKey>& slots) {
    LinComb<ClassWord> words(ClassWord{});
    for (const auto& s : slots) {
      auto cls = dga.class_of(s);
      LinComb<std::string> c = cls ? *cls : LinComb<std::string>(dga.to_string(s));
      LinComb<ClassWord> next;
      for (const auto& [w, cw] : words)
        for (const auto& [name, cn] : c) {
          ClassWord nw = w;
          nw.push_back(name);
          next.add(nw, cw * cn);
        }
      words = std::move(next);
    }
    return words;
  };
  for (std::size_t pos = 0; pos + 1 < len; ++pos) {
    std::map<std::tuple<PFKey, ClassWord, ClassWord>, Form> groups;
    for (const auto& [k, c] : top) {
      if (k.slots.size() != len) continue;
      Form w = dga.mul(Form(k.slots[pos]), Form(k.slots[pos + 1]));
      if (w.empty()) continue;
      auto pre = classes(std::vector<FormKey>(k.slots.begin(), k.slots.begin() + pos));
      auto post = classes(std::vector<FormKey>(k.slots.begin() + pos + 2, k.slots.end()));
      for (const auto& [u, cu] : pre)
        for (const auto& [v, cv] : post) groups[{k.coeff, u, v}].axpy(c * cu * cv, w);
    }
    for (const auto& [key, form] : groups) {
      if (!form.empty() && !dga.is_exact(form)) {
        res.pass = false;
        res.witness = "slots " + std::to_string(pos) + "," + std::to_string(pos + 1) +
                      ": " + dga.to_string(form) + " is not exact";
        return res;
      }
    }
  }
  return res;
}

CmbElem cmb(const ConnectionData& c, const FuncVector& f, const FuncVector& w, int n) {
  const std::size_t r = c.n.size();
  if (f.size() != r || w.size() != r) throw BasisMismatch("covector/vector size differs from rank");
  require_integrable(c);
  int top = 0;
  for (int l : c.levels) top = std::max(top, l);
  if (top != n)
    throw NotLengthN("filtration length " + std::to_string(top) + " differs from " +
                     std::to_string(n));
  std::vector<BarElem> row(r);
  for (std::size_t j = 0; j < r; ++j) {
    if (c.levels[j] == 0) row[j] = from_func(f[j]);
  }
  for (int step = 0; step < n; ++step) {
    std::vector<BarElem> next(r);
    for (std::size_t i = 0; i < r; ++i) {
      if (row[i].empty()) continue;
      for (std::size_t j = 0; j < r; ++j) {
        if (c.levels[j] == c.levels[i] + 1 && !c.n[i][j].empty())
          next[j] += append_slot(row[i], c.n[i][j]);
      }
    }
    row = std::move(next);
  }
  BarElem word;
  for (std::size_t j = 0; j < r; ++j) {
    if (c.levels[j] == n) word += scale_coeff(c.dga, row[j], w[j]);
  }
  if (word.empty()) throw NotLengthN("the length-" + std::to_string(n) + " part vanishes");
  auto kc = cmb_kernel_check(c.dga, word);
  if (!kc.pass) throw NotInRange("cohomological symbol fails the kernel check: " + kc.witness);
  auto cls = top_classes(c.dga, word, false);
  if (!cls) throw NotInRange("a slot has no computable cohomology class");
  return *cls;
}

std::string to_string(const DGA& dga, const CmbElem& x) {
  std::string out;
  for (const auto& [key, c] : x) {
    const auto& [coeff, word] = key;
    std::string body = coeff.is_one() ? "" : dga.func_to_string(coeff) + "*";
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (i) body += " ⊗ ";
      body += "[" + word[i] + "]";
    }
    if (word.empty()) body += "[]";
    append_term(out, c, body);
  }
  return out.empty() ? "0" : out;
}

Form kz_form(const DGA& dga, int letter) {
  Form dx(FormKey{PFKey{}, {0}});
  if (letter == 0) return dga.mul(dga.func(Func(PFKey{true, 0, 1})), dx);
  if (letter == 1) return dga.mul(dga.func(Func(PFKey{true, 1, 1}, -1)), dx);
  throw UnsupportedLetter("KZ letters are 0 and 1");
}

ConnectionData kz_connection(int n) {
  if (n < 0 || n > 10) throw WeightOutOfRange("KZ truncation must lie in 0..10");
  ConnectionData c;
  c.dga = DGA::p1minus({0, 1});
  std::vector<Word> basis{{}};
  for (int len = 1; len <= n; ++len) {
    for (int m = 0; m < (1 << len); ++m) {
      Word w(len);
      for (int i = 0; i < len; ++i) w[i] = (m >> (len - 1 - i)) & 1;
      basis.push_back(w);
    }
  }
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  const std::size_t r = basis.size();
  c.n.assign(r, std::vector<Form>(r));
  for (std::size_t j = 0; j < r; ++j) {
    c.levels.push_back(static_cast<int>(basis[j].size()));
    if (basis[j].empty()) continue;
    Word prefix(basis[j].begin(), basis[j].end() - 1);
    c.n[index[prefix]][j] = kz_form(c.dga, basis[j].back());
  }
  c.covector.assign(r, Func());
  c.vector.assign(r, Func());
  c.covector[0] = Func(PFKey{});
  return c;
}

BarElem smb_li(const Word& w) {
  ConnectionData c = kz_connection(static_cast<int>(w.size()));
  std::size_t idx = 0;
  for (int len = 1; len < static_cast<int>(w.size()); ++len) idx += std::size_t{1} << len;
  std::size_t m = 0;
  for (Letter l : w) {
    if (l != 0 && l != 1) throw UnsupportedLetter("Li words use the letters 0 and 1");
    m = 2 * m + l;
  }
  if (!w.empty()) idx += 1 + m;
  c.vector[idx] = Func(PFKey{});
  return smb(c);
}

namespace {

FamExpr fam_mul(const FamKey& a, const FamKey& b) {
  FamExpr out;
  for (const auto& [m, cm] : shuffle(a.mzv, b.mzv)) {
    for (const auto& [l, cl] : shuffle(a.li, b.li)) {
      out.add(FamKey{a.lef + b.lef, m, l}, cm * cl);
    }
  }
  return out;
}

FamExpr fam_mul(const FamExpr& a, const FamExpr& b) {
  FamExpr out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) out.axpy(ca * cb, fam_mul(ka, kb));
  return out;
}

FamTensor tensor_mul(const FamTensor& a, const FamTensor& b) {
  FamTensor out;
  for (const auto& [pa, ca] : a) {
    for (const auto& [pb, cb] : b) {
      FamExpr l = fam_mul(pa.first, pb.first);
      FamExpr r = fam_mul(pa.second, pb.second);
      for (const auto& [kl, cl] : l)
        for (const auto& [kr, cr] : r) out.add({kl, kr}, ca * cb * cl * cr);
    }
  }
  return out;
}

// I^dr(a; gap; b) with a in {0, 1} and b in {0, 1, x}; x is encoded as 2.
FamExpr gap_factor(Letter a, const Word& gap, Letter b) {
  FamExpr out;
  if (b != 2) {
    for (const auto& [u, c] : regularize_ii(a, gap, b)) out.add(FamKey{0, u, {}}, c);
    return out;
  }
  if (a == 0) return FamExpr(FamKey{0, {}, gap});
  for (const auto& [u, v] : deconcat(gap)) {
    for (const auto& [m, c] : regularize_ii(1, u, 0)) out.add(FamKey{0, m, v}, c);
  }
  return out;
}

FamTensor li_coaction(const Word& a) {
  const std::size_t n = a.size();
  std::vector<Letter> pts(n + 2);
  pts[0] = 0;
  for (std::size_t i = 0; i < n; ++i) pts[i + 1] = a[i];
  pts[n + 1] = 2;
  FamTensor out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> sel{0};
    Word sub;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        sel.push_back(i + 1);
        sub.push_back(a[i]);
      }
    }
    sel.push_back(n + 1);
    FamExpr right(FamKey{static_cast<int>(sub.size()), {}, {}});
    for (std::size_t p = 0; p + 1 < sel.size() && !right.empty(); ++p) {
      Word gap(pts.begin() + sel[p] + 1, pts.begin() + sel[p + 1]);
      right = fam_mul(right, gap_factor(pts[sel[p]], gap, pts[sel[p + 1]]));
    }
    for (const auto& [k, c] : right) out.add({FamKey{0, {}, sub}, k}, c);
  }
  return out;
}

FamTensor const_coaction(const FamKey& k) {
  Gen g;
  g.lef = k.lef;
  g.w = k.mzv;
  FamTensor out;
  for (const auto& [p, c] : coaction(g)) {
    out.add({FamKey{p.first.lef, p.first.w, {}}, FamKey{p.second.lef, p.second.w, {}}}, c);
  }
  return out;
}

std::string li_name(const Word& w, Rat& sign) {
  int ones = static_cast<int>(std::count(w.begin(), w.end(), 1));
  if (ones % 2) sign = -sign;
  if (w == Word{0}) return "log(x)";
  bool classical = !w.empty() && w[0] == 1 &&
                   std::all_of(w.begin() + 1, w.end(), [](Letter l) { return l == 0; });
  if (classical) return "Li" + std::to_string(w.size()) + "(x)";
  return "Li[" + word_to_string(w) + "](x)";
}

}  // namespace

FamExpr li_family(const Word& w) {
  for (Letter l : w) {
    if (l != 0 && l != 1) throw UnsupportedLetter("Li words use the letters 0 and 1");
  }
  int ones = static_cast<int>(std::count(w.begin(), w.end(), 1));
  return FamExpr(FamKey{0, {}, w}, ones % 2 ? -1 : 1);
}

FamTensor family_coaction(const FamExpr& x) {
  FamTensor out;
  for (const auto& [k, c] : x) {
    FamTensor t = li_coaction(k.li);
    if (k.lef != 0 || !k.mzv.empty()) t = tensor_mul(const_coaction(FamKey{k.lef, k.mzv, {}}), t);
    t *= c;
    out += t;
  }
  return out;
}

std::string to_string(const FamKey& k, Rat* coeff_sign) {
  Gen g;
  g.lef = k.lef;
  g.w = k.mzv;
  Rat sign = 1;
  std::string s = to_string(g, &sign);
  if (!k.li.empty()) {
    std::string li = li_name(k.li, sign);
    s = s == "1" ? li : s + "*" + li;
  }
  if (coeff_sign) *coeff_sign *= sign;
  return s;
}

std::string to_string(const FamExpr& x) {
  std::string out;
  for (const auto& [k, c] : x) {
    Rat s = c;
    std::string body = to_string(k, &s);
    append_term(out, s, body);
  }
  return out.empty() ? "0" : out;
}

std::string to_string(const FamTensor& t) {
  std::string out;
  for (const auto& [p, c] : t) {
    Rat s = c;
    std::string l = to_string(p.first, &s);
    std::string r = to_string(p.second, &s);
    append_term(out, s, l + " ⊗ " + r);
  }
  return out.empty() ? "0" : out;
}

namespace {

const DGA& kz_dga() {
  static const DGA dga = DGA::p1minus({0, 1});
  return dga;
}

MotivicExpr evaluate_at(const FamKey& k, int base) {
  Gen g;
  g.lef = k.lef;
  g.w = k.mzv;
  MotivicExpr c(g);
  if (k.li.empty()) return c;
  if (base == 0) return {};
  return c * iint(0, k.li, 1);
}

// Forms dt/(t - a) read along the word.
BarElem iterated_word(const Word& li) {
  const DGA& dga = kz_dga();
  Form dx(FormKey{PFKey{}, {0}});
  std::vector<Form> slots;
  for (Letter a : li) slots.push_back(dga.mul(dga.func(Func(PFKey{true, Rat(a), 1})), dx));
  return bar_word(dga, slots);
}

}  // namespace

PointSymbol smb_at_point(const FamExpr& x, int base) {
  if (base != 0 && base != 1) throw UnsupportedBasePoint("base point must be 0 or 1 (tangential)");
  PointSymbol out;
  for (const auto& [p, c] : family_coaction(x)) {
    if (!p.second.mzv.empty()) continue;  // positive-weight constants have no symbol
    MotivicExpr left = evaluate_at(p.first, base);
    if (left.empty()) continue;
    BarElem right = iterated_word(p.second.li);
    for (const auto& [g, cg] : left)
      for (const auto& [b, cb] : right) out.add({g, b}, c * cg * cb);
  }
  return out;
}

PointSymbol smb_at_point(const MotivicExpr& constant, int base) {
  if (base != 0 && base != 1) throw UnsupportedBasePoint("base point must be 0 or 1 (tangential)");
  PointSymbol out;
  for (const auto& [g, c] : constant) out.add({g, BarKey{}}, c);
  return out;
}

std::string to_string(const DGA& dga, const PointSymbol& s) {
  std::string out;
  for (const auto& [p, c] : s) {
    Rat sign = c;
    std::string l = to_string(p.first, &sign);
    std::string r = to_string(dga, BarElem(p.second));
    append_term(out, sign, l + " ⊗ " + r);
  }
  return out.empty() ? "0" : out;
}

ConnectionData connection_from_json(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("connection file: ") + e.what());
  }
  try {
    ConnectionData c;
    if (j.value("coordinate", false)) {
      std::vector<Rat> pts;
      for (const auto& p : j.value("points", json::array())) pts.push_back(parse_rat(p.get<std::string>()));
      c.dga.set_coordinate(pts);
    }
    for (const auto& g : j.value("generators", json::array())) {
      c.dga.add_generator(g.at("name").get<std::string>(), g.at("degree").get<int>());
    }
    const json dmap = j.value("d", json::object());
    for (const auto& [name, value] : dmap.items()) {
      c.dga.set_d(name, c.dga.parse(value.get<std::string>()));
    }
    for (const auto& w : j.value("wedge", json::array())) {
      c.dga.set_wedge(w.at("left").get<std::string>(), w.at("right").get<std::string>(),
                      c.dga.parse(w.at("value").get<std::string>()));
    }
    for (const auto& row : j.at("matrix")) {
      std::vector<Form> r;
      for (const auto& e : row) r.push_back(c.dga.parse(e.get<std::string>()));
      c.n.push_back(std::move(r));
    }
    c.levels = j.at("levels").get<std::vector<int>>();
    auto funcs = [&](const char* key) {
      FuncVector out;
      for (const auto& e : j.value(key, json::array())) {
        Form f = c.dga.parse(e.get<std::string>());
        Func g;
        for (const auto& [k, cf] : f) {
          if (!k.gens.empty()) throw ParseError(std::string(key) + " entries must be functions");
          g.add(k.f, cf);
        }
        out.push_back(g);
      }
      return out;
    };
    c.covector = funcs("covector");
    c.vector = funcs("vector");
    validate(c);
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("connection file: ") + e.what());
  }
}

std::string connection_to_json(const ConnectionData& c) {
  using nlohmann::json;
  const DGA& dga = c.dga;
  json j;
  j["coordinate"] = dga.has_coordinate();
  if (dga.has_coordinate()) {
    json pts = json::array();
    for (const auto& p : dga.points()) pts.push_back(to_string(p));
    j["points"] = pts;
  }
  json gens = json::array(), dmap = json::object();
  for (int id = dga.has_coordinate() ? 1 : 0; id < dga.generator_count(); ++id) {
    gens.push_back({{"name", dga.generator_name(id)}, {"degree", dga.generator_degree(id)}});
    Form dg = dga.d(Form(FormKey{PFKey{}, {id}}));
    if (!dg.empty()) dmap[dga.generator_name(id)] = dga.to_string(dg);
  }
  j["generators"] = gens;
  j["d"] = dmap;
  json wedge = json::array();
  for (int a = 1; a < dga.generator_count(); ++a) {
    for (int b = a + 1; b < dga.generator_count(); ++b) {
      if (dga.generator_degree(a) != 1 || dga.generator_degree(b) != 1) continue;
      Form w = dga.mul(Form(FormKey{PFKey{}, {a}}), Form(FormKey{PFKey{}, {b}}));
      if (!(w == Form(FormKey{PFKey{}, {a, b}})))
        wedge.push_back({{"left", dga.generator_name(a)},
                         {"right", dga.generator_name(b)},
                         {"value", dga.to_string(w)}});
    }
  }
  j["wedge"] = wedge;
  json m = json::array();
  for (const auto& row : c.n) {
    json r = json::array();
    for (const auto& e : row) r.push_back(dga.to_string(e));
    m.push_back(r);
  }
  j["matrix"] = m;
  j["levels"] = c.levels;
  auto funcs = [&](const FuncVector& v) {
    json out = json::array();
    for (const auto& f : v) out.push_back(dga.to_string(dga.func(f)));
    return out;
  };
  j["covector"] = funcs(c.covector);
  j["vector"] = funcs(c.vector);
  return j.dump(2);
}

ConnectionData example_connection() {
  ConnectionData c;
  c.dga.set_coordinate({0, 1});
  c.dga.add_generator("omega1", 1);
  c.dga.add_generator("omega2", 1);
  c.dga.add_generator("omega12", 1);
  c.dga.set_d("omega12", -c.dga.mul(c.dga.gen("omega1"), c.dga.gen("omega2")));
  c.n.assign(3, std::vector<Form>(3));
  c.n[0][1] = c.dga.gen("omega1");
  c.n[0][2] = c.dga.gen("omega12");
  c.n[1][2] = c.dga.gen("omega2");
  c.levels = {0, 1, 2};
  c.covector = {Func(PFKey{}), Func(), Func()};
  c.vector = {Func(), Func(), Func(PFKey{})};
  return c;
}

}  // namespace periods
