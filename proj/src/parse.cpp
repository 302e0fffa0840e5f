#include "periods/parse.hpp"

#include <cctype>
#include <vector>

#include "periods/errors.hpp"

namespace periods {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  MotivicExpr run() {
    MotivicExpr x = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return x;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(i_) + " in \"" + s_ + "\"");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool at_digit() {
    skip();
    return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
  }
  long long integer() {
    if (!at_digit()) fail("expected integer");
    long long v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + (s_[i_++] - '0');
      if (v > 1000000000LL) fail("integer too large");
    }
    return v;
  }
  long long signed_integer() {
    bool neg = accept('-');
    if (!neg) accept('+');
    long long v = integer();
    return neg ? -v : v;
  }
  std::string ident() {
    skip();
    std::size_t j = i_;
    while (j < s_.size() && std::isalpha(static_cast<unsigned char>(s_[j]))) ++j;
    std::string out = s_.substr(i_, j - i_);
    i_ = j;
    return out;
  }

  MotivicExpr expr() {
    MotivicExpr out;
    if (accept('-')) {
      out -= term();
    } else {
      accept('+');
      out += term();
    }
    while (true) {
      if (accept('+')) {
        out += term();
      } else if (accept('-')) {
        out -= term();
      } else {
        return out;
      }
    }
  }

  MotivicExpr term() {
    MotivicExpr out = power();
    while (true) {
      if (accept('*')) {
        out = out * power();
      } else if (accept('/')) {
        MotivicExpr d = power();
        if (d.size() != 1 || !d.begin()->first.is_unit()) fail("division by a non-scalar");
        out *= 1 / d.begin()->second;
      } else {
        return out;
      }
    }
  }

  MotivicExpr power() {
    MotivicExpr base = atom();
    if (!accept('^')) return base;
    long long e = integer();
    if (e > 64) fail("exponent too large");
    MotivicExpr out = scalar(1);
    for (long long k = 0; k < e; ++k) out = out * base;
    return out;
  }

  MotivicExpr atom() {
    if (accept('(')) {
      MotivicExpr x = expr();
      expect(')');
      return x;
    }
    if (at_digit()) return scalar(Rat(BigInt(std::to_string(integer()))));
    std::string name = ident();
    if (name == "L") return lefschetz(1);
    if (name == "zeta") {
      expect('(');
      Composition c;
      do {
        long long n = signed_integer();
        if (n == 0) fail("zeta arguments must be nonzero");
        c.push_back(Part{static_cast<int>(n < 0 ? -n : n), n < 0 ? -1 : 1});
      } while (accept(','));
      expect(')');
      return zeta(c);
    }
    if (name == "log") {
      expect('(');
      long long n = integer();
      expect(')');
      return log_of(n);
    }
    if (name == "I") {
      expect('(');
      Letter a0 = static_cast<Letter>(signed_integer());
      expect(';');
      Word w;
      while (!accept(';')) {
        accept(',');
        w.push_back(static_cast<Letter>(signed_integer()));
      }
      Letter a1 = static_cast<Letter>(signed_integer());
      expect(')');
      return iint(a0, w, a1);
    }
    if (name.empty()) fail("expected an expression");
    fail("unknown name '" + name + "'");
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

MotivicExpr parse_motivic(const std::string& text) { return Parser(text).run(); }

}  // namespace periods
