#include "periods/rational.hpp"

#include <cctype>

#include "periods/errors.hpp"

namespace periods {

std::string to_string(const Rat& r) { return r.get_str(); }

Rat parse_rat(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  std::size_t digits = 0, slash = 0;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (std::isdigit(static_cast<unsigned char>(s[j]))) {
      ++digits;
    } else if (s[j] == '/' && slash == 0 && j > i && j + 1 < s.size()) {
      slash = j;
    } else {
      throw ParseError("not a rational: '" + s + "'");
    }
  }
  if (digits == 0) throw ParseError("not a rational: '" + s + "'");
  std::string body = s[0] == '+' ? s.substr(1) : s;
  Rat r;
  if (r.set_str(body, 10) != 0) throw ParseError("not a rational: '" + s + "'");
  if (sgn(r.get_den()) == 0) throw ParseError("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace periods
