#pragma once

#include <vector>

#include "periods/relations.hpp"
#include "periods/words.hpp"

namespace testing {

// Admissible compositions with positive parts and exact weight w.
inline std::vector<periods::Composition> admissible(int w) {
  std::vector<periods::Composition> out;
  std::vector<int> parts;
  auto rec = [&](auto&& self, int left) -> void {
    if (left == 0) {
      if (!parts.empty() && parts.back() >= 2) {
        periods::Composition c;
        for (int p : parts) c.push_back(periods::Part{p, 1});
        out.push_back(c);
      }
      return;
    }
    for (int p = 1; p <= left; ++p) {
      parts.push_back(p);
      self(self, left - p);
      parts.pop_back();
    }
  };
  rec(rec, w);
  return out;
}

inline const periods::RelationTable& table8() {
  static const periods::RelationTable t = periods::datamine(8);
  return t;
}

}  // namespace testing
