#include "periods/sparse.hpp"

#include <set>
#include <sstream>

namespace periods {

RrefResult rref(const SparseMat& m) {
  std::vector<SparseRow> rows;
  for (const auto& r : m.rows) {
    if (!r.empty()) rows.push_back(r);
  }
  std::set<std::size_t> cols;
  for (const auto& r : rows) {
    for (const auto& [c, v] : r) cols.insert(c);
  }

  std::vector<bool> used(rows.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> pivot_rows;  // (col, row)
  for (std::size_t col : cols) {
    std::size_t best = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (used[i] || sgn(rows[i].coeff(col)) == 0) continue;
      if (best == rows.size() || rows[i].size() < rows[best].size()) best = i;
    }
    if (best == rows.size()) continue;
    used[best] = true;
    rows[best] *= 1 / rows[best].coeff(col);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == best) continue;
      Rat c = rows[i].coeff(col);
      if (sgn(c) != 0) rows[i].axpy(-c, rows[best]);
    }
    pivot_rows.emplace_back(col, best);
  }

  RrefResult out;
  out.reduced.ncols = m.ncols;
  for (const auto& [col, i] : pivot_rows) {
    out.pivots.push_back(col);
    out.reduced.rows.push_back(rows[i]);
  }
  out.rank = out.pivots.size();
  return out;
}

std::string to_json_rows(const SparseMat& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    if (i) os << ',';
    os << '[';
    bool first = true;
    for (const auto& [c, v] : m.rows[i]) {
      if (!first) os << ',';
      first = false;
      os << '[' << c << ",\"" << to_string(v) << "\"]";
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace periods
