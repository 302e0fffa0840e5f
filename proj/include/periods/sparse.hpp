#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "periods/lincomb.hpp"

namespace periods {

using SparseRow = LinComb<std::size_t>;

struct SparseMat {
  std::vector<SparseRow> rows;
  std::size_t ncols = 0;
};

struct RrefResult {
  SparseMat reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

// Reduced row-echelon form over Q. Columns are eliminated left to right; the
// pivot row for each column is the candidate with the fewest nonzeros.
RrefResult rref(const SparseMat& m);

// Serialized as [[col, "p/q"], ...] per row.
std::string to_json_rows(const SparseMat& m);

// Incremental echelon basis over an ordered generator set that remembers how
// each stored vector was built from the inputs.
template <class G, class Cmp = std::less<G>>
class SpanSolver {
 public:
  using Vec = LinComb<G, Cmp>;

  // Returns true when v was independent of the vectors added so far.
  bool add(const Vec& v) {
    std::size_t idx = inputs_++;
    Vec r = v;
    SparseRow combo(idx);
    reduce_in_place(r, combo);
    if (r.empty()) return false;
    auto lead = r.begin();
    G pivot = lead->first;
    Rat inv = 1 / lead->second;
    r *= inv;
    combo *= inv;
    // Keep the stored rows fully reduced against each other.
    for (auto& [g, row] : rows_) {
      Rat c = row.vec.coeff(pivot);
      if (sgn(c) != 0) {
        row.vec.axpy(-c, r);
        row.combo.axpy(-c, combo);
      }
    }
    rows_.emplace(pivot, Row{std::move(r), std::move(combo)});
    return true;
  }

  // Remainder of t modulo the span; canonical for a fixed span.
  Vec reduce(const Vec& t) const {
    Vec r = t;
    SparseRow dummy;
    reduce_in_place(r, dummy);
    return r;
  }

  // Coordinates of t on the added inputs (by insertion index), if t is in the
  // span. Dependent inputs receive coordinate 0.
  std::optional<SparseRow> express(const Vec& t) const {
    Vec r = t;
    SparseRow combo;
    reduce_in_place(r, combo);
    if (!r.empty()) return std::nullopt;
    return -combo;
  }

  std::size_t rank() const { return rows_.size(); }
  std::size_t inputs() const { return inputs_; }
  std::vector<G> pivots() const {
    std::vector<G> out;
    for (const auto& kv : rows_) out.push_back(kv.first);
    return out;
  }

 private:
  struct Row {
    Vec vec;
    SparseRow combo;
  };

  void reduce_in_place(Vec& r, SparseRow& combo) const {
    for (const auto& [g, row] : rows_) {
      Rat c = r.coeff(g);
      if (sgn(c) != 0) {
        r.axpy(-c, row.vec);
        combo.axpy(-c, row.combo);
      }
    }
  }

  std::map<G, Row, Cmp> rows_;
  std::size_t inputs_ = 0;
};

// Coordinates c with sum c_i span_i = target, or nullopt (NotInSpan).
template <class G, class Cmp>
std::optional<std::vector<Rat>> solve_in_span(
    const LinComb<G, Cmp>& target, const std::vector<LinComb<G, Cmp>>& span) {
  SpanSolver<G, Cmp> s;
  for (const auto& v : span) s.add(v);
  auto combo = s.express(target);
  if (!combo) return std::nullopt;
  std::vector<Rat> out(span.size(), Rat(0));
  for (const auto& [i, c] : *combo) out[i] = c;
  return out;
}

}  // namespace periods
