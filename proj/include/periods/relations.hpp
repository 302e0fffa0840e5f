#pragma once

#include <map>
#include <string>
#include <vector>

#include "periods/motivic.hpp"

namespace periods {

constexpr int kMaxTableWeight = 9;
constexpr int kTableFormatVersion = 1;
inline const char* kGeneratorSet = "double-shuffle+hoffman/1";

// Expected basis sizes for weights 2..9.
int expected_dimension(int weight);

// Product of zeta values, factors sorted; the empty monomial is 1.
using Monomial = std::vector<Composition>;

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

int weight(const Monomial& m);
std::string to_string(const Monomial& m);  // "zeta(2)^2*zeta(3)"
MotivicExpr to_motivic(const Monomial& m);

struct WeightTable {
  int weight = 0;
  std::vector<Monomial> basis;
  // Every admissible I-word of this weight on basis coordinates.
  std::map<Word, LinComb<std::size_t>, LenLex> reduction;
  std::vector<WordComb> relations;
  std::size_t variables = 0;
  std::size_t shuffle_rows = 0;
  std::size_t hoffman_rows = 0;
  std::size_t rank = 0;
  bool fallback = false;
};

struct RelationTable {
  int max_weight = 0;
  std::vector<WeightTable> weights;  // index = weight; entries 0 and 1 unused

  const WeightTable& at(int w) const;  // throws WeightTooLarge
  // Coordinates of I(0; w; 1) on the basis of its weight.
  const LinComb<std::size_t>& reduce_word(const Word& w) const;
};

// Regularized double shuffle up to max_weight; throws DimensionMismatch when
// the relations do not cut the space down to the expected size.
RelationTable datamine(int max_weight);

std::string table_to_json(const RelationTable& t);
RelationTable table_from_json(const std::string& text);  // throws CacheError

void save_table(const RelationTable& t, const std::string& path);
RelationTable load_table(const std::string& path);

// Looks in dir for a cached table covering max_weight; datamines and stores
// one otherwise.
RelationTable load_or_datamine(int max_weight, const std::string& dir);
std::string default_table_dir();

// Reduced form: L^lef * monomial * prod log(p), lef in {0, 1} after
// rewriting L^2 = -24 zeta(2).
struct RKey {
  int lef = 0;
  Monomial mono;
  std::vector<int> logs;

  int mzv_weight() const { return lef + weight(mono) + static_cast<int>(logs.size()); }
  bool is_unit() const { return lef == 0 && mono.empty() && logs.empty(); }
  bool has_zeta2() const;
  friend bool operator==(const RKey&, const RKey&) = default;
  friend bool operator<(const RKey& a, const RKey& b);
};

using RExpr = LinComb<RKey>;

RExpr reduce(const MotivicExpr& x, const RelationTable& t);
RExpr reduce(const Gen& g, const RelationTable& t);
RExpr operator*(const RExpr& a, const RExpr& b);
MotivicExpr to_motivic(const RKey& k);
MotivicExpr to_motivic(const RExpr& x);

std::string to_string(const RKey& k);
std::string to_string(const RExpr& x);

}  // namespace periods
