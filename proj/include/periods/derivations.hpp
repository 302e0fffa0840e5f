#pragma once

#include <map>
#include <utility>
#include <vector>

#include "periods/relations.hpp"

namespace periods {

// Reduced coaction: left factors in motivic reduced form, right factors in
// de Rham reduced form (monomials containing zeta(2) vanish). Right keys keep
// their power of L^dr unless unipotent is set.
using RTensor = LinComb<std::pair<RKey, RKey>>;

RTensor reduced_coaction(const RExpr& x, const RelationTable& t, bool unipotent);

// Primitive letters: odd r >= 3 stands for f_r (the class of zeta(r)),
// -p stands for nu_p (the class of log p).
using FLetter = int;

// All derivations at once: letter -> left factor.
std::map<FLetter, RExpr> derivations(const RExpr& x, const RelationTable& t);

// D_r for odd r >= 3: the left factor paired with the class of zeta^dr(r).
RExpr derivation_D(int r, const MotivicExpr& x, const RelationTable& t);

int unipotency_degree(const RExpr& x, const RelationTable& t);
int unipotency_degree(const MotivicExpr& x, const RelationTable& t);

struct Conjugates {
  std::vector<RExpr> basis;
  std::map<int, int> hodge;  // p -> h_{p,p}
};

Conjugates galois_conjugates(const MotivicExpr& x, const RelationTable& t);

// Drops L and the zeta(2) ideal; throws NotEffective on negative L powers.
RExpr project_dr(const MotivicExpr& x, const RelationTable& t);

std::string to_string(const RTensor& x);

}  // namespace periods
