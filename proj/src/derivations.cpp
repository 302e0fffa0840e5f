#include "periods/derivations.hpp"

#include <mutex>
#include <optional>

#include "periods/errors.hpp"
#include "periods/sparse.hpp"

namespace periods {

namespace {

RExpr reduce_dr(const Gen& g, const RelationTable& t, bool unipotent) {
  Gen h = g;
  h.lef = 0;
  RExpr out;
  for (const auto& [k, c] : reduce(h, t)) {
    if (k.has_zeta2()) continue;
    RKey r = k;
    r.lef = unipotent ? 0 : g.lef;
    out.add(r, c);
  }
  return out;
}

RTensor key_coaction(const RKey& key, const RelationTable& t) {
  static std::mutex mu;
  static std::map<std::pair<const RelationTable*, RKey>, RTensor> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({&t, key});
    if (it != memo.end()) return it->second;
  }
  RTensor out;
  std::map<Gen, RExpr> left_cache, right_cache;
  for (const auto& [p, c] : coaction(to_motivic(key))) {
    auto lit = left_cache.find(p.first);
    if (lit == left_cache.end()) lit = left_cache.emplace(p.first, reduce(p.first, t)).first;
    auto rit = right_cache.find(p.second);
    if (rit == right_cache.end()) {
      rit = right_cache.emplace(p.second, reduce_dr(p.second, t, false)).first;
    }
    for (const auto& [lk, lc] : lit->second) {
      for (const auto& [rk, rc] : rit->second) out.add({lk, rk}, c * lc * rc);
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(std::make_pair(&t, key), out);
  return out;
}

std::optional<FLetter> primitive_letter(const RKey& right, const RelationTable& t) {
  if (right.lef != 0) return std::nullopt;
  if (right.mono.empty() && right.logs.size() == 1) return -right.logs[0];
  if (!right.logs.empty() || right.mono.size() != 1) return std::nullopt;
  const Composition& c = right.mono[0];
  int r = weight(c);
  if (r % 2 == 0) return std::nullopt;
  if (c != Composition{Part{r, 1}}) {
    throw NotInRange("the weight-" + std::to_string(r) + " primitive is not zeta(" +
                     std::to_string(r) + ")");
  }
  // The class of zeta(r) spans the indecomposables only when it is the single
  // non-product basis element.
  int singles = 0;
  for (const auto& m : t.at(r).basis) singles += m.size() == 1;
  if (singles != 1) throw NotInRange("indecomposables of weight " + std::to_string(r));
  return r;
}

}  // namespace

RTensor reduced_coaction(const RExpr& x, const RelationTable& t, bool unipotent) {
  RTensor out;
  for (const auto& [k, c] : x) {
    for (const auto& [p, d] : key_coaction(k, t)) {
      RKey r = p.second;
      if (unipotent) r.lef = 0;
      out.add({p.first, r}, c * d);
    }
  }
  return out;
}

std::map<FLetter, RExpr> derivations(const RExpr& x, const RelationTable& t) {
  std::map<FLetter, RExpr> out;
  for (const auto& [p, c] : reduced_coaction(x, t, true)) {
    if (p.second.is_unit()) continue;
    if (auto a = primitive_letter(p.second, t)) out[*a].add(p.first, c);
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second.empty() ? out.erase(it) : std::next(it);
  }
  return out;
}

RExpr derivation_D(int r, const MotivicExpr& x, const RelationTable& t) {
  if (r < 3 || r % 2 == 0 || r > max_weight(x)) {
    throw WeightOutOfRange("D_r needs odd r with 3 <= r <= weight");
  }
  auto all = derivations(reduce(x, t), t);
  auto it = all.find(r);
  return it == all.end() ? RExpr{} : it->second;
}

int unipotency_degree(const RExpr& x, const RelationTable& t) {
  using Chain = std::pair<RKey, std::vector<RKey>>;
  LinComb<Chain> cur;
  for (const auto& [k, c] : x) cur.add({k, {}}, c);
  int degree = 0;
  while (true) {
    LinComb<Chain> next;
    for (const auto& [chain, c] : cur) {
      for (const auto& [p, d] : reduced_coaction(RExpr(chain.first), t, true)) {
        if (p.second.is_unit()) continue;
        auto rights = chain.second;
        rights.push_back(p.second);
        next.add({p.first, std::move(rights)}, c * d);
      }
    }
    if (next.empty()) return degree;
    ++degree;
    cur = std::move(next);
  }
}

int unipotency_degree(const MotivicExpr& x, const RelationTable& t) {
  return unipotency_degree(reduce(x, t), t);
}

Conjugates galois_conjugates(const MotivicExpr& x, const RelationTable& t) {
  std::map<RKey, RExpr> groups;
  for (const auto& [p, c] : reduced_coaction(reduce(x, t), t, false)) {
    groups[p.second].add(p.first, c);
  }
  Conjugates out;
  SpanSolver<RKey> span;
  for (const auto& [right, left] : groups) {
    if (left.empty() || !span.add(left)) continue;
    RExpr v = left;
    v *= 1 / std::prev(v.end())->second;
    int p = 0;
    for (const auto& [k, c] : v) p = std::max(p, k.mzv_weight());
    ++out.hodge[p];
    out.basis.push_back(std::move(v));
  }
  return out;
}

RExpr project_dr(const MotivicExpr& x, const RelationTable& t) {
  for (const auto& [g, c] : x) {
    if (g.lef < 0) throw NotEffective("negative power of L");
  }
  RExpr out;
  for (const auto& [k, c] : reduce(x, t)) {
    if (k.lef == 0 && !k.has_zeta2()) out.add(k, c);
  }
  return out;
}

std::string to_string(const RTensor& x) {
  if (x.empty()) return "0";
  std::string out;
  for (const auto& [p, c] : x) {
    std::string body = to_string(p.first) + " ⊗ " + to_string(p.second);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    Rat a = abs(c);
    out += (a == 1 ? "" : to_string(a) + "*") + body;
  }
  return out;
}

}  // namespace periods
