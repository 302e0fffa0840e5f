#include "periods/relations.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "periods/errors.hpp"
#include "periods/sparse.hpp"

namespace periods {

int expected_dimension(int weight) {
  static const int dims[] = {1, 0, 1, 1, 1, 2, 2, 3, 4, 5};
  if (weight < 0 || weight > kMaxTableWeight) {
    throw WeightTooLarge("weight " + std::to_string(weight));
  }
  return dims[weight];
}

namespace {

int comp_weight(const Composition& c) { return weight(c); }

}  // namespace

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  int wa = weight(a), wb = weight(b);
  if (wa != wb) return wa < wb;
  if (a.size() != b.size()) return a.size() > b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int xa = comp_weight(a[i]), xb = comp_weight(b[i]);
    if (xa != xb) return xa < xb;
    if (a[i] != b[i]) return LenLex{}(a[i], b[i]);
  }
  return false;
}

int weight(const Monomial& m) {
  int w = 0;
  for (const auto& c : m) w += comp_weight(c);
  return w;
}

std::string to_string(const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size();) {
    std::size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    if (!s.empty()) s += "*";
    s += comp_to_string(m[i]);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s.empty() ? "1" : s;
}

MotivicExpr to_motivic(const Monomial& m) {
  MotivicExpr out = scalar(1);
  for (const auto& c : m) out = out * zeta(c);
  return out;
}

const WeightTable& RelationTable::at(int w) const {
  if (w < 0 || w > max_weight) {
    throw WeightTooLarge("weight " + std::to_string(w) + " exceeds table weight " +
                         std::to_string(max_weight));
  }
  if (w < 2 || static_cast<std::size_t>(w) >= weights.size()) {
    throw MissingRelationTable("no table at weight " + std::to_string(w));
  }
  return weights[w];
}

const LinComb<std::size_t>& RelationTable::reduce_word(const Word& w) const {
  for (Letter l : w) {
    if (l != 0 && l != 1) throw UnsupportedLetter("relation tables cover letters 0 and 1");
  }
  const WeightTable& wt = at(static_cast<int>(w.size()));
  auto it = wt.reduction.find(w);
  if (it == wt.reduction.end()) throw NotAdmissible("word is not in normal form");
  return it->second;
}

namespace {

// Admissible I-words of a weight: start with 1, end with 0.
std::vector<Word> admissible_words(int w) {
  std::vector<Word> out;
  if (w < 2) return out;
  for (unsigned mask = 0; mask < (1u << (w - 2)); ++mask) {
    Word u{1};
    for (int i = w - 3; i >= 0; --i) u.push_back((mask >> i) & 1);
    u.push_back(0);
    out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Composition> admissible_comps(int w) {
  std::vector<Composition> out;
  for (const Word& u : admissible_words(w)) out.push_back(iword_to_comp(u).first);
  std::sort(out.begin(), out.end(), [](const Composition& a, const Composition& b) {
    return LenLex{}(a, b);
  });
  return out;
}

Rat depth_sign(const Composition& c) { return (c.size() % 2) ? Rat(-1) : Rat(1); }

// zeta(c) as a combination of I-words, which may be non-normal.
WordComb zeta_words(const Composition& c) {
  return WordComb(comp_to_iword(c), depth_sign(c));
}

WordComb monomial_words(const Monomial& m) {
  WordComb out(Word{});
  for (const auto& c : m) out = shuffle(out, zeta_words(c));
  return out;
}

WordComb stuffle_words(const Composition& a, const Composition& b) {
  WordComb out;
  for (const auto& [c, k] : stuffle(a, b)) out.axpy(k, zeta_words(c));
  return out;
}

// Multisets of earlier generators with total weight w and at least two factors.
void product_candidates(const std::vector<Composition>& gens, std::size_t from, int w,
                        Monomial& cur, std::vector<Monomial>& out) {
  if (w == 0) {
    if (cur.size() >= 2) out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < gens.size(); ++i) {
    int gw = comp_weight(gens[i]);
    if (gw > w) continue;
    cur.push_back(gens[i]);
    product_candidates(gens, i, w - gw, cur, out);
    cur.pop_back();
  }
}

bool all_odd_at_least_3(const Composition& c) {
  for (const auto& p : c) {
    if (p.n < 3 || p.n % 2 == 0) return false;
  }
  return true;
}

WeightTable mine_weight(int w, const std::vector<Composition>& gens_below) {
  WeightTable wt;
  wt.weight = w;
  std::vector<Word> vars = admissible_words(w);
  wt.variables = vars.size();

  SpanSolver<Word, LenLex> solver;
  auto add_relation = [&](const WordComb& r) {
    if (r.empty()) return;
    wt.relations.push_back(r);
    solver.add(r);
  };

  for (int a = 2; 2 * a <= w; ++a) {
    auto left = admissible_comps(a);
    auto right = admissible_comps(w - a);
    for (std::size_t i = 0; i < left.size(); ++i) {
      for (std::size_t j = 0; j < right.size(); ++j) {
        if (2 * a == w && j < i) continue;
        const auto& x = left[i];
        const auto& y = right[j];
        WordComb sh = shuffle(zeta_words(x), zeta_words(y));
        add_relation(sh - stuffle_words(x, y));
        ++wt.shuffle_rows;
      }
    }
  }
  // Regularized zeta(1) * zeta(c): the divergent terms of both products agree.
  Composition one{Part{1, 1}};
  for (const auto& c : admissible_comps(w - 1)) {
    WordComb diff = shuffle(zeta_words(one), zeta_words(c)) - stuffle_words(one, c);
    WordComb finite;
    for (const auto& [u, k] : diff) {
      if (!is_normal(u)) {
        throw std::logic_error("divergent terms do not cancel for " + comp_to_string(c));
      }
      finite.add(u, k);
    }
    add_relation(finite);
    ++wt.hoffman_rows;
  }
  wt.rank = solver.rank();
  std::size_t relation_inputs = solver.inputs();

  const int expected = expected_dimension(w);
  if (static_cast<int>(wt.variables - wt.rank) != expected) {
    throw DimensionMismatch("weight " + std::to_string(w) + ": relations leave dimension " +
                            std::to_string(wt.variables - wt.rank) + ", expected " +
                            std::to_string(expected));
  }

  std::vector<Monomial> candidates;
  Monomial cur;
  product_candidates(gens_below, 0, w, cur, candidates);
  std::sort(candidates.begin(), candidates.end(), MonomialLess{});
  std::size_t structured = candidates.size();
  candidates.push_back({Composition{Part{w, 1}}});
  ++structured;
  auto comps = admissible_comps(w);
  for (const auto& c : comps) {
    if (c.size() == 2 && all_odd_at_least_3(c)) {
      candidates.push_back({c});
      ++structured;
    }
  }
  for (const auto& c : comps) candidates.push_back({c});

  std::map<std::size_t, std::size_t> input_to_basis;
  for (std::size_t i = 0; i < candidates.size() && static_cast<int>(wt.basis.size()) < expected;
       ++i) {
    std::size_t idx = solver.inputs();
    if (solver.add(monomial_words(candidates[i]))) {
      input_to_basis[idx] = wt.basis.size();
      wt.basis.push_back(candidates[i]);
      if (i >= structured) wt.fallback = true;
    }
  }
  if (static_cast<int>(wt.basis.size()) != expected) {
    throw DimensionMismatch("weight " + std::to_string(w) + ": basis search found " +
                            std::to_string(wt.basis.size()) + " elements");
  }

  for (const Word& u : vars) {
    auto combo = solver.express(WordComb(u));
    if (!combo) throw std::logic_error("word outside the spanned space");
    LinComb<std::size_t> coords;
    for (const auto& [i, k] : *combo) {
      if (i < relation_inputs) continue;
      auto it = input_to_basis.find(i);
      if (it != input_to_basis.end()) coords.add(it->second, k);
    }
    wt.reduction.emplace(u, coords);
  }
  return wt;
}

}  // namespace

RelationTable datamine(int max_weight) {
  if (max_weight > kMaxTableWeight) {
    throw WeightTooLarge("datamine supports weights up to " + std::to_string(kMaxTableWeight));
  }
  if (max_weight < 2) throw WeightOutOfRange("datamine needs max weight >= 2");
  RelationTable t;
  t.max_weight = max_weight;
  t.weights.resize(max_weight + 1);
  std::vector<Composition> gens;
  for (int w = 2; w <= max_weight; ++w) {
    t.weights[w] = mine_weight(w, gens);
    for (const auto& m : t.weights[w].basis) {
      if (m.size() == 1) gens.push_back(m[0]);
    }
  }
  return t;
}

namespace {

using nlohmann::json;

json comp_json(const Composition& c) {
  json a = json::array();
  for (const auto& p : c) a.push_back(p.sign * p.n);
  return a;
}

Composition comp_from_json(const json& a) {
  Composition c;
  for (const auto& v : a) {
    int n = v.get<int>();
    if (n == 0) throw CacheError("zero part");
    c.push_back(Part{std::abs(n), n < 0 ? -1 : 1});
  }
  return c;
}

json payload(const RelationTable& t) {
  json j;
  j["format"] = "periods-relation-table";
  j["version"] = kTableFormatVersion;
  j["generator_set"] = kGeneratorSet;
  j["max_weight"] = t.max_weight;
  json ws = json::array();
  for (int w = 2; w <= t.max_weight; ++w) {
    const auto& wt = t.weights[w];
    json e;
    e["weight"] = w;
    e["variables"] = wt.variables;
    e["shuffle_rows"] = wt.shuffle_rows;
    e["hoffman_rows"] = wt.hoffman_rows;
    e["rank"] = wt.rank;
    e["fallback"] = wt.fallback;
    json basis = json::array();
    for (const auto& m : wt.basis) {
      json f = json::array();
      for (const auto& c : m) f.push_back(comp_json(c));
      basis.push_back({{"name", to_string(m)}, {"factors", f}});
    }
    e["basis"] = basis;
    json red = json::array();
    for (const auto& [u, coords] : wt.reduction) {
      json terms = json::array();
      for (const auto& [i, k] : coords) terms.push_back({i, to_string(k)});
      red.push_back({{"word", u}, {"terms", terms}});
    }
    e["reductions"] = red;
    json rels = json::array();
    for (const auto& r : wt.relations) {
      json row = json::array();
      for (const auto& [u, k] : r) row.push_back({u, to_string(k)});
      rels.push_back(row);
    }
    e["relations"] = rels;
    ws.push_back(e);
  }
  j["weights"] = ws;
  return j;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr)) {
    throw CacheError("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

}  // namespace

std::string table_to_json(const RelationTable& t) {
  json j = payload(t);
  j["checksum"] = sha256_hex(j.dump());
  return j.dump(1);
}

RelationTable table_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw CacheError(std::string("malformed table: ") + e.what());
  }
  try {
    if (j.value("format", "") != "periods-relation-table") throw CacheError("not a relation table");
    if (j.value("version", 0) != kTableFormatVersion ||
        j.value("generator_set", "") != kGeneratorSet) {
      throw CacheError("table version or generator set differs");
    }
    std::string stored = j.at("checksum").get<std::string>();
    j.erase("checksum");
    if (sha256_hex(j.dump()) != stored) throw CacheError("checksum mismatch");

    RelationTable t;
    t.max_weight = j.at("max_weight").get<int>();
    if (t.max_weight < 2 || t.max_weight > kMaxTableWeight) throw CacheError("bad max_weight");
    t.weights.resize(t.max_weight + 1);
    for (const auto& e : j.at("weights")) {
      int w = e.at("weight").get<int>();
      if (w < 2 || w > t.max_weight) throw CacheError("bad weight entry");
      WeightTable& wt = t.weights[w];
      wt.weight = w;
      wt.variables = e.at("variables").get<std::size_t>();
      wt.shuffle_rows = e.at("shuffle_rows").get<std::size_t>();
      wt.hoffman_rows = e.at("hoffman_rows").get<std::size_t>();
      wt.rank = e.at("rank").get<std::size_t>();
      wt.fallback = e.at("fallback").get<bool>();
      for (const auto& b : e.at("basis")) {
        Monomial m;
        for (const auto& f : b.at("factors")) m.push_back(comp_from_json(f));
        wt.basis.push_back(m);
      }
      for (const auto& r : e.at("reductions")) {
        LinComb<std::size_t> coords;
        for (const auto& term : r.at("terms")) {
          std::size_t i = term.at(0).get<std::size_t>();
          if (i >= wt.basis.size()) throw CacheError("basis index out of range");
          coords.add(i, parse_rat(term.at(1).get<std::string>()));
        }
        wt.reduction.emplace(r.at("word").get<Word>(), coords);
      }
      for (const auto& row : e.at("relations")) {
        WordComb rel;
        for (const auto& term : row) {
          rel.add(term.at(0).get<Word>(), parse_rat(term.at(1).get<std::string>()));
        }
        wt.relations.push_back(rel);
      }
      if (static_cast<int>(wt.basis.size()) != expected_dimension(w)) {
        throw DimensionMismatch("cached table has the wrong dimension at weight " +
                                std::to_string(w));
      }
    }
    for (int w = 2; w <= t.max_weight; ++w) {
      if (t.weights[w].weight != w) throw CacheError("missing weight " + std::to_string(w));
    }
    return t;
  } catch (const json::exception& e) {
    throw CacheError(std::string("malformed table: ") + e.what());
  } catch (const InputError& e) {
    throw CacheError(e.what());
  }
}

void save_table(const RelationTable& t, const std::string& path) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  fs::path tmp = p;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw CacheError("cannot write " + tmp.string());
    os << table_to_json(t) << '\n';
    if (!os) throw CacheError("write failed for " + tmp.string());
  }
  fs::rename(tmp, p);
}

RelationTable load_table(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw MissingRelationTable("cannot read " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return table_from_json(ss.str());
}

std::string default_table_dir() {
  if (const char* env = std::getenv("PERIODS_TABLE_DIR"); env && *env) return env;
  return ".periods_cache";
}

RelationTable load_or_datamine(int max_weight, const std::string& dir) {
  namespace fs = std::filesystem;
  max_weight = std::max(max_weight, 2);
  if (max_weight > kMaxTableWeight) {
    throw WeightTooLarge("tables support weights up to " + std::to_string(kMaxTableWeight));
  }
  for (int w = max_weight; w <= kMaxTableWeight; ++w) {
    fs::path p = fs::path(dir) / ("relations-w" + std::to_string(w) + "-v" +
                                  std::to_string(kTableFormatVersion) + ".json");
    if (!fs::exists(p)) continue;
    try {
      return load_table(p.string());
    } catch (const CacheError&) {
      // Stale or corrupt cache entries are rebuilt below.
    }
  }
  RelationTable t = datamine(max_weight);
  fs::path p = fs::path(dir) / ("relations-w" + std::to_string(max_weight) + "-v" +
                                std::to_string(kTableFormatVersion) + ".json");
  try {
    save_table(t, p.string());
  } catch (const std::exception&) {
    // A read-only cache location is not fatal.
  }
  return t;
}

bool RKey::has_zeta2() const {
  for (const auto& c : mono) {
    if (c == Composition{Part{2, 1}}) return true;
  }
  return false;
}

bool operator<(const RKey& a, const RKey& b) {
  int wa = a.mzv_weight(), wb = b.mzv_weight();
  if (wa != wb) return wa < wb;
  if (a.lef != b.lef) return a.lef > b.lef;
  if (a.logs.size() != b.logs.size()) return a.logs.size() < b.logs.size();
  if (a.logs != b.logs) return a.logs < b.logs;
  MonomialLess less;
  return less(a.mono, b.mono);
}

namespace {

const Composition kZeta2{Part{2, 1}};

// L^lef * rest with L^2 = -24 zeta(2).
RExpr with_lefschetz(int lef, Monomial mono, std::vector<int> logs) {
  if (lef < 0) throw NotEffective("negative power of L");
  Rat c = 1;
  for (int i = 0; i + 1 < lef; i += 2) {
    mono.push_back(kZeta2);
    c *= -24;
  }
  std::sort(mono.begin(), mono.end());
  std::sort(logs.begin(), logs.end());
  return RExpr(RKey{lef % 2, std::move(mono), std::move(logs)}, c);
}

}  // namespace

RExpr reduce(const Gen& g, const RelationTable& t) {
  if (g.w.empty()) return with_lefschetz(g.lef, {}, g.logs);
  if (!is_normal(g.w)) throw NotAdmissible("word is not in normal form");
  const auto& coords = t.reduce_word(g.w);
  const auto& basis = t.at(static_cast<int>(g.w.size())).basis;
  RExpr out;
  for (const auto& [i, c] : coords) out.axpy(c, with_lefschetz(g.lef, basis[i], g.logs));
  return out;
}

RExpr reduce(const MotivicExpr& x, const RelationTable& t) {
  RExpr out;
  for (const auto& [g, c] : x) out.axpy(c, reduce(g, t));
  return out;
}

RExpr operator*(const RExpr& a, const RExpr& b) {
  RExpr out;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) {
      Monomial m = ka.mono;
      m.insert(m.end(), kb.mono.begin(), kb.mono.end());
      std::vector<int> logs = ka.logs;
      logs.insert(logs.end(), kb.logs.begin(), kb.logs.end());
      out.axpy(ca * cb, with_lefschetz(ka.lef + kb.lef, std::move(m), std::move(logs)));
    }
  }
  return out;
}

MotivicExpr to_motivic(const RKey& k) {
  MotivicExpr out = to_motivic(k.mono);
  if (k.lef) out = out * lefschetz(k.lef);
  for (int p : k.logs) out = out * log_of(p);
  return out;
}

MotivicExpr to_motivic(const RExpr& x) {
  MotivicExpr out;
  for (const auto& [k, c] : x) out.axpy(c, to_motivic(k));
  return out;
}

std::string to_string(const RKey& k) {
  std::vector<std::string> f;
  if (k.lef == 1) f.push_back("L");
  if (k.lef > 1) f.push_back("L^" + std::to_string(k.lef));
  if (!k.mono.empty()) f.push_back(to_string(k.mono));
  for (std::size_t i = 0; i < k.logs.size();) {
    std::size_t j = i;
    while (j < k.logs.size() && k.logs[j] == k.logs[i]) ++j;
    std::string s = "log(" + std::to_string(k.logs[i]) + ")";
    if (j - i > 1) s += "^" + std::to_string(j - i);
    f.push_back(s);
    i = j;
  }
  std::string s;
  for (const auto& x : f) s += (s.empty() ? "" : "*") + x;
  return s.empty() ? "1" : s;
}

std::string to_string(const RExpr& x) {
  if (x.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : x) {
    std::string body = to_string(k);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    Rat a = abs(c);
    if (body == "1") {
      out += to_string(a);
    } else if (a == 1) {
      out += body;
    } else {
      out += to_string(a) + "*" + body;
    }
  }
  return out;
}

}  // namespace periods
