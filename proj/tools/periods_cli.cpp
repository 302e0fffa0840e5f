#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "periods/derivations.hpp"
#include "periods/errors.hpp"
#include "periods/falphabet.hpp"
#include "periods/numerics.hpp"
#include "periods/parse.hpp"
#include "periods/period_matrix.hpp"
#include "periods/relations.hpp"
#include "periods/symbol.hpp"

using nlohmann::json;
using namespace periods;

namespace {

struct Globals {
  int prec = 30;
  int weight_limit = kMaxTableWeight;
  std::string table;
  bool json = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Globals& g, const std::string& command, const std::string& input,
          const json& result, const std::string& text) {
  if (g.json) {
    json out{{"command", command}, {"input", input}, {"result", result}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text << "\n";
  }
}

RelationTable table_for(const Globals& g, const MotivicExpr& x) {
  int w = std::max(2, max_weight(x));
  if (w > g.weight_limit)
    throw WeightTooLarge("weight " + std::to_string(w) + " exceeds the limit " +
                         std::to_string(g.weight_limit));
  // A .json path names one table file that must exist and cover the weight;
  // anything else is a cache directory.
  const std::string& path = g.table;
  if (path.size() > 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    if (!std::filesystem::is_regular_file(path)) throw MissingRelationTable(path);
    RelationTable t;
    try {
      t = load_table(path);
    } catch (const CacheError& e) {
      throw MissingRelationTable(path + ": " + e.what());
    }
    if (t.max_weight < w)
      throw MissingRelationTable(path + " stops at weight " + std::to_string(t.max_weight));
    return t;
  }
  return load_or_datamine(w, path.empty() ? default_table_dir() : path);
}

ConnectionData load_connection(const std::string& file, const std::string& builtin) {
  if (!file.empty()) return connection_from_json(read_file(file));
  if (builtin == "example") return example_connection();
  if (builtin.rfind("kz", 0) == 0) {
    int n = builtin.size() > 2 ? std::stoi(builtin.substr(2)) : 2;
    return kz_connection(n);
  }
  throw ParseError("give --file or --builtin example|kzN");
}

Word li_word(const std::string& tag) {
  std::string t = tag;
  if (t.rfind("li", 0) == 0 || t.rfind("Li", 0) == 0) t = t.substr(2);
  Word w;
  if (!t.empty() && t.find_first_not_of("0123456789") == std::string::npos) {
    int n = std::stoi(t);
    if (n < 1 || n > 10) throw ParseError("Li index must lie in 1..10");
    w.assign(n, 0);
    w[0] = 1;
    return w;
  }
  // Explicit word: "1 0 0" or "e1 e0 e0".
  std::stringstream ss(t);
  std::string tok;
  while (ss >> tok) {
    if (tok == "e0" || tok == "0") {
      w.push_back(0);
    } else if (tok == "e1" || tok == "1") {
      w.push_back(1);
    } else {
      throw ParseError("bad Li word letter '" + tok + "'");
    }
  }
  if (w.empty()) throw ParseError("empty Li word");
  return w;
}

json matrix_json(const SymMatrix& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& e : row) r.push_back(to_string(e));
    out.push_back(r);
  }
  return out;
}

int run(int argc, char** argv) {
  Globals g;
  CLI::App app{"Motivic periods, coactions and symbols"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--prec", g.prec, "decimal digits for numerics")->check(CLI::Range(5, kMaxPrec));
  app.add_option("--weight-limit", g.weight_limit, "largest weight for relation tables")
      ->check(CLI::Range(2, kMaxTableWeight));
  app.add_option("--table", g.table, "relation table directory (env PERIODS_TABLE_DIR)");
  app.add_flag("--json", g.json, "machine-readable output");

  // relations
  auto* rel = app.add_subcommand("relations", "relation tables");
  rel->require_subcommand(1);
  int dm_weight = 8;
  auto* dm = rel->add_subcommand("datamine", "datamine and cache a relation table");
  dm->add_option("--weight", dm_weight, "maximal weight")->check(CLI::Range(2, kMaxTableWeight));
  dm->callback([&] {
    auto t0 = std::chrono::steady_clock::now();
    RelationTable t = datamine(dm_weight);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string dir = g.table.empty() ? default_table_dir() : g.table;
    bool is_file = dir.size() > 5 && dir.compare(dir.size() - 5, 5, ".json") == 0;
    std::string path = is_file ? dir
                               : dir + "/relations-w" + std::to_string(dm_weight) + "-v" +
                                     std::to_string(kTableFormatVersion) + ".json";
    save_table(t, path);
    json weights = json::array();
    std::string text;
    for (int w = 2; w <= t.max_weight; ++w) {
      const auto& wt = t.at(w);
      json basis = json::array();
      std::string names;
      for (const auto& m : wt.basis) {
        basis.push_back(to_string(m));
        names += (names.empty() ? "" : ", ") + to_string(m);
      }
      weights.push_back({{"weight", w},
                         {"dimension", wt.basis.size()},
                         {"basis", basis},
                         {"relations", wt.relations.size()},
                         {"fallback", wt.fallback}});
      text += "weight " + std::to_string(w) + ": dim " + std::to_string(wt.basis.size()) +
              "  [" + names + "]\n";
    }
    text += "saved " + path;
    emit(g, "relations datamine", std::to_string(dm_weight),
         json{{"weights", weights}, {"path", path}, {"seconds", secs}}, text);
  });

  // mzv
  auto* mzv = app.add_subcommand("mzv", "motivic multiple zeta values");
  mzv->require_subcommand(1);
  std::string expr;
  bool reduced = false, unip = false, lform = false;
  auto add_expr = [&](CLI::App* sub) { sub->add_option("expr", expr, "expression")->required(); };

  auto* red = mzv->add_subcommand("reduce", "reduce to the basis");
  add_expr(red);
  red->callback([&] {
    MotivicExpr x = parse_motivic(expr);
    std::string r = to_string(reduce(x, table_for(g, x)));
    emit(g, "mzv reduce", expr, r, r);
  });

  auto* coa = mzv->add_subcommand("coaction", "motivic coaction");
  add_expr(coa);
  coa->add_flag("--reduced", reduced, "reduce both factors to the basis");
  coa->add_flag("--unipotent", unip, "set L^dr to 1 (with --reduced)");
  coa->callback([&] {
    MotivicExpr x = parse_motivic(expr);
    std::string r;
    if (reduced) {
      RelationTable t = table_for(g, x);
      r = to_string(reduced_coaction(reduce(x, t), t, unip));
    } else {
      r = to_string(coaction(x));
    }
    emit(g, "mzv coaction", expr, r, r);
  });

  auto* dec = mzv->add_subcommand("decompose", "f-alphabet decomposition");
  add_expr(dec);
  dec->add_flag("--l-form", lform, "print f2 powers as powers of L");
  dec->callback([&] {
    MotivicExpr x = parse_motivic(expr);
    std::string r = to_string(decompose(x, table_for(g, x)), lform);
    emit(g, "mzv decompose", expr, r, r);
  });

  auto* ud = mzv->add_subcommand("ud", "unipotency degree");
  add_expr(ud);
  ud->callback([&] {
    MotivicExpr x = parse_motivic(expr);
    int d = unipotency_degree(x, table_for(g, x));
    emit(g, "mzv ud", expr, d, std::to_string(d));
  });

  auto* conj = mzv->add_subcommand("conjugates", "Galois conjugates");
  add_expr(conj);
  conj->callback([&] {
    MotivicExpr x = parse_motivic(expr);
    Conjugates c = galois_conjugates(x, table_for(g, x));
    json basis = json::array();
    std::string text;
    for (const auto& b : c.basis) {
      basis.push_back(to_string(b));
      text += to_string(b) + "\n";
    }
    json hodge = json::object();
    for (const auto& [p, h] : c.hodge) hodge[std::to_string(p)] = h;
    text += "rank " + std::to_string(c.basis.size());
    emit(g, "mzv conjugates", expr, json{{"basis", basis}, {"rank", c.basis.size()}, {"hodge", hodge}},
         text);
  });

  auto* ev = mzv->add_subcommand("eval", "numerical period");
  add_expr(ev);
  ev->callback([&] {
    MotivicExpr x = parse_motivic(expr);
    BigComplex v = per_eval(x, g.prec);
    BigFloat bound = tail_bound(v.norm(), g.prec);
    std::string val = v.to_string(g.prec);
    std::string b = bound.to_string(3);
    emit(g, "mzv eval", expr, json{{"value", val}, {"bound", b}, {"prec", g.prec}},
         val + " ± " + b);
  });

  // pm
  auto* pm = app.add_subcommand("pm", "period matrices");
  pm->require_subcommand(1);
  std::string kind, param, pm_file;
  int gamma = 0;
  auto add_kind = [&](CLI::App* sub) {
    sub->add_option("kind", kind, "lefschetz | kummer | zeta | dilog | polylog_tower");
    sub->add_option("param", param, "kind parameter");
    sub->add_option("--file", pm_file, "matrix JSON file");
  };
  auto load_pm = [&] {
    if (!pm_file.empty()) return matrix_from_json(read_file(pm_file));
    if (kind.empty()) throw ParseError("give a kind or --file");
    try {
      return build(kind, param);
    } catch (const std::logic_error&) {
      throw ParseError("bad parameter '" + param + "'");
    }
  };
  auto* sv = pm->add_subcommand("sv", "single-valued matrix");
  add_kind(sv);
  sv->callback([&] {
    PeriodMatrix m = single_valued(load_pm());
    emit(g, "pm sv", kind + " " + param, matrix_json(m.entries), matrix_to_string(m.entries));
  });
  auto* svt = pm->add_subcommand("sv-twisted", "twisted single-valued matrix");
  add_kind(svt);
  svt->callback([&] {
    PeriodMatrix m = single_valued_twisted(load_pm());
    emit(g, "pm sv-twisted", kind + " " + param, matrix_json(m.entries),
         matrix_to_string(m.entries));
  });
  auto* inv = pm->add_subcommand("invariants", "Hodge polynomial, rank, determinant");
  add_kind(inv);
  inv->callback([&] {
    Invariants i = invariants(load_pm());
    emit(g, "pm invariants", kind + " " + param,
         json{{"hodge_polynomial", i.hodge_poly}, {"rank", i.rank}, {"det", to_string(i.det)}},
         "hodge " + i.hodge_poly + "\nrank " + std::to_string(i.rank) + "\ndet " +
             to_string(i.det));
  });
  auto* mono = pm->add_subcommand("monodromy", "apply a local monodromy of the dilog tower");
  add_kind(mono);
  mono->add_option("--gamma", gamma, "loop around 0 or 1")->check(CLI::IsMember({0, 1}));
  mono->callback([&] {
    PeriodMatrix m = load_pm();
    if (m.size() != 3) throw ParseError("monodromy is defined for the dilog tower");
    RatMatrix rho = gamma == 0 ? RatMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}
                               : RatMatrix{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}};
    PeriodMatrix moved = monodromy_apply(rho, m);
    bool same = single_valued(moved).entries == single_valued(m).entries;
    emit(g, "pm monodromy", kind + " " + param,
         json{{"matrix", matrix_json(moved.entries)}, {"sv_invariant", same}},
         matrix_to_string(moved.entries) + "\nsv invariant: " + (same ? "yes" : "no"));
  });

  // symbol
  auto* sym = app.add_subcommand("symbol", "symbols of unipotent connections");
  sym->require_subcommand(1);
  std::string cfile, builtin;
  int row = -1, col = -1, length = 2, base = 0;
  std::string li_tag;
  auto add_conn = [&](CLI::App* sub) {
    sub->add_option("--file", cfile, "connection JSON file");
    sub->add_option("--builtin", builtin, "example | kzN");
  };
  auto vectors = [&](const ConnectionData& c) {
    FuncVector f = c.covector, w = c.vector;
    const std::size_t r = c.n.size();
    if (row >= 0) {
      if (static_cast<std::size_t>(row) >= r) throw ParseError("row out of range");
      f.assign(r, Func());
      f[row] = Func(PFKey{});
    }
    if (col >= 0) {
      if (static_cast<std::size_t>(col) >= r) throw ParseError("col out of range");
      w.assign(r, Func());
      w[col] = Func(PFKey{});
    }
    return std::make_pair(f, w);
  };
  auto* chk = sym->add_subcommand("check", "integrability dN + N^N = 0");
  add_conn(chk);
  chk->callback([&] {
    ConnectionData c = load_connection(cfile, builtin);
    auto r = check_integrability(c);
    json res{{"pass", r.pass}};
    std::string text = "pass";
    if (!r.pass) {
      res["row"] = r.row;
      res["col"] = r.col;
      res["witness"] = c.dga.to_string(r.witness);
      text = "fail at (" + std::to_string(r.row) + "," + std::to_string(r.col) +
             "): " + c.dga.to_string(r.witness);
    }
    emit(g, "symbol check", cfile.empty() ? builtin : cfile, res, text);
  });
  auto* sm = sym->add_subcommand("smb", "symbol <f, N^k w>");
  add_conn(sm);
  sm->add_option("--row", row, "covector index");
  sm->add_option("--col", col, "vector index");
  sm->callback([&] {
    ConnectionData c = load_connection(cfile, builtin);
    auto [f, w] = vectors(c);
    std::string r = to_string(c.dga, smb(c, f, w));
    emit(g, "symbol smb", cfile.empty() ? builtin : cfile, r, r);
  });
  auto* cm = sym->add_subcommand("cmb", "cohomological symbol");
  add_conn(cm);
  cm->add_option("--row", row, "covector index");
  cm->add_option("--col", col, "vector index");
  cm->add_option("--n", length, "length");
  cm->callback([&] {
    ConnectionData c = load_connection(cfile, builtin);
    auto [f, w] = vectors(c);
    std::string r = to_string(c.dga, cmb(c, f, w, length));
    emit(g, "symbol cmb", cfile.empty() ? builtin : cfile, r, r);
  });
  auto* li = sym->add_subcommand("li", "symbol of Li_n or Li_w on the KZ connection");
  li->add_option("word", li_tag, "n, or a word such as \"e1 e0 e1\"")->required();
  li->callback([&] {
    Word w = li_word(li_tag);
    DGA dga = DGA::p1minus({0, 1});
    std::string r = to_string(dga, smb_li(w));
    emit(g, "symbol li", li_tag, r, r);
  });
  auto* ap = sym->add_subcommand("at-point", "symbol based at a tangential point");
  ap->add_option("family", li_tag, "liN, an Li word, or a constant expression")->required();
  ap->add_option("--base", base, "0 or 1")->required();
  ap->callback([&] {
    DGA dga = DGA::p1minus({0, 1});
    PointSymbol s;
    bool is_li = li_tag.rfind("li", 0) == 0 || li_tag.rfind("Li", 0) == 0;
    if (is_li) {
      s = smb_at_point(li_family(li_word(li_tag)), base);
    } else {
      s = smb_at_point(parse_motivic(li_tag), base);
    }
    std::string r = to_string(dga, s);
    emit(g, "symbol at-point", li_tag, r, r);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const TableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
