#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "periods/lincomb.hpp"
#include "periods/motivic.hpp"

namespace periods {

// Partial-fraction basis of Q[x, 1/(x - p)]: x^n (n >= 0) or (x - p)^-k.
struct PFKey {
  bool pole = false;
  Rat p = 0;
  int k = 0;
  bool is_one() const { return !pole && k == 0; }
  friend bool operator==(const PFKey& a, const PFKey& b) {
    return a.pole == b.pole && a.k == b.k && a.p == b.p;
  }
  friend bool operator<(const PFKey& a, const PFKey& b);
};

using Func = LinComb<PFKey>;

// Function coefficient times a sorted exterior monomial in generator ids.
struct FormKey {
  PFKey f;
  std::vector<int> gens;
  friend bool operator==(const FormKey&, const FormKey&) = default;
  friend bool operator<(const FormKey& a, const FormKey& b);
};

using Form = LinComb<FormKey>;

// Graded-commutative algebra: functions of one coordinate x (poles at the
// declared points) tensored with generators of degree 1 or 2. Generator 0 is
// dx when a coordinate exists. Undeclared differentials are zero and
// undeclared wedges stay formal.
class DGA {
 public:
  DGA() = default;
  static DGA p1minus(const std::vector<Rat>& points);

  void set_coordinate(const std::vector<Rat>& points);
  int add_generator(const std::string& name, int degree);
  void set_d(const std::string& name, const Form& value);
  void set_wedge(const std::string& a, const std::string& b, const Form& value);

  bool has_coordinate() const { return coordinate_; }
  const std::vector<Rat>& points() const { return points_; }
  int generator(const std::string& name) const;  // throws UnknownGenerator
  const std::string& generator_name(int id) const { return names_.at(id); }
  int generator_degree(int id) const { return degrees_.at(id); }
  int generator_count() const { return static_cast<int>(names_.size()); }

  int degree(const FormKey& k) const;
  Form gen(const std::string& name) const;
  Form func(const Func& f) const;
  Form constant(const Rat& c) const;

  Form mul(const Form& a, const Form& b) const;
  Form d(const Form& a) const;
  Func func_mul(const Func& a, const Func& b) const;
  Func derivative(const Func& a) const;

  // Form-polynomial grammar: numbers, x, dx, generator names, + - * / ^ and
  // parentheses. Division and negative powers need an invertible function.
  Form parse(const std::string& text) const;

  std::string to_string(const FormKey& k) const;
  std::string to_string(const Form& a) const;
  std::string func_to_string(const PFKey& k) const;

  // de Rham class of a one-form on the basis {dlog(x - p)} plus closed
  // constant-coefficient generators; nullopt when not computable here.
  std::optional<LinComb<std::string>> class_of(const FormKey& k) const;
  std::optional<LinComb<std::string>> class_of(const Form& a) const;
  // True when the two-form is d of a one-form (bounded search).
  bool is_exact(const Form& two_form) const;

 private:
  Form mul_keys(const FormKey& a, const FormKey& b) const;
  Form rewrite(const Rat& c, const PFKey& f, std::vector<int> gens) const;

  bool coordinate_ = false;
  std::vector<Rat> points_;
  std::vector<std::string> names_;
  std::vector<int> degrees_;
  std::map<int, Form> dtable_;
  std::map<std::pair<int, int>, Form> wedge_;
};

// Outer function coefficient times a tensor word of forms.
struct BarKey {
  PFKey coeff;
  std::vector<FormKey> slots;
  friend bool operator==(const BarKey&, const BarKey&) = default;
  friend bool operator<(const BarKey& a, const BarKey& b);
};

using BarElem = LinComb<BarKey>;

int bar_degree(const DGA& dga, const BarKey& k);
BarElem bar_word(const DGA& dga, const std::vector<Form>& slots);
BarElem bar_d(const DGA& dga, const BarElem& b);
BarElem bar_shuffle(const DGA& dga, const BarElem& a, const BarElem& b);
std::string to_string(const DGA& dga, const BarElem& b);

using FormMatrix = std::vector<std::vector<Form>>;
using FuncVector = std::vector<Func>;

struct ConnectionData {
  DGA dga;
  FormMatrix n;
  std::vector<int> levels;  // filtration level of each basis vector
  FuncVector covector;
  FuncVector vector;
};

struct IntegrabilityResult {
  bool pass = true;
  int row = -1, col = -1;
  Form witness;
};

IntegrabilityResult check_integrability(const ConnectionData& c);
// Sum over k of <f, N^k w>; throws NotIntegrable, BasisMismatch.
BarElem smb(const ConnectionData& c, const FuncVector& f, const FuncVector& w);
BarElem smb(const ConnectionData& c);

// Gauge change by an invertible unipotent function matrix P (columns are new
// basis vectors): N' = P^-1 (N P + dP), covector f P, vector P^-1 w.
ConnectionData change_basis(const ConnectionData& c,
                            const std::vector<std::vector<Func>>& p);

enum class Verdict { Equal, Distinct, Inconclusive };

struct EqualModR {
  Verdict verdict = Verdict::Inconclusive;
  BarElem preimage;  // a - b = d(preimage) when Equal
};

EqualModR equal_mod_R(const DGA& dga, const BarElem& a, const BarElem& b,
                      const std::vector<Form>& hints = {});

using ClassWord = std::vector<std::string>;
using CmbElem = LinComb<std::pair<PFKey, ClassWord>>;

struct KernelCheck {
  bool pass = true;
  std::string witness;
};

CmbElem cmb(const ConnectionData& c, const FuncVector& f, const FuncVector& w,
            int n);
// Wedge-insertion map at every adjacent slot, using any representatives.
KernelCheck cmb_kernel_check(const DGA& dga, const BarElem& top);
std::string to_string(const DGA& dga, const CmbElem& x);

// KZ connection on words over {e0, e1} of length <= n; e0 = dx/x and
// e1 = dx/(1 - x).
ConnectionData kz_connection(int n);
Form kz_form(const DGA& dga, int letter);
// smb of Li_w, with w a word over {0, 1} naming e0, e1.
BarElem smb_li(const Word& w);

// Family coaction of I(0; a; x) on P1 minus {0, 1, infinity}. A key is
// L^lef * I(0; mzv; 1) * I(0; li; x).
struct FamKey {
  int lef = 0;
  Word mzv;
  Word li;
  friend bool operator==(const FamKey&, const FamKey&) = default;
  friend auto operator<=>(const FamKey&, const FamKey&) = default;
};

using FamExpr = LinComb<FamKey>;
using FamTensor = LinComb<std::pair<FamKey, FamKey>>;

// Li_w(x) = (-1)^{#e1} I(0; w; x) with letters read as a-letters.
FamExpr li_family(const Word& w);
FamTensor family_coaction(const FamExpr& x);
std::string to_string(const FamKey& k, Rat* coeff_sign = nullptr);
std::string to_string(const FamExpr& x);
std::string to_string(const FamTensor& t);

// (ev_t x smb) of the family coaction; base is 0 or 1 (tangential).
using PointSymbol = LinComb<std::pair<Gen, BarKey>>;
PointSymbol smb_at_point(const FamExpr& x, int base);
PointSymbol smb_at_point(const MotivicExpr& constant, int base);
std::string to_string(const DGA& dga, const PointSymbol& s);

// Connection files.
ConnectionData connection_from_json(const std::string& text);
std::string connection_to_json(const ConnectionData& c);
// The two-form example: e0, e1, e2 with N = [[0, w1, w12], [0, 0, w2], 0],
// dw12 = -w1 w2 on a coordinate with points {0, 1}.
ConnectionData example_connection();

}  // namespace periods
