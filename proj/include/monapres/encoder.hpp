#pragma once

// Diophantine equations h(x1..xn) = 0 as existential formulas over Z^2 with at most
// four bound variables t0..t3.
//
// Multiplication goes through 4xy = (x+y)^2 - (x-y)^2, and "w = T^2" is written as the
// chain Z^2(w + 2iT + i^2), i = 0..M-1.  That step is an equivalence only when every run of
// M squares with second difference 2 is a run of consecutive squares.  Four is too few
// (see the tests); the default is 5 and `chain_length` raises it.

#include "formula.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace monapres::encoder {

// ---------------------------------------------------------------------------
// polynomials

struct MultiPoly {
  std::size_t n{1};
  std::map<std::vector<unsigned>, Int> terms;  // exponent vector -> coefficient, no zeros

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms) {
      unsigned s = 0;
      for (auto k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  void add(std::vector<unsigned> e, const Int& c) {
    e.resize(n, 0);
    Int& slot = terms[e];
    slot += c;
    if (slot == 0) terms.erase(e);
  }

  Int eval(const std::vector<Int>& x) const {
    Int s = 0;
    for (const auto& [e, c] : terms) {
      Int m = c;
      for (std::size_t i = 0; i < n; ++i)
        for (unsigned k = 0; k < e[i]; ++k) m *= x[i];
      s += m;
    }
    return s;
  }

  std::string str() const;
};

namespace detail {

using monapres::detail::head;
using monapres::detail::is_int_token;
using monapres::detail::is_ident;
using monapres::detail::parse_int;

inline MultiPoly widen(const MultiPoly& p, std::size_t n) {
  MultiPoly q;
  q.n = std::max(p.n, n);
  for (const auto& [e, c] : p.terms) q.add(e, c);
  return q;
}

inline MultiPoly mul(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r;
  r.n = std::max(a.n, b.n);
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      std::vector<unsigned> e(r.n, 0);
      for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
      for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      r.add(e, ca * cb);
    }
  return r;
}

inline MultiPoly sum(const MultiPoly& a, const MultiPoly& b, int sign = 1) {
  MultiPoly r = widen(a, b.n);
  for (const auto& [e, c] : b.terms) r.add(e, sign > 0 ? c : Int(-c));
  return r;
}

inline MultiPoly constant(const Int& c) {
  MultiPoly p;
  p.add({0}, c);
  return p;
}

inline MultiPoly variable(std::size_t i) {
  MultiPoly p;
  p.n = i + 1;
  std::vector<unsigned> e(p.n, 0);
  e[i] = 1;
  p.add(e, 1);
  return p;
}

inline std::optional<std::size_t> var_index(const std::string& s) {
  if (s.size() < 2 || s[0] != 'x') return std::nullopt;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
  if (s[1] == '0') return std::nullopt;
  return std::stoul(s.substr(1)) - 1;
}

inline MultiPoly build(const SExpr& e) {
  if (e.atom) {
    if (is_int_token(e.text)) return constant(parse_int(e));
    if (auto i = var_index(e.text)) {
      if (*i >= 64) throw ParseError(e.line, e.col, "too many variables");
      return variable(*i);
    }
    throw ParseError(e.line, e.col, "expected x1, x2, ... or an integer, got '" + e.text + "'");
  }
  const std::string& op = head(e);
  std::size_t argc = e.items.size() - 1;
  if (op == "+" && argc >= 1) {
    MultiPoly r = build(e.items[1]);
    for (std::size_t i = 2; i < e.items.size(); ++i) r = sum(r, build(e.items[i]));
    return r;
  }
  if (op == "-" && argc == 1) return sum(constant(0), build(e.items[1]), -1);
  if (op == "-" && argc == 2) return sum(build(e.items[1]), build(e.items[2]), -1);
  if (op == "*" && argc >= 1) {
    MultiPoly r = build(e.items[1]);
    for (std::size_t i = 2; i < e.items.size(); ++i) r = mul(r, build(e.items[i]));
    return r;
  }
  if (op == "^" && argc == 2) {
    Int k = parse_int(e.items[2]);
    if (k < 0 || k > 64) throw ParseError(e.items[2].line, e.items[2].col, "exponent out of range");
    MultiPoly base = build(e.items[1]), r = constant(1);
    for (long i = 0; i < k.get_si(); ++i) r = mul(r, base);
    return r;
  }
  throw ParseError(e.line, e.col, "unknown polynomial form '" + op + "'");
}

}  // namespace detail

// Term grammar plus products of terms, (^ P k), and variables x1, x2, ...
inline MultiPoly parse_poly(const std::string& text) {
  monapres::detail::Reader rd(text);
  auto top = rd.read_all();
  if (top.size() != 1) throw ParseError(1, 1, "expected exactly one polynomial");
  MultiPoly p = detail::build(top[0]);
  if (p.terms.empty()) p.n = std::max<std::size_t>(p.n, 1);
  return p;
}

inline std::string MultiPoly::str() const {
  if (terms.empty()) return "0";
  std::vector<std::string> parts;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    std::vector<std::string> fs;
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned k = 0; k < it->first[i]; ++k) fs.push_back("x" + std::to_string(i + 1));
    if (fs.empty()) {
      parts.push_back(it->second.get_str());
      continue;
    }
    std::string m = fs.size() == 1 ? fs[0] : "(*";
    if (fs.size() > 1) {
      for (const auto& f : fs) m += " " + f;
      m += ")";
    }
    parts.push_back(it->second == 1 ? m : "(* " + it->second.get_str() + " " + m + ")");
  }
  if (parts.size() == 1) return parts[0];
  std::string s = "(+";
  for (const auto& p : parts) s += " " + p;
  return s + ")";
}

// ---------------------------------------------------------------------------
// square formulas

struct LinTerm {
  std::map<std::string, Int> coef;  // no zero entries
  Int c{0};

  static LinTerm var(const std::string& v, Int k = 1) {
    LinTerm t;
    if (k != 0) t.coef[v] = std::move(k);
    return t;
  }
  static LinTerm constant(Int k) {
    LinTerm t;
    t.c = std::move(k);
    return t;
  }
  LinTerm& add(const LinTerm& o, const Int& k = 1) {
    for (const auto& [v, a] : o.coef) {
      Int& s = coef[v];
      s += k * a;
      if (s == 0) coef.erase(v);
    }
    c += k * o.c;
    return *this;
  }
  bool operator==(const LinTerm&) const = default;

  std::string str() const {
    std::vector<std::string> parts;
    for (const auto& [v, a] : coef) parts.push_back(a == 1 ? v : "(* " + a.get_str() + " " + v + ")");
    if (c != 0 || parts.empty()) parts.push_back(c.get_str());
    if (parts.size() == 1) return parts[0];
    std::string s = "(+";
    for (const auto& p : parts) s += " " + p;
    return s + ")";
  }
};

struct SquareFormula {
  enum class Kind { And, Exists, Eq, Square };  // Eq: lin = 0, Square: Z^2(lin)
  Kind kind{Kind::And};
  std::string var;
  LinTerm lin;
  std::vector<SquareFormula> kids;

  static SquareFormula eq(LinTerm t) { return {Kind::Eq, {}, std::move(t), {}}; }
  static SquareFormula square(LinTerm t) { return {Kind::Square, {}, std::move(t), {}}; }
  static SquareFormula conj(std::vector<SquareFormula> xs) {
    std::vector<SquareFormula> flat;
    for (auto& x : xs) {
      if (x.kind != Kind::And) flat.push_back(std::move(x));
      else for (auto& k : x.kids) flat.push_back(std::move(k));
    }
    return {Kind::And, {}, {}, std::move(flat)};
  }
  static SquareFormula exists(std::string v, SquareFormula body) { return {Kind::Exists, std::move(v), {}, {std::move(body)}}; }

  std::string str() const {
    switch (kind) {
      case Kind::Eq: return "(= " + lin.str() + " 0)";
      case Kind::Square: return "(pow 2 " + lin.str() + ")";
      case Kind::Exists: return "(exists " + var + " " + kids[0].str() + ")";
      case Kind::And: {
        if (kids.size() == 1) return kids[0].str();
        std::string s = "(and";
        for (const auto& k : kids) s += " " + k.str();
        return s + ")";
      }
    }
    return "";
  }
};

inline void collect_bound(const SquareFormula& f, std::set<std::string>& out) {
  if (f.kind == SquareFormula::Kind::Exists) out.insert(f.var);
  for (const auto& k : f.kids) collect_bound(k, out);
}

inline std::set<std::string> bound_variables(const SquareFormula& f) {
  std::set<std::string> s;
  collect_bound(f, s);
  return s;
}

inline std::size_t atom_count(const SquareFormula& f) {
  if (f.kind == SquareFormula::Kind::Eq || f.kind == SquareFormula::Kind::Square) return 1;
  std::size_t n = 0;
  for (const auto& k : f.kids) n += atom_count(k);
  return n;
}

// Reads back the output of SquareFormula::str().
inline SquareFormula parse_square_formula(const std::string& text) {
  using namespace detail;
  monapres::detail::Reader rd(text);
  auto top = rd.read_all();
  if (top.size() != 1) throw ParseError(1, 1, "expected exactly one formula");
  std::function<LinTerm(const SExpr&)> lin = [&](const SExpr& e) -> LinTerm {
    if (e.atom) {
      if (is_int_token(e.text)) return LinTerm::constant(parse_int(e));
      if (is_ident(e.text)) return LinTerm::var(e.text);
      throw ParseError(e.line, e.col, "bad term '" + e.text + "'");
    }
    const std::string& op = head(e);
    if (op == "+") {
      LinTerm t;
      for (std::size_t i = 1; i < e.items.size(); ++i) t.add(lin(e.items[i]));
      return t;
    }
    if (op == "-" && e.items.size() == 2) return LinTerm().add(lin(e.items[1]), -1);
    if (op == "-" && e.items.size() == 3) return lin(e.items[1]).add(lin(e.items[2]), -1);
    if (op == "*" && e.items.size() == 3) return LinTerm().add(lin(e.items[2]), parse_int(e.items[1]));
    throw ParseError(e.line, e.col, "bad term");
  };
  std::function<SquareFormula(const SExpr&)> form = [&](const SExpr& e) -> SquareFormula {
    const std::string& op = head(e);
    if (op == "and") {
      std::vector<SquareFormula> xs;
      for (std::size_t i = 1; i < e.items.size(); ++i) xs.push_back(form(e.items[i]));
      return SquareFormula::conj(std::move(xs));
    }
    if (op == "exists" && e.items.size() == 3 && e.items[1].atom) return SquareFormula::exists(e.items[1].text, form(e.items[2]));
    if (op == "=" && e.items.size() == 3) return SquareFormula::eq(lin(e.items[1]).add(lin(e.items[2]), -1));
    if (op == "pow" && e.items.size() == 3 && parse_int(e.items[1]) == 2) return SquareFormula::square(lin(e.items[2]));
    throw ParseError(e.line, e.col, "unexpected form '" + op + "'");
  };
  return form(top[0]);
}

// ---------------------------------------------------------------------------
// encoding

struct EncodeOptions {
  unsigned chain_length{5};
};

struct Encoding {
  SquareFormula formula;
  Int scale{1};  // the formula encodes scale * h = 0
};

namespace detail {

inline const char* kVars[] = {"t0", "t1", "t2", "t3"};

inline std::string xname(std::size_t i) { return "x" + std::to_string(i + 1); }

// Two of t0..t3 not in `busy`, lowest first.
inline std::pair<std::string, std::string> fresh_pair(const std::set<std::string>& busy) {
  std::vector<std::string> free;
  for (const char* v : kVars)
    if (!busy.count(v)) free.push_back(v);
  return {free.at(0), free.at(1)};
}

inline SquareFormula chain(const std::string& w, const LinTerm& T, unsigned M) {
  std::vector<SquareFormula> xs;
  for (unsigned i = 0; i < M; ++i) {
    LinTerm a = LinTerm::var(w);
    a.add(T, 2 * i);
    a.c += i * i;
    xs.push_back(SquareFormula::square(a));
  }
  return SquareFormula::conj(std::move(xs));
}

// w = (sign * x_j + k * prod(rest))^2, with 4^(|rest| - 1) dividing k
inline SquareFormula square_of(const std::string& w, int sign, std::size_t j, const Int& k, std::vector<std::size_t> rest, unsigned M) {
  LinTerm T = LinTerm::var(xname(j), sign);
  if (rest.size() == 1) {
    T.add(LinTerm::var(xname(rest[0]), k));
    return chain(w, T, M);
  }
  auto [p, q] = fresh_pair({w});
  T.add(LinTerm::var(p)).add(LinTerm::var(q), -1);
  std::size_t head = rest.front();
  rest.erase(rest.begin());
  Int k4 = k / 4;
  SquareFormula body = SquareFormula::conj({chain(w, T, M), square_of(p, 1, head, k4, rest, M), square_of(q, -1, head, k4, rest, M)});
  return SquareFormula::exists(p, SquareFormula::exists(q, std::move(body)));
}

// A = k * prod(factors), degree >= 2
inline SquareFormula monomial_eq(const LinTerm& A, const Int& k, std::vector<std::size_t> factors, const std::set<std::string>& busy, unsigned M) {
  auto [u, v] = fresh_pair(busy);
  LinTerm e = A;
  e.add(LinTerm::var(u), -1).add(LinTerm::var(v));
  std::size_t head = factors.front();
  factors.erase(factors.begin());
  Int k4 = k / 4;
  SquareFormula body = SquareFormula::conj({SquareFormula::eq(e), square_of(u, 1, head, k4, factors, M), square_of(v, -1, head, k4, factors, M)});
  return SquareFormula::exists(u, SquareFormula::exists(v, std::move(body)));
}

struct Monomial {
  Int k;
  std::vector<std::size_t> factors;
};

}  // namespace detail

inline Encoding encode(const MultiPoly& h, const EncodeOptions& opt = {}) {
  using namespace detail;
  unsigned D = h.degree();
  Encoding out;
  out.scale = D >= 2 ? ipow(Int(4), D - 1) : Int(1);

  LinTerm A;  // minus the linear part
  std::vector<std::pair<std::vector<unsigned>, Int>> nonlinear;
  for (const auto& [e, c] : h.terms) {
    unsigned d = 0;
    for (auto x : e) d += x;
    Int k = c * out.scale;
    if (d >= 2) {
      nonlinear.push_back({e, k});
      continue;
    }
    if (d == 0) A.c -= k;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) A.add(LinTerm::var(xname(i)), -k);
  }
  // graded-lex, highest first
  std::sort(nonlinear.begin(), nonlinear.end(), [](const auto& a, const auto& b) {
    unsigned da = 0, db = 0;
    for (auto x : a.first) da += x;
    for (auto x : b.first) db += x;
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::vector<Monomial> ms;
  for (const auto& [e, k] : nonlinear) {
    Monomial m{k, {}};
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned r = 0; r < e[i]; ++r) m.factors.push_back(i);
    ms.push_back(std::move(m));
  }
  if (ms.empty()) {
    out.formula = SquareFormula::eq(LinTerm().add(A, -1));
    return out;
  }

  // A = m_r + ... + m_last, peeled innermost-first with t0/t1 alternating
  std::function<SquareFormula(const LinTerm&, std::size_t, std::set<std::string>, int)> peel =
      [&](const LinTerm& lhs, std::size_t r, std::set<std::string> busy, int b) -> SquareFormula {
    if (r + 1 == ms.size()) return monomial_eq(lhs, ms[r].k, ms[r].factors, busy, opt.chain_length);
    std::string t = kVars[b];
    LinTerm first = lhs;
    first.add(LinTerm::var(t), -1);
    std::set<std::string> both = busy;
    both.insert(t);
    SquareFormula head = monomial_eq(first, ms[r].k, ms[r].factors, both, opt.chain_length);
    SquareFormula tail = peel(LinTerm::var(t), r + 1, {t}, 1 - b);
    return SquareFormula::exists(t, SquareFormula::conj({std::move(head), std::move(tail)}));
  };
  out.formula = peel(A, 0, {}, 0);
  return out;
}

// ---------------------------------------------------------------------------
// evaluation and grid equivalence

inline bool chain_holds(std::int64_t w, std::int64_t T, unsigned M = 5) {
  for (unsigned i = 0; i < M; ++i) {
    __int128 v = static_cast<__int128>(w) + 2 * static_cast<__int128>(i) * T + static_cast<__int128>(i) * i;
    if (v < 0) return false;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
    while (static_cast<__int128>(r) * r > v) --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= v) ++r;
    if (static_cast<__int128>(r) * r != v) return false;
  }
  return true;
}

struct EquivReport {
  bool pass{true};
  bool inconclusive{false};  // a point needed a search that ran past its budget
  std::vector<std::int64_t> counterexample;
  bool h_zero{false}, formula_true{false};
  std::uint64_t points{0};
};

namespace detail {

using i128 = __int128;

// The formula flattened to a conjunction over renamed bound variables.
struct Row {
  std::vector<std::pair<std::size_t, std::int64_t>> x;  // free variables
  std::vector<std::pair<std::size_t, std::int64_t>> y;  // bound variables
  std::int64_t c{0};
};

struct Flat {
  std::size_t nx{0}, ny{0};
  std::vector<Row> eqs, squares;
  struct Chain {
    std::size_t w;  // square row index of the i = 0 member
    Row T;
  };
  std::vector<Chain> chains;
};

inline Row to_row(const LinTerm& t, const std::map<std::string, std::size_t>& scope, std::size_t nx) {
  Row r;
  if (!t.c.fits_slong_p()) throw std::overflow_error("coefficient too large");
  r.c = t.c.get_si();
  for (const auto& [v, a] : t.coef) {
    if (!a.fits_slong_p()) throw std::overflow_error("coefficient too large");
    auto it = scope.find(v);
    if (it != scope.end()) {
      r.y.push_back({it->second, a.get_si()});
      continue;
    }
    auto xi = var_index(v);
    if (!xi || *xi >= nx) throw std::invalid_argument("free variable " + v + " outside x1..x" + std::to_string(nx));
    r.x.push_back({*xi, a.get_si()});
  }
  return r;
}

inline void flatten(const SquareFormula& f, std::map<std::string, std::size_t> scope, Flat& out) {
  using K = SquareFormula::Kind;
  switch (f.kind) {
    case K::Exists:
      scope[f.var] = out.ny++;
      flatten(f.kids[0], scope, out);
      return;
    case K::And:
      for (const auto& k : f.kids) flatten(k, scope, out);
      return;
    case K::Eq: out.eqs.push_back(to_row(f.lin, scope, out.nx)); return;
    case K::Square: out.squares.push_back(to_row(f.lin, scope, out.nx)); return;
  }
}

inline bool same_row(const Row& a, const Row& b) {
  auto norm = [](Row r) {
    std::sort(r.x.begin(), r.x.end());
    std::sort(r.y.begin(), r.y.end());
    return r;
  };
  Row p = norm(a), q = norm(b);
  return p.x == q.x && p.y == q.y && p.c == q.c;
}

inline Row combine(const Row& a, std::int64_t ka, const Row& b, std::int64_t kb) {
  std::map<std::size_t, std::int64_t> x, y;
  for (auto [i, v] : a.x) x[i] += ka * v;
  for (auto [i, v] : b.x) x[i] += kb * v;
  for (auto [i, v] : a.y) y[i] += ka * v;
  for (auto [i, v] : b.y) y[i] += kb * v;
  Row r;
  for (auto [i, v] : x)
    if (v) r.x.push_back({i, v});
  for (auto [i, v] : y)
    if (v) r.y.push_back({i, v});
  r.c = ka * a.c + kb * b.c;
  return r;
}

// Groups Z^2(w + 2iT + i^2), i < M, found among the square atoms.
inline void find_chains(Flat& f, unsigned M) {
  for (std::size_t a = 0; a < f.squares.size(); ++a)
    for (std::size_t b = 0; b < f.squares.size(); ++b) {
      if (a == b) continue;
      Row d = combine(f.squares[b], 1, f.squares[a], -1);
      d.c -= 1;
      bool even = d.c % 2 == 0;
      for (auto& [i, v] : d.x) even = even && v % 2 == 0;
      for (auto& [i, v] : d.y) even = even && v % 2 == 0;
      if (!even) continue;
      Row T = d;
      T.c /= 2;
      for (auto& [i, v] : T.x) v /= 2;
      for (auto& [i, v] : T.y) v /= 2;
      bool all = true;
      for (unsigned i = 2; i < M && all; ++i) {
        Row want = combine(f.squares[a], 1, T, 2 * static_cast<std::int64_t>(i));
        want.c += static_cast<std::int64_t>(i) * i;
        bool found = false;
        for (const auto& s : f.squares) found = found || same_row(s, want);
        all = found;
      }
      if (all) f.chains.push_back({a, T});
    }
}

class Checker {
 public:
  Checker(const SquareFormula& f, std::size_t nx, std::int64_t window, unsigned M, std::uint64_t budget)
      : window_(window), budget_(budget) {
    flat_.nx = nx;
    flatten(f, {}, flat_);
    find_chains(flat_, M);
    plan();
  }

  // nullopt when the search budget ran out
  std::optional<bool> holds(const std::vector<std::int64_t>& x) {
    x_ = x;
    spent_ = 0;
    std::vector<std::optional<std::int64_t>> y(flat_.ny);
    for (const auto& st : steps_)
      if (!solve(st.chain ? &flat_.chains[st.row] : nullptr, st.chain ? flat_.squares[flat_.chains[st.row].w] : flat_.eqs[st.row], y))
        return false;
    if (complete_) return check_all(y);
    try {
      return search(y);
    } catch (const Budget&) {
      return std::nullopt;
    }
  }

 private:
  struct Budget {};
  struct Step {
    bool chain;
    std::size_t row;
  };
  Flat flat_;
  std::vector<Step> steps_;
  bool complete_{false};
  std::vector<std::int64_t> x_;
  std::int64_t window_;
  std::uint64_t budget_, spent_{0};

  // Which bound variables follow from equations and chains alone; independent of x.
  void plan() {
    std::vector<bool> known(flat_.ny, false);
    auto open = [&](const Row& r, std::size_t& w) {
      int u = 0;
      for (auto [i, v] : r.y)
        if (!known[i]) {
          ++u;
          w = i;
        }
      return u;
    };
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < flat_.eqs.size(); ++i) {
        std::size_t w;
        if (open(flat_.eqs[i], w) == 1) {
          known[w] = true;
          steps_.push_back({false, i});
          changed = true;
        }
      }
      for (std::size_t i = 0; i < flat_.chains.size(); ++i) {
        std::size_t w, t;
        if (open(flat_.chains[i].T, t) == 0 && open(flat_.squares[flat_.chains[i].w], w) == 1) {
          known[w] = true;
          steps_.push_back({true, i});
          changed = true;
        }
      }
    }
    complete_ = std::all_of(known.begin(), known.end(), [](bool b) { return b; });
  }

  i128 known_part(const Row& r, const std::vector<std::optional<std::int64_t>>& y, int& unknowns, std::size_t& which, std::int64_t& coef) const {
    i128 s = r.c;
    for (auto [i, v] : r.x) s += static_cast<i128>(v) * x_[i];
    unknowns = 0;
    for (auto [i, v] : r.y) {
      if (y[i]) {
        s += static_cast<i128>(v) * *y[i];
      } else {
        ++unknowns;
        which = i;
        coef = v;
      }
    }
    return s;
  }

  static bool is_sq(i128 v) {
    if (v < 0) return false;
    auto r = static_cast<i128>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r * r == v;
  }

  static bool fits(i128 v) { return v >= INT64_MIN / 4 && v <= INT64_MAX / 4; }

  // Fixes the single unknown of `r`: r = 0, or r = T^2 for a chain.
  bool solve(const Flat::Chain* ch, const Row& r, std::vector<std::optional<std::int64_t>>& y) const {
    int u, ut;
    std::size_t w = 0, wt = 0;
    std::int64_t k = 0, kt = 0;
    i128 target = 0;
    if (ch) {
      target = known_part(ch->T, y, ut, wt, kt);
      if (ut != 0) return true;
      target *= target;
    }
    i128 s = known_part(r, y, u, w, k);
    if (u == 0) return ch ? true : s == 0;
    if (u != 1) return true;
    i128 rhs = target - s;
    if (rhs % k != 0 || !fits(rhs / k)) return false;
    y[w] = static_cast<std::int64_t>(rhs / k);
    return true;
  }

  bool check_all(const std::vector<std::optional<std::int64_t>>& y) const {
    int u;
    std::size_t w;
    std::int64_t k;
    for (const auto& r : flat_.eqs)
      if (known_part(r, y, u, w, k) != 0) return false;
    for (const auto& r : flat_.squares)
      if (!is_sq(known_part(r, y, u, w, k))) return false;
    return true;
  }

  bool search(std::vector<std::optional<std::int64_t>>& y) {
    if (++spent_ > budget_) throw Budget{};
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t pass = 0; pass < 2; ++pass) {
        std::size_t count = pass == 0 ? flat_.eqs.size() : flat_.chains.size();
        for (std::size_t i = 0; i < count; ++i) {
          const Flat::Chain* ch = pass == 0 ? nullptr : &flat_.chains[i];
          const Row& r = pass == 0 ? flat_.eqs[i] : flat_.squares[ch->w];
          int u;
          std::size_t w;
          std::int64_t k;
          known_part(r, y, u, w, k);
          if (!solve(ch, r, y)) return false;
          int after;
          known_part(r, y, after, w, k);
          changed = changed || after < u;
        }
      }
      for (const auto& r : flat_.squares) {
        int u;
        std::size_t w;
        std::int64_t k;
        i128 s = known_part(r, y, u, w, k);
        if (u == 0 && !is_sq(s)) return false;
      }
    }
    // branch on an unknown pinned by a square atom
    for (const auto& r : flat_.squares) {
      int u;
      std::size_t w = 0;
      std::int64_t k = 0;
      i128 s = known_part(r, y, u, w, k);
      if (u != 1) continue;
      for (std::int64_t root = 0; root <= window_; ++root) {
        i128 v = static_cast<i128>(root) * root - s;
        if (v % k != 0 || !fits(v / k)) continue;
        auto copy = y;
        copy[w] = static_cast<std::int64_t>(v / k);
        if (search(copy)) return true;
      }
      return false;
    }
    for (const auto& o : y)
      if (!o) throw Budget{};  // nothing bounds the remaining unknowns
    return check_all(y);
  }
};

}  // namespace detail

// Compares h = 0 with the formula on every point of [-grid, grid]^n.  Bound variables are
// found by propagating linear equations and chains (w = T^2 once T is known); anything left
// open is searched over square roots up to a window derived from the coefficients.
inline EquivReport check_equiv(const MultiPoly& h, const SquareFormula& f, std::int64_t grid, unsigned chain_length = 5,
                               std::uint64_t budget = 200000) {
  EquivReport rep;
  std::size_t n = std::max<std::size_t>(h.n, 1);
  Int mass = 0;
  for (const auto& [e, c] : h.terms) mass += abs_int(c);
  Int win = Int(grid + 1) * (1 + mass * ipow(Int(4), std::max(1u, h.degree())) * ipow(Int(grid + 1), std::max(1u, h.degree())));
  std::int64_t window = win.fits_slong_p() ? win.get_si() : INT64_MAX / 8;
  detail::Checker chk(f, n, window, chain_length, budget);
  std::vector<std::int64_t> x(n, -grid);
  std::vector<Int> xi(n);
  for (;;) {
    ++rep.points;
    for (std::size_t i = 0; i < n; ++i) xi[i] = Int(static_cast<long>(x[i]));
    bool z = h.eval(xi) == 0;
    auto t = chk.holds(x);
    if (!t) {
      rep.pass = false;
      rep.inconclusive = true;
      rep.counterexample = x;
      rep.h_zero = z;
      return rep;
    }
    if (*t != z) {
      rep.pass = false;
      rep.counterexample = x;
      rep.h_zero = z;
      rep.formula_true = *t;
      return rep;
    }
    std::size_t i = 0;
    while (i < n && x[i] == grid) x[i++] = -grid;
    if (i == n) break;
    ++x[i];
  }
  return rep;
}

}  // namespace monapres::encoder
