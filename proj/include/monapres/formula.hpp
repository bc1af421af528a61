#pragma once

#include "bigint.hpp"
#include "polynomial.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monapres {

struct ParseError : std::runtime_error {
  std::size_t line, col;
  ParseError(std::size_t l, std::size_t c, const std::string& msg)
      : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c) {}
};

// Integer-valued polynomial predicate; coeffs are c_d .. c_0.
struct PredicateDecl {
  std::string name;
  std::vector<Rat> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  RatPoly poly() const {
    std::vector<Rat> cs(coeffs.rbegin(), coeffs.rend());
    return RatPoly(cs);
  }
  Rat eval(const Rat& u) const {
    Rat r = 0;
    for (const auto& c : coeffs) r = r * u + c;
    return r;
  }
  // Values at 0..d are integers iff the polynomial maps Z into Z.
  bool integer_valued() const {
    for (int u = 0; u <= degree(); ++u)
      if (eval(Rat(u)).get_den() != 1) return false;
    return true;
  }
  bool operator==(const PredicateDecl&) const = default;
};

struct Term {
  enum class Kind { Var, Const, Add, Sub, Neg, Mul };
  Kind kind{Kind::Const};
  Int value{0};  // constant, or the factor of Mul
  std::string name;
  std::vector<Term> args;

  static Term var(std::string n) { Term t; t.kind = Kind::Var; t.name = std::move(n); return t; }
  static Term constant(Int v) { Term t; t.kind = Kind::Const; t.value = std::move(v); return t; }
  static Term add(std::vector<Term> xs) { Term t; t.kind = Kind::Add; t.args = std::move(xs); return t; }
  static Term sub(Term x, Term y) { Term t; t.kind = Kind::Sub; t.args = {std::move(x), std::move(y)}; return t; }
  static Term neg(Term x) { Term t; t.kind = Kind::Neg; t.args = {std::move(x)}; return t; }
  static Term mul(Int k, Term x) { Term t; t.kind = Kind::Mul; t.value = std::move(k); t.args = {std::move(x)}; return t; }
  bool operator==(const Term&) const = default;
};

// a*x + b
struct Linear {
  Int a{0}, b{0};
  bool operator==(const Linear&) const = default;
};

inline Linear linearize(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var: return {1, 0};
    case Term::Kind::Const: return {0, t.value};
    case Term::Kind::Add: {
      Linear r;
      for (const auto& x : t.args) {
        Linear l = linearize(x);
        r.a += l.a;
        r.b += l.b;
      }
      return r;
    }
    case Term::Kind::Sub: {
      Linear l = linearize(t.args[0]), m = linearize(t.args[1]);
      return {l.a - m.a, l.b - m.b};
    }
    case Term::Kind::Neg: {
      Linear l = linearize(t.args[0]);
      return {-l.a, -l.b};
    }
    case Term::Kind::Mul: {
      Linear l = linearize(t.args[0]);
      return {t.value * l.a, t.value * l.b};
    }
  }
  return {};
}

struct Formula {
  enum class Kind { And, Or, Not, Eq, Lt, Gt, Mod, Pow, Pred };
  Kind kind{Kind::And};
  std::vector<Formula> children;
  std::vector<Term> terms;
  Int k{0};  // exponent of pow, modulus of mod
  Int r{0};  // residue of mod
  std::string pred;

  static Formula conj(std::vector<Formula> xs) { Formula f; f.kind = Kind::And; f.children = std::move(xs); return f; }
  static Formula disj(std::vector<Formula> xs) { Formula f; f.kind = Kind::Or; f.children = std::move(xs); return f; }
  static Formula negate(Formula x) { Formula f; f.kind = Kind::Not; f.children = {std::move(x)}; return f; }
  static Formula cmp(Kind kd, Term a, Term b) { Formula f; f.kind = kd; f.terms = {std::move(a), std::move(b)}; return f; }
  static Formula mod(Term t, Int m, Int res) {
    Formula f; f.kind = Kind::Mod; f.terms = {std::move(t)}; f.k = std::move(m); f.r = std::move(res); return f;
  }
  static Formula pow(Int k, Term t) { Formula f; f.kind = Kind::Pow; f.k = std::move(k); f.terms = {std::move(t)}; return f; }
  static Formula pred_app(std::string name, Term t) {
    Formula f; f.kind = Kind::Pred; f.pred = std::move(name); f.terms = {std::move(t)}; return f;
  }
  bool operator==(const Formula&) const = default;
};

enum class Quantifier { Exists, Forall };

struct Sentence {
  std::vector<PredicateDecl> decls;
  Quantifier quant{Quantifier::Exists};
  std::string var{"x"};
  Formula body;

  const PredicateDecl& decl(const std::string& name) const {
    for (const auto& d : decls)
      if (d.name == name) return d;
    throw std::out_of_range("unknown predicate " + name);
  }
  bool operator==(const Sentence&) const = default;
};

// ---------------------------------------------------------------------------
// s-expression reader

struct SExpr {
  bool atom{false};
  std::string text;
  std::vector<SExpr> items;
  std::size_t line{1}, col{1};
};

namespace detail {

class Reader {
 public:
  explicit Reader(const std::string& s) : src_(s) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip();
    while (pos_ < src_.size()) {
      out.push_back(read());
      skip();
    }
    return out;
  }

 private:
  const std::string& src_;
  std::size_t pos_{0}, line_{1}, col_{1};

  void advance() {
    if (src_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
    ++pos_;
  }
  void skip() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ';') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }
  SExpr read() {
    SExpr e;
    e.line = line_;
    e.col = col_;
    if (src_[pos_] == ')') throw ParseError(line_, col_, "unexpected ')'");
    if (src_[pos_] == '(') {
      advance();
      skip();
      while (pos_ < src_.size() && src_[pos_] != ')') {
        e.items.push_back(read());
        skip();
      }
      if (pos_ >= src_.size()) throw ParseError(e.line, e.col, "unclosed '('");
      advance();
      return e;
    }
    e.atom = true;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';') break;
      e.text += c;
      advance();
    }
    return e;
  }
};

inline bool is_int_token(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

inline bool is_ident(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return true;
}

inline Int parse_int(const SExpr& e) {
  if (!e.atom || !is_int_token(e.text)) throw ParseError(e.line, e.col, "expected integer, got '" + e.text + "'");
  std::string t = e.text[0] == '+' ? e.text.substr(1) : e.text;
  return Int(t);
}

inline Rat parse_rat(const SExpr& e) {
  if (e.atom) {
    auto slash = e.text.find('/');
    if (slash != std::string::npos) {
      SExpr n = e, d = e;
      n.text = e.text.substr(0, slash);
      d.text = e.text.substr(slash + 1);
      Int num = parse_int(n), den = parse_int(d);
      if (den == 0) throw ParseError(e.line, e.col, "zero denominator");
      return make_rat(num, den);
    }
  }
  return Rat(parse_int(e));
}

inline const std::string& head(const SExpr& e) {
  static const std::string empty;
  if (e.atom || e.items.empty() || !e.items[0].atom) return empty;
  return e.items[0].text;
}

class Builder {
 public:
  std::vector<PredicateDecl> decls;
  bool allow_free_vars{false};  // encoder inputs use x1..xn
  std::string var;

  PredicateDecl decl(const SExpr& e) {
    if (e.items.size() != 3 || !e.items[1].atom || !is_ident(e.items[1].text))
      throw ParseError(e.line, e.col, "expected (declare-pred NAME (coeffs RAT+))");
    const SExpr& cs = e.items[2];
    if (head(cs) != "coeffs" || cs.items.size() < 2) throw ParseError(cs.line, cs.col, "expected (coeffs RAT+)");
    PredicateDecl d;
    d.name = e.items[1].text;
    for (std::size_t i = 1; i < cs.items.size(); ++i) d.coeffs.push_back(parse_rat(cs.items[i]));
    if (d.degree() > 3) throw ParseError(cs.line, cs.col, "predicate degree must be at most 3");
    if (d.degree() > 0 && d.coeffs[0] == 0) throw ParseError(cs.line, cs.col, "leading coefficient must be nonzero");
    if (!d.integer_valued())
      throw ParseError(e.line, e.col, "predicate '" + d.name + "' is not integer-valued");
    for (const auto& o : decls)
      if (o.name == d.name) throw ParseError(e.line, e.col, "duplicate predicate '" + d.name + "'");
    return d;
  }

  Term term(const SExpr& e) {
    if (e.atom) {
      if (is_int_token(e.text)) return Term::constant(parse_int(e));
      if (!is_ident(e.text)) throw ParseError(e.line, e.col, "bad term '" + e.text + "'");
      if (!allow_free_vars && e.text != var)
        throw ParseError(e.line, e.col, "variable '" + e.text + "' is not the bound variable '" + var + "'");
      return Term::var(e.text);
    }
    const std::string& h = head(e);
    std::size_t n = e.items.size();
    if (h == "+") {
      if (n < 2) throw ParseError(e.line, e.col, "(+) needs arguments");
      std::vector<Term> xs;
      for (std::size_t i = 1; i < n; ++i) xs.push_back(term(e.items[i]));
      return Term::add(std::move(xs));
    }
    if (h == "-") {
      if (n == 2) return Term::neg(term(e.items[1]));
      if (n == 3) return Term::sub(term(e.items[1]), term(e.items[2]));
      throw ParseError(e.line, e.col, "(-) takes one or two arguments");
    }
    if (h == "*") {
      if (n != 3) throw ParseError(e.line, e.col, "(*) takes an integer and a term");
      return Term::mul(parse_int(e.items[1]), term(e.items[2]));
    }
    throw ParseError(e.line, e.col, "unknown term operator '" + h + "'");
  }

  Formula body(const SExpr& e) {
    const std::string& h = head(e);
    std::size_t n = e.items.size();
    auto arity = [&](std::size_t want) {
      if (n != want) throw ParseError(e.line, e.col, "'" + h + "' expects " + std::to_string(want - 1) + " arguments");
    };
    if (h == "and" || h == "or") {
      if (n < 2) throw ParseError(e.line, e.col, "'" + h + "' needs at least one argument");
      std::vector<Formula> xs;
      for (std::size_t i = 1; i < n; ++i) xs.push_back(body(e.items[i]));
      return h == "and" ? Formula::conj(std::move(xs)) : Formula::disj(std::move(xs));
    }
    if (h == "not") {
      arity(2);
      return Formula::negate(body(e.items[1]));
    }
    if (h == "=" || h == "<" || h == ">") {
      arity(3);
      auto kd = h == "=" ? Formula::Kind::Eq : (h == "<" ? Formula::Kind::Lt : Formula::Kind::Gt);
      return Formula::cmp(kd, term(e.items[1]), term(e.items[2]));
    }
    if (h == "mod") {
      arity(4);
      Int m = parse_int(e.items[2]);
      if (m < 2) throw ParseError(e.items[2].line, e.items[2].col, "modulus must be >= 2");
      return Formula::mod(term(e.items[1]), m, parse_int(e.items[3]));
    }
    if (h == "pow") {
      arity(3);
      Int k = parse_int(e.items[1]);
      if (k < 2) throw ParseError(e.items[1].line, e.items[1].col, "power exponent must be >= 2");
      if (k > 64) throw ParseError(e.items[1].line, e.items[1].col, "power exponent must be <= 64");
      return Formula::pow(k, term(e.items[2]));
    }
    if (h == "pred") {
      arity(3);
      const SExpr& nm = e.items[1];
      if (!nm.atom) throw ParseError(nm.line, nm.col, "expected predicate name");
      bool known = false;
      for (const auto& d : decls) known = known || d.name == nm.text;
      if (!known) throw ParseError(nm.line, nm.col, "unknown predicate '" + nm.text + "'");
      return Formula::pred_app(nm.text, term(e.items[2]));
    }
    throw ParseError(e.line, e.col, h.empty() ? "expected a formula" : "unknown connective '" + h + "'");
  }

  Sentence sentence(const SExpr& e) {
    const std::string& h = head(e);
    if ((h != "exists" && h != "forall") || e.items.size() != 3 || !e.items[1].atom || !is_ident(e.items[1].text))
      throw ParseError(e.line, e.col, "expected (exists VAR BODY) or (forall VAR BODY)");
    Sentence s;
    s.quant = h == "exists" ? Quantifier::Exists : Quantifier::Forall;
    s.var = e.items[1].text;
    var = s.var;
    s.body = body(e.items[2]);
    s.decls = decls;
    return s;
  }
};

}  // namespace detail

// Declarations followed by one or more sentences.
inline std::vector<Sentence> parse_all(const std::string& text) {
  detail::Reader rd(text);
  std::vector<SExpr> top = rd.read_all();
  detail::Builder b;
  std::vector<Sentence> out;
  for (const auto& e : top) {
    const std::string& h = detail::head(e);
    if (h == "declare-pred") {
      if (!out.empty()) throw ParseError(e.line, e.col, "declarations must precede sentences");
      b.decls.push_back(b.decl(e));
    } else {
      out.push_back(b.sentence(e));
    }
  }
  if (out.empty()) {
    std::size_t line = top.empty() ? 1 : top.back().line;
    throw ParseError(line, 1, "no sentence found");
  }
  return out;
}

inline Sentence parse(const std::string& text) {
  auto all = parse_all(text);
  if (all.size() != 1) {
    detail::Reader rd(text);
    std::size_t seen = 0;
    for (const auto& e : rd.read_all())
      if (detail::head(e) != "declare-pred" && ++seen == 2)
        throw ParseError(e.line, e.col, "expected exactly one sentence (use multi mode for more)");
  }
  return all[0];
}

inline Term parse_term(const std::string& text, bool allow_free_vars = true) {
  detail::Reader rd(text);
  auto top = rd.read_all();
  if (top.size() != 1) throw ParseError(1, 1, "expected exactly one term");
  detail::Builder b;
  b.allow_free_vars = allow_free_vars;
  return b.term(top[0]);
}

// ---------------------------------------------------------------------------
// printing

inline std::string print(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var: return t.name;
    case Term::Kind::Const: return t.value.get_str();
    case Term::Kind::Add: {
      std::string s = "(+";
      for (const auto& a : t.args) s += " " + print(a);
      return s + ")";
    }
    case Term::Kind::Sub: return "(- " + print(t.args[0]) + " " + print(t.args[1]) + ")";
    case Term::Kind::Neg: return "(- " + print(t.args[0]) + ")";
    case Term::Kind::Mul: return "(* " + t.value.get_str() + " " + print(t.args[0]) + ")";
  }
  return "";
}

inline std::string print(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::And:
    case K::Or: {
      std::string s = f.kind == K::And ? "(and" : "(or";
      for (const auto& c : f.children) s += " " + print(c);
      return s + ")";
    }
    case K::Not: return "(not " + print(f.children[0]) + ")";
    case K::Eq: return "(= " + print(f.terms[0]) + " " + print(f.terms[1]) + ")";
    case K::Lt: return "(< " + print(f.terms[0]) + " " + print(f.terms[1]) + ")";
    case K::Gt: return "(> " + print(f.terms[0]) + " " + print(f.terms[1]) + ")";
    case K::Mod: return "(mod " + print(f.terms[0]) + " " + f.k.get_str() + " " + f.r.get_str() + ")";
    case K::Pow: return "(pow " + f.k.get_str() + " " + print(f.terms[0]) + ")";
    case K::Pred: return "(pred " + f.pred + " " + print(f.terms[0]) + ")";
  }
  return "";
}

inline std::string print(const PredicateDecl& d) {
  std::string s = "(declare-pred " + d.name + " (coeffs";
  for (const auto& c : d.coeffs) s += " " + c.get_str();
  return s + "))";
}

inline std::string print(const Sentence& s) {
  std::string out;
  for (const auto& d : s.decls) out += print(d) + "\n";
  out += std::string(s.quant == Quantifier::Exists ? "(exists " : "(forall ") + s.var + " " + print(s.body) + ")";
  return out;
}

}  // namespace monapres
