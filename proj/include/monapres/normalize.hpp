#pragma once

// Formula -> disjunction of constraint systems over y, with x = sign*(M*y + r).

#include "formula.hpp"
#include "poly_solver.hpp"
#include "power_solver.hpp"
#include "system.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace monapres {

// Literal over x after rewriting: x = c, x < c, x > c, x mod m in residues, or an atom in x.
struct Literal {
  enum class Kind { True, False, Eq, Lt, Gt, Mod, Atom };
  Kind kind{Kind::True};
  Int c{0};
  Int m{1};
  std::vector<Int> residues;
  monapres::Atom atom;

  static Literal truth(bool v) {
    Literal l;
    l.kind = v ? Kind::True : Kind::False;
    return l;
  }
  static Literal cmp(Kind k, Int c) {
    Literal l;
    l.kind = k;
    l.c = std::move(c);
    return l;
  }
  static Literal mod(Int m, std::vector<Int> rs) {
    Literal l;
    l.kind = Kind::Mod;
    l.m = std::move(m);
    l.residues = std::move(rs);
    return l;
  }
  static Literal of(monapres::Atom a) {
    Literal l;
    l.kind = Kind::Atom;
    l.atom = std::move(a);
    return l;
  }

  bool holds(const Int& x) const {
    switch (kind) {
      case Kind::True: return true;
      case Kind::False: return false;
      case Kind::Eq: return x == c;
      case Kind::Lt: return x < c;
      case Kind::Gt: return x > c;
      case Kind::Mod: return std::binary_search(residues.begin(), residues.end(), mod_floor(x, m));
      case Kind::Atom: return atom.holds(x);
    }
    return false;
  }
  std::string str() const {
    switch (kind) {
      case Kind::True: return "true";
      case Kind::False: return "false";
      case Kind::Eq: return "x=" + c.get_str();
      case Kind::Lt: return "x<" + c.get_str();
      case Kind::Gt: return "x>" + c.get_str();
      case Kind::Mod: {
        std::string rs;
        for (const auto& r : residues) rs += (rs.empty() ? "" : ",") + r.get_str();
        return "x mod " + m.get_str() + " in {" + rs + "}";
      }
      case Kind::Atom: {
        std::string s = atom.str();
        std::size_t p;
        while ((p = s.find('y')) != std::string::npos) s[p] = 'x';
        return s;
      }
    }
    return "?";
  }
};

using Conjunct = std::vector<Literal>;
using Dnf = std::vector<Conjunct>;

inline constexpr std::size_t kDnfCap = 4096;
inline constexpr std::size_t kResidueSplitCap = 4096;

namespace detail {

// a*x + b > 0
inline Literal lin_gt0(const Int& a, const Int& b) {
  if (a == 0) return Literal::truth(b > 0);
  if (a > 0) return Literal::cmp(Literal::Kind::Gt, floor_div(-b, a));
  return Literal::cmp(Literal::Kind::Lt, ceil_div(b, -a));
}

// a*x + b = 0 (positive) or != 0
inline Dnf lin_eq0(const Int& a, const Int& b, bool positive) {
  if (a == 0) return {{Literal::truth((b == 0) == positive)}};
  if (!divides(a, b)) return {{Literal::truth(!positive)}};
  Int c = -b / a;
  if (positive) return {{Literal::cmp(Literal::Kind::Eq, c)}};
  return {{Literal::cmp(Literal::Kind::Lt, c)}, {Literal::cmp(Literal::Kind::Gt, c)}};
}

// a*x + b = r (mod m)
inline Literal lin_mod(const Int& a, const Int& b, const Int& m, const Int& r, bool positive) {
  auto cls = solve_linear_congruence(a, r - b, m);
  if (!cls) return Literal::truth(!positive);
  if (cls->modulus == 1) return Literal::truth(positive);
  if (positive) return Literal::mod(cls->modulus, {cls->residue});
  std::vector<Int> rs;
  for (Int u = 0; u < cls->modulus; ++u)
    if (u != cls->residue) rs.push_back(u);
  return Literal::mod(cls->modulus, std::move(rs));
}

inline Dnf literal_dnf(const Formula& f, bool positive, const Sentence& s) {
  using K = Formula::Kind;
  auto one = [](Literal l) { return Dnf{{std::move(l)}}; };
  switch (f.kind) {
    case K::Eq: {
      Linear l = linearize(f.terms[0]), r = linearize(f.terms[1]);
      return lin_eq0(l.a - r.a, l.b - r.b, positive);
    }
    case K::Lt:
    case K::Gt: {
      Linear l = linearize(f.terms[0]), r = linearize(f.terms[1]);
      Int a = l.a - r.a, b = l.b - r.b;  // v = a x + b;  Lt: v < 0, Gt: v > 0
      if (f.kind == K::Lt) return positive ? one(lin_gt0(-a, -b)) : one(lin_gt0(a, b + 1));
      return positive ? one(lin_gt0(a, b)) : one(lin_gt0(-a, -b + 1));
    }
    case K::Mod: {
      Linear l = linearize(f.terms[0]);
      return one(lin_mod(l.a, l.b, f.k, f.r, positive));
    }
    case K::Pow: {
      Linear l = linearize(f.terms[0]);
      unsigned k = static_cast<unsigned>(f.k.get_ui());
      if (l.a == 0) return one(Literal::truth(kth_root(l.b, k).has_value() == positive));
      return one(Literal::of(Atom::power(positive, k, l.a, l.b)));
    }
    case K::Pred: {
      Linear l = linearize(f.terms[0]);
      const PredicateDecl& d = s.decl(f.pred);
      int deg = d.degree();
      if (deg <= 0) {
        // value set {c0}
        Int c0 = d.coeffs.back().get_num();
        return lin_eq0(l.a, l.b - c0, positive);
      }
      if (deg == 1) {
        // value set {e + d u}: a x + b = e (mod |d|)
        Int dd = abs_int(Int(d.coeffs[0])), e = Int(d.eval(Rat(0)));
        if (dd == 1) return one(Literal::truth(positive));
        return one(lin_mod(l.a, l.b, dd, e, positive));
      }
      if (l.a == 0) {
        Atom probe = poly_atom(true, d, 1, 0);
        return one(Literal::truth(probe.predicate_at(l.b) == positive));
      }
      return one(Literal::of(poly_atom(positive, d, l.a, l.b)));
    }
    default: break;
  }
  throw std::logic_error("literal_dnf: not an atom");
}

inline void simplify_conjunct(Conjunct& c) {
  Conjunct out;
  for (auto& l : c) {
    if (l.kind == Literal::Kind::True) continue;
    if (l.kind == Literal::Kind::False) {
      c = {Literal::truth(false)};
      return;
    }
    out.push_back(std::move(l));
  }
  c = std::move(out);
}

inline Dnf product(const Dnf& x, const Dnf& y) {
  Dnf out;
  for (const auto& a : x)
    for (const auto& b : y) {
      Conjunct c = a;
      c.insert(c.end(), b.begin(), b.end());
      simplify_conjunct(c);
      if (c.size() == 1 && c[0].kind == Literal::Kind::False) continue;
      out.push_back(std::move(c));
      if (out.size() > kDnfCap) throw std::length_error("disjunctive normal form exceeds " + std::to_string(kDnfCap) + " disjuncts");
    }
  return out;
}

}  // namespace detail

// Negation normal form pushed all the way to a disjunction of literal conjunctions.
inline Dnf to_dnf(const Formula& f, bool positive, const Sentence& s) {
  using K = Formula::Kind;
  if (f.kind == K::Not) return to_dnf(f.children[0], !positive, s);
  if (f.kind == K::And || f.kind == K::Or) {
    bool conj = (f.kind == K::And) == positive;
    if (conj) {
      Dnf acc{Conjunct{}};
      for (const auto& ch : f.children) acc = detail::product(acc, to_dnf(ch, positive, s));
      return acc;
    }
    Dnf acc;
    for (const auto& ch : f.children) {
      Dnf d = to_dnf(ch, positive, s);
      acc.insert(acc.end(), d.begin(), d.end());
      if (acc.size() > kDnfCap) throw std::length_error("disjunctive normal form exceeds " + std::to_string(kDnfCap) + " disjuncts");
    }
    return acc;
  }
  Dnf d = detail::literal_dnf(f, positive, s);
  Dnf out;
  for (auto& c : d) {
    detail::simplify_conjunct(c);
    if (c.size() == 1 && c[0].kind == Literal::Kind::False) continue;
    out.push_back(std::move(c));
  }
  return out;
}

namespace detail {

inline ConstraintSystem closed_system(int sign, const Int& M, const Int& r, const Int& lower, const std::vector<Atom>& atoms,
                                      std::string origin) {
  ConstraintSystem s;
  s.sign = sign;
  s.M = M;
  s.r = r;
  s.lower = lower;
  s.checks = atoms;
  s.origin = std::move(origin);
  return s;
}

inline void mark_unsat(ConstraintSystem& s, const std::string& cert) {
  s.resolved = Verdict::unsat(cert);
  s.resolved->trace = s.log;
  s.resolved->trace.push_back("resolved:" + cert);
}

inline void mark_sat(ConstraintSystem& s, const Int& y, const std::string& how) {
  s.resolved = Verdict::sat(s.x_of(y));
  s.resolved->trace = s.log;
  s.resolved->trace.push_back("resolved:" + how);
}

// Finite range (lower, upper): scan it when small, or list the images of a positive
// even atom that bounds it from above.
inline void settle_finite_range(ConstraintSystem& s, const std::vector<Atom>& bounding, const SolverOptions& opt) {
  Int width = *s.upper - s.lower - 1;
  if (width <= 0) {
    mark_unsat(s, "bounded-interval");
    return;
  }
  if (width <= Int(static_cast<unsigned long>(opt.scan_cap))) {
    for (Int y = *s.upper - 1; y > s.lower; --y)
      if (s.accepts(y)) {
        mark_sat(s, y, "interval-scan");
        return;
      }
    mark_unsat(s, "bounded-interval");
    return;
  }
  for (const auto& at : bounding) {
    // a < 0: y = (b - F(t)) / |a| for t >= 0 while y > lower
    std::vector<Int> ys;
    bool ok = true;
    for (Int t = 0;; ++t) {
      Int F = at.is_power() ? ipow(t, at.k) : at.f(t);
      Int num = at.b - F;
      if (floor_div(num, -at.a) <= s.lower) break;
      if (divides(at.a, num)) {
        Int y = num / (-at.a);
        if (y < *s.upper) ys.push_back(y);
      }
      if (ys.size() > opt.scan_cap || t > Int(static_cast<unsigned long>(opt.scan_cap))) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    s.only = ys;
    s.only_cert = "bounded-interval";
    s.log.push_back("finite-images:" + at.str());
    return;
  }
}

// Negative leading coefficients: odd atoms are reflected, even ones bound the range.
inline std::vector<ConstraintSystem> split_signs(ConstraintSystem base, std::vector<Atom> atoms, const SolverOptions& opt) {
  struct Part {
    ConstraintSystem sys;
    std::vector<Atom> structural, bounding;
  };
  std::vector<Part> parts{{std::move(base), {}, {}}};
  for (auto at : atoms) {
    if (at.a < 0 && (at.k % 2 == 1) ) {
      at.a = -at.a;
      at.b = -at.b;
      if (at.is_poly()) {
        for (auto& r : at.residues) r = mod_floor(-r, at.q);
        std::sort(at.residues.begin(), at.residues.end());
      }
    }
    if (at.a > 0) {
      for (auto& p : parts) p.structural.push_back(at);
      continue;
    }
    Int Ub = floor_div(at.b, -at.a);  // a y + b >= 0 iff y <= Ub
    std::vector<Part> next;
    for (auto& p : parts) {
      Part below = p;
      if (!below.sys.upper || *below.sys.upper > Ub + 1) below.sys.upper = Ub + 1;
      below.sys.log.push_back("bounded-by:" + at.str());
      if (at.positive) {
        below.bounding.push_back(at);
        next.push_back(std::move(below));
        continue;
      }
      next.push_back(std::move(below));
      Part above = std::move(p);
      if (above.sys.lower < Ub) above.sys.lower = Ub;
      above.sys.log.push_back("discharged-beyond:" + at.str());
      next.push_back(std::move(above));
    }
    parts = std::move(next);
  }
  std::vector<ConstraintSystem> out;
  for (auto& p : parts) {
    ConstraintSystem& s = p.sys;
    for (auto& at : p.structural) (at.positive ? s.positives : s.negatives).push_back(at);
    if (s.upper) settle_finite_range(s, p.bounding, opt);
    out.push_back(std::move(s));
  }
  return out;
}

inline void dedupe(std::vector<Atom>& xs) {
  std::vector<Atom> out;
  for (auto& x : xs)
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
  xs = std::move(out);
}

inline bool force_zero_point(ConstraintSystem& s, const Atom& base, const std::string& why, bool zero_ok = true) {
  if (zero_ok && divides(base.a, base.b)) {
    Int y0 = -base.b / base.a;
    s.only = std::vector<Int>{y0};
    s.only_cert = "forced";
    s.log.push_back(why + " -> only y=" + y0.get_str());
    return true;
  }
  s.log.push_back(why);
  mark_unsat(s, "forced");
  return false;
}

// Power-atom redundancy; returns false once the system is settled.
inline bool discard_power(ConstraintSystem& s, const std::string& tag) {
  auto& P = s.positives;
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = 0; i < P.size() && !again; ++i)
      for (std::size_t j = 0; j < P.size() && !again; ++j) {
        if (i == j || !P[i].is_power() || !P[j].is_power()) continue;
        auto f = is_redundant(P[i], P[j]);
        if (!f) continue;
        if (*f) {
          s.log.push_back(tag + ":" + P[i].str() + " implied by " + P[j].str());
          P.erase(P.begin() + static_cast<std::ptrdiff_t>(i));
          again = true;
        } else {
          force_zero_point(s, P[j], tag + ":" + P[i].str() + " refuted by " + P[j].str());
          return false;
        }
      }
  }
  auto& N = s.negatives;
  for (std::size_t i = 0; i < N.size();) {
    bool dropped = false;
    for (const auto& p : P) {
      if (!p.is_power() || !N[i].is_power()) continue;
      auto f = is_redundant(N[i].negated(), p);
      if (!f) continue;
      if (*f) {
        s.log.push_back(tag + ":" + N[i].str() + " contradicts " + p.str());
        mark_unsat(s, "forced");
        return false;
      }
      s.log.push_back(tag + ":" + N[i].str() + " implied by " + p.str());
      N.erase(N.begin() + static_cast<std::ptrdiff_t>(i));
      dropped = true;
      break;
    }
    if (!dropped) ++i;
  }
  return true;
}

inline bool coalesce_power(ConstraintSystem& s) {
  std::vector<Atom> rest, out;
  std::vector<std::vector<Atom>> groups;
  for (const auto& p : s.positives) {
    if (!p.is_power()) {
      rest.push_back(p);
      continue;
    }
    bool placed = false;
    for (auto& g : groups)
      if (similar(g[0], p)) {
        g.push_back(p);
        placed = true;
        break;
      }
    if (!placed) groups.push_back({p});
  }
  for (auto& g : groups) {
    if (g.size() == 1) {
      out.push_back(g[0]);
      continue;
    }
    std::string names;
    for (const auto& a : g) names += (names.empty() ? "" : ", ") + a.str();
    auto c = coalesce_similar(g);
    if (!c) {
      force_zero_point(s, g[0], "coalesce:[" + names + "] only at zero");
      return false;
    }
    s.log.push_back("coalesce:[" + names + "] -> " + c->str());
    out.push_back(*c);
  }
  out.insert(out.end(), rest.begin(), rest.end());
  s.positives = std::move(out);
  return true;
}

// t -> lambda t (and -lambda t for squares) lands in c1's admissible set.
inline bool line_condition(const Atom& c1, const Rat& lambda, const Int& u) {
  for (int sg : {1, -1}) {
    if (sg < 0 && c1.k != 2) break;
    auto t1 = as_integer(Rat(Rat(sg * lambda) * Rat(u)));
    if (t1 && c1.residue_ok(*t1)) return true;
  }
  return false;
}

inline std::optional<Atom> restrict_by_line(const Atom& c1, const Atom& c2, const Rat& lambda, bool keep_line,
                                            const SolverOptions& opt) {
  Int Q = lcm(c2.q, Int(lambda.get_den()) * c1.q);
  if (Q > opt.residue_cap) return std::nullopt;
  Atom out = c2;
  out.q = Q;
  out.residues.clear();
  for (Int u = 0; u < Q; ++u)
    if (c2.residue_ok(u) && line_condition(c1, lambda, u) == keep_line) out.residues.push_back(u);
  return out;
}

// Polynomial-atom redundancy between same-degree similar atoms.
inline bool discard_poly(ConstraintSystem& s, const SolverOptions& opt) {
  auto& P = s.positives;
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = 0; i < P.size() && !again; ++i)
      for (std::size_t j = 0; j < P.size() && !again; ++j) {
        if (i == j) continue;
        auto pr = poly_redundant(P[i], P[j]);
        if (!pr) continue;
        Atom c1 = P[i], c2 = P[j];
        if (pr->zero_only) {
          force_zero_point(s, c2, "poly-redundant:" + c1.str() + " meets " + c2.str() + " only at zero",
                           c1.residue_ok(0) && c2.residue_ok(0));
          return false;
        }
        auto c2r = restrict_by_line(c1, c2, pr->lambda, true, opt);
        if (!c2r) continue;
        for (const auto& [t1, t2] : pr->ellipse)
          if (c1.residue_ok(t1) && c2.residue_ok(t2) && divides(c2.a, c2.f(t2) - c2.b))
            s.extras.push_back((c2.f(t2) - c2.b) / c2.a);
        s.log.push_back("poly-redundant:" + c1.str() + " folded into " + c2r->str());
        if (c2r->residues.empty()) {
          if (s.extras.empty()) {
            mark_unsat(s, "empty-residues");
          } else {
            s.only = s.extras;
            s.only_cert = "empty-residues";
          }
          return false;
        }
        P[j] = *c2r;
        P.erase(P.begin() + static_cast<std::ptrdiff_t>(i));
        again = true;
      }
  }
  auto& N = s.negatives;
  for (std::size_t i = 0; i < N.size();) {
    bool dropped = false;
    for (auto& p : P) {
      auto pr = poly_redundant(N[i].negated(), p);
      if (!pr) continue;
      if (pr->zero_only) {
        s.log.push_back("poly-redundant:" + N[i].str() + " implied by " + p.str());
      } else {
        auto pr2 = restrict_by_line(N[i].negated(), p, pr->lambda, false, opt);
        if (!pr2) continue;
        s.log.push_back("poly-redundant:" + N[i].str() + " folded into " + pr2->str());
        if (pr2->residues.empty()) {
          mark_unsat(s, "forced");
          return false;
        }
        p = *pr2;
      }
      N.erase(N.begin() + static_cast<std::ptrdiff_t>(i));
      dropped = true;
      break;
    }
    if (!dropped) ++i;
  }
  return true;
}

inline void simplify_atoms(ConstraintSystem& s, const SolverOptions& opt) {
  if (s.resolved || s.only) return;
  dedupe(s.positives);
  dedupe(s.negatives);
  if (!discard_power(s, "redundant")) return;
  if (!coalesce_power(s)) return;
  if (!discard_power(s, "redundant-after-coalescing")) return;
  if (s.has_poly()) {
    for (auto* v : {&s.positives, &s.negatives})
      for (auto& at : *v)
        if (at.is_power() && at.k <= 3) at = power_as_poly(at);
    dedupe(s.positives);
    dedupe(s.negatives);
    discard_poly(s, opt);
  }
}

// Residues of x modulo the combined modulus satisfying every Mod literal.
inline std::vector<Int> combine_mods(const std::vector<const Literal*>& mods, Int& M) {
  std::vector<ResidueClass> singles;
  std::vector<const Literal*> sets;
  M = 1;
  for (const auto* l : mods) {
    M = lcm(M, l->m);
    if (l->residues.size() == 1) singles.emplace_back(l->m, l->residues[0]);
    else sets.push_back(l);
  }
  ResidueClass base;
  if (!singles.empty()) {
    auto c = crt_extended(singles);
    if (!c) return {};
    base = *c;
  }
  if (sets.empty()) {
    M = base.modulus;
    return {base.residue};
  }
  if (M / base.modulus > Int(static_cast<unsigned long>(kResidueSplitCap) * 64))
    throw std::length_error("residue combination too large");
  std::vector<Int> out;
  for (Int u = base.residue; u < M; u += base.modulus) {
    bool ok = true;
    for (const auto* l : sets) ok = ok && l->holds(u);
    if (ok) out.push_back(u);
    if (out.size() > kResidueSplitCap) throw std::length_error("too many residue classes");
  }
  return out;
}

}  // namespace detail

// Systems for one conjunct; their union is equivalent to the conjunct.
inline std::vector<ConstraintSystem> systems_of(const Conjunct& conj, const SolverOptions& opt = {}) {
  std::optional<Int> eq, L, U;
  bool eq_conflict = false;
  std::vector<const Literal*> mods;
  std::vector<Atom> atoms;
  std::string origin;
  for (const auto& l : conj) {
    origin += (origin.empty() ? "" : " & ") + l.str();
    switch (l.kind) {
      case Literal::Kind::True: break;
      case Literal::Kind::False: eq_conflict = true; break;
      case Literal::Kind::Eq:
        if (eq && *eq != l.c) eq_conflict = true;
        eq = l.c;
        break;
      case Literal::Kind::Gt:
        if (!L || l.c > *L) L = l.c;
        break;
      case Literal::Kind::Lt:
        if (!U || l.c < *U) U = l.c;
        break;
      case Literal::Kind::Mod: mods.push_back(&l); break;
      case Literal::Kind::Atom: atoms.push_back(l.atom); break;
    }
  }
  if (origin.empty()) origin = "true";
  auto point = [&](const Int& x) {
    ConstraintSystem s = detail::closed_system(1, 1, 0, x - 1, atoms, origin);
    bool ok = !eq_conflict;
    for (const auto& l : conj) ok = ok && l.holds(x);
    if (ok) {
      s.upper = x + 1;
      detail::mark_sat(s, x, "point");
    } else {
      s.upper = x;
      detail::mark_unsat(s, eq_conflict ? "forced" : "bounded-interval");
    }
    return s;
  };
  if (eq_conflict) {
    ConstraintSystem s = detail::closed_system(1, 1, 0, 0, atoms, origin);
    s.upper = Int(1);
    detail::mark_unsat(s, "forced");
    return {s};
  }
  if (eq) return {point(*eq)};

  struct Case {
    int sign;
    Int lower;
    std::optional<Int> upper;
  };
  std::vector<Case> cases;
  std::vector<ConstraintSystem> out;
  if (L) cases.push_back({1, *L, U});
  else if (U) cases.push_back({-1, -*U, std::nullopt});
  else {
    cases.push_back({1, 0, std::nullopt});
    cases.push_back({-1, 0, std::nullopt});
    out.push_back(point(0));
  }

  for (const auto& cs : cases) {
    std::vector<Literal> flipped;
    std::vector<const Literal*> fm;
    flipped.reserve(mods.size());
    for (const auto* l : mods) {
      Literal f = *l;
      if (cs.sign < 0) {
        for (auto& r : f.residues) r = mod_floor(-r, f.m);
        std::sort(f.residues.begin(), f.residues.end());
      }
      flipped.push_back(std::move(f));
    }
    for (const auto& f : flipped) fm.push_back(&f);
    Int M = 1;
    std::vector<Int> rs = mods.empty() ? std::vector<Int>{Int(0)} : detail::combine_mods(fm, M);
    if (rs.empty()) {
      ConstraintSystem s = detail::closed_system(cs.sign, 1, 0, cs.lower, atoms, origin);
      s.upper = cs.lower + 1;
      s.log.push_back("crt:infeasible");
      detail::mark_unsat(s, "crt-infeasible");
      out.push_back(std::move(s));
      continue;
    }
    if (out.size() + rs.size() > kResidueSplitCap) throw std::length_error("too many residue classes");
    for (const auto& rho : rs) {
      // x' = M y + rho, x = sign x'
      std::vector<Atom> ys;
      for (auto at : atoms) {
        Int a = cs.sign * at.a;
        at.b = a * rho + at.b;
        at.a = a * M;
        ys.push_back(std::move(at));
      }
      ConstraintSystem s = detail::closed_system(cs.sign, M, rho, floor_div(cs.lower - rho, M), ys, origin);
      if (cs.upper) s.upper = ceil_div(*cs.upper - rho, M);
      if (M != 1) s.log.push_back("substitute:x'=" + M.get_str() + "y+" + rho.get_str());
      if (cs.sign < 0) s.log.push_back("sign-flip");
      for (auto& sys : detail::split_signs(std::move(s), ys, opt)) {
        detail::simplify_atoms(sys, opt);
        out.push_back(std::move(sys));
      }
    }
  }
  return out;
}

struct Normalized {
  Dnf dnf;
  std::vector<ConstraintSystem> systems;
};

// Disjuncts of the body (or of its negation).
inline Normalized normalize(const Sentence& s, bool negate_body = false, const SolverOptions& opt = {}) {
  Normalized n;
  n.dnf = to_dnf(s.body, !negate_body, s);
  for (const auto& c : n.dnf)
    for (auto& sys : systems_of(c, opt)) n.systems.push_back(std::move(sys));
  return n;
}

}  // namespace monapres
