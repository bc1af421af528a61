#pragma once

#include "formula.hpp"
#include "numtheory.hpp"
#include "polynomial.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace monapres {

// Z^k(a*y + b), or R(a*y + b, q, C) for a depressed predicate:
// exists t with t^2 = a*y + b (degree 2) or t^3 + D*t = a*y + b (degree 3), t mod q in C.
struct Atom {
  enum class Type { Power, Poly };
  Type type{Type::Power};
  bool positive{true};
  unsigned k{2};  // exponent, or predicate degree
  Int a{1}, b{0};
  Int D{0};
  Int q{1};
  std::vector<Int> residues{Int(0)};  // sorted, in [0, q)
  std::string name;                   // originating predicate, for reports

  static Atom power(bool pos, unsigned k, Int a, Int b) {
    Atom x;
    x.type = Type::Power;
    x.positive = pos;
    x.k = k;
    x.a = std::move(a);
    x.b = std::move(b);
    return x;
  }

  bool is_power() const { return type == Type::Power; }
  bool is_poly() const { return type == Type::Poly; }
  Int value(const Int& y) const { return a * y + b; }

  // Integer preimages t of v under the depressed polynomial (poly atoms).
  std::vector<Int> preimages(const Int& v) const {
    std::vector<Int> out;
    if (k == 2) {
      if (!is_square(v)) return out;
      Int s = isqrt(v);
      out.push_back(-s);
      if (s != 0) out.push_back(s);
      return out;
    }
    return integer_roots(IntPoly({Int(-v), D, Int(0), Int(1)}));
  }

  bool residue_ok(const Int& t) const { return std::binary_search(residues.begin(), residues.end(), mod_floor(t, q)); }

  // Truth of the underlying predicate, ignoring the sign.
  bool predicate_at(const Int& y) const {
    Int v = value(y);
    if (is_power()) return kth_root(v, k).has_value();
    for (const Int& t : preimages(v))
      if (residue_ok(t)) return true;
    return false;
  }
  bool holds(const Int& y) const { return predicate_at(y) == positive; }

  Int f(const Int& t) const { return k == 2 ? Int(t * t) : Int(t * t * t + D * t); }

  Atom negated() const {
    Atom x = *this;
    x.positive = !x.positive;
    return x;
  }
  bool same_predicate(const Atom& o) const {
    return type == o.type && k == o.k && a == o.a && b == o.b && D == o.D && q == o.q && residues == o.residues;
  }
  bool operator==(const Atom& o) const { return same_predicate(o) && positive == o.positive; }

  std::string str() const {
    std::string arg = a.get_str() + "y" + (b < 0 ? "-" + Int(-b).get_str() : "+" + b.get_str());
    std::string s = positive ? "" : "not ";
    if (is_power()) return s + "Z^" + std::to_string(k) + "(" + arg + ")";
    std::string f = k == 2 ? "t^2" : (D == 0 ? "t^3" : "t^3" + std::string(D < 0 ? "" : "+") + D.get_str() + "t");
    std::string rs;
    for (const auto& r : residues) rs += (rs.empty() ? "" : ",") + r.get_str();
    return s + "R[" + f + "](" + arg + "; t mod " + q.get_str() + " in {" + rs + "})";
  }
};

// Poly atom for a power atom of exponent 2 or 3.
inline Atom power_as_poly(const Atom& p) {
  Atom x = p;
  x.type = Atom::Type::Poly;
  x.D = 0;
  x.q = 1;
  x.residues = {Int(0)};
  x.name = "Z" + std::to_string(p.k);
  return x;
}

struct DepressedPred {
  unsigned degree{2};
  Int D{0};
  Int a, b, q{1};
  std::vector<Int> residues;
};

// R(a*x + b) for an integer-valued f of degree 2 or 3, as an equivalent depressed atom.
inline DepressedPred depress(const PredicateDecl& pred, const Int& a, const Int& b) {
  int d = pred.degree();
  if (d != 2 && d != 3) throw std::invalid_argument("depress: degree must be 2 or 3");
  if (a == 0) throw std::invalid_argument("depress: a must be nonzero");
  RatPoly f = pred.poly();
  Int L = common_denominator(f);
  int sigma = sgn(f.lead());
  std::vector<Int> C;
  for (const auto& c : f.c) C.push_back(Int(c * L * sigma));
  Int sL = L * sigma;
  DepressedPred out;
  out.degree = static_cast<unsigned>(d);
  Int r;
  if (d == 2) {
    // (2 C2 u + C1)^2 = 4 C2 sL (a x + b) + C1^2 - 4 C2 C0
    out.q = 2 * C[2];
    r = C[1];
    out.a = 4 * C[2] * sL * a;
    out.b = 4 * C[2] * sL * b + C[1] * C[1] - 4 * C[2] * C[0];
  } else {
    // t = 3 C3 u + C2, t^3 + (9 C1 C3 - 3 C2^2) t = 27 C3^2 G + 9 C1 C2 C3 - 2 C2^3 - 27 C3^2 C0
    Int C32 = C[3] * C[3];
    out.q = 3 * C[3];
    r = C[2];
    out.D = 9 * C[1] * C[3] - 3 * C[2] * C[2];
    out.a = 27 * C32 * sL * a;
    out.b = 27 * C32 * sL * b - 27 * C32 * C[0] + 9 * C[1] * C[2] * C[3] - 2 * C[2] * C[2] * C[2];
  }
  r = mod_floor(r, out.q);
  // t = g t' whenever g | q, g | r and the equation scales
  std::vector<Int> ds = divisors(gcd(out.q, r));
  for (auto it = ds.rbegin(); it != ds.rend(); ++it) {
    const Int& h = *it;
    if (h == 1) break;
    Int h2 = h * h, h3 = h2 * h;
    bool ok = d == 2 ? (divides(h2, out.a) && divides(h2, out.b))
                     : (divides(h2, out.D) && divides(h3, out.a) && divides(h3, out.b));
    if (!ok) continue;
    if (d == 2) {
      out.a /= h2;
      out.b /= h2;
    } else {
      out.D /= h2;
      out.a /= h3;
      out.b /= h3;
    }
    out.q /= h;
    r /= h;
    break;
  }
  out.residues = {mod_floor(r, out.q)};
  return out;
}

inline Atom poly_atom(bool positive, const PredicateDecl& pred, const Int& a, const Int& b) {
  DepressedPred dp = depress(pred, a, b);
  Atom x;
  x.type = Atom::Type::Poly;
  x.positive = positive;
  x.k = dp.degree;
  x.a = dp.a;
  x.b = dp.b;
  x.D = dp.D;
  x.q = dp.q;
  x.residues = dp.residues;
  x.name = pred.name;
  return x;
}

}  // namespace monapres
