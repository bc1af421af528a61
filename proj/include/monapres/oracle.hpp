#pragma once

// Brute-force reference semantics, kept independent of the decision procedure.

#include "formula.hpp"
#include "numtheory.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace monapres::oracle {

namespace detail {

using i128 = __int128;

inline bool exact_root64(std::int64_t n, unsigned k, std::int64_t& root) {
  if (n < 0) {
    if (k % 2 == 0) return false;
    std::int64_t r;
    if (n == INT64_MIN || !exact_root64(-n, k, r)) return false;
    root = -r;
    return true;
  }
  if (n < 2) {
    root = n;
    return true;
  }
  if (k >= 63) return false;
  long double guess = std::pow(static_cast<long double>(n), 1.0L / k);
  std::int64_t g = static_cast<std::int64_t>(std::llround(guess));
  for (std::int64_t c = std::max<std::int64_t>(0, g - 2); c <= g + 2; ++c) {
    i128 p = 1;
    for (unsigned i = 0; i < k && p <= n; ++i) p *= c;
    if (p == n) {
      root = c;
      return true;
    }
  }
  return false;
}

// Integer polynomial G(u) = L*f(u) - L*v, coefficients low to high.
struct IntPred {
  std::vector<Int> g;       // without the -L*v term
  Int L;                    // common denominator
  std::int64_t middle{0};   // derivative roots lie in |u| <= middle
  std::vector<Int> middle_values;  // L*f(u) for |u| <= middle, sorted
  bool small{false};
  std::vector<std::int64_t> g64;

  explicit IntPred(const PredicateDecl& d) {
    RatPoly f = d.poly();
    L = common_denominator(f);
    for (const auto& c : f.c) g.push_back(Int(c * L));
    int deg = static_cast<int>(g.size()) - 1;
    if (deg >= 2) {
      // Cauchy bound on roots of the derivative
      Int lead = g[static_cast<std::size_t>(deg)] * deg;
      Int mx = 0;
      for (int i = 1; i < deg; ++i) mx = std::max(mx, Int(abs_int(g[static_cast<std::size_t>(i)] * i)));
      Int bound = ceil_div(mx, abs_int(lead)) + 1;
      middle = to_i64(bound);
      for (std::int64_t u = -middle; u <= middle; ++u) middle_values.push_back(eval_lf(from_i64(u)));
      std::sort(middle_values.begin(), middle_values.end());
    }
    small = true;
    for (const auto& c : g) {
      if (abs_int(c) > (Int(1) << 28)) small = false;
      else g64.push_back(to_i64(c));
    }
  }

  Int eval_lf(const Int& u) const {
    Int r = 0;
    for (std::size_t i = g.size(); i-- > 0;) r = r * u + g[i];
    return r;
  }
  i128 eval_lf64(std::int64_t u) const {
    i128 r = 0;
    for (std::size_t i = g64.size(); i-- > 0;) r = r * u + g64[i];
    return r;
  }

  // Is L*v attained at some integer u > middle (dir = +1) or u < -middle (dir = -1)?
  bool tail_hit(const Int& target, int dir) const {
    int deg = static_cast<int>(g.size()) - 1;
    Int lo = dir * (middle + 1);
    int s0 = sgn(Int(eval_lf(lo) - target));
    if (s0 == 0) return true;
    // value tends to sign(lead) * (dir^deg) * infinity
    int far = sgn(g.back()) * ((deg % 2 == 1 && dir < 0) ? -1 : 1);
    if (s0 == far) return false;  // monotone away from target
    Int step = 1, hi = lo;
    for (;;) {
      hi = lo + dir * step;
      int s = sgn(Int(eval_lf(hi) - target));
      if (s == 0) return true;
      if (s != s0) break;
      lo = hi;
      step *= 2;
    }
    // root strictly between lo and hi
    Int a = lo, b = hi;
    while (abs_int(b - a) > 1) {
      Int mid = floor_div(a + b, 2);
      int s = sgn(Int(eval_lf(mid) - target));
      if (s == 0) return true;
      if (s == s0) a = mid; else b = mid;
    }
    return false;
  }

  bool tail_hit64(i128 target, int dir, bool& ok) const {
    int deg = static_cast<int>(g64.size()) - 1;
    std::int64_t lo = dir * (middle + 1);
    auto sg = [](i128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
    int s0 = sg(eval_lf64(lo) - target);
    if (s0 == 0) return true;
    int far = (g64.back() > 0 ? 1 : -1) * ((deg % 2 == 1 && dir < 0) ? -1 : 1);
    if (s0 == far) return false;
    std::int64_t step = 1, hi = lo;
    for (;;) {
      hi = lo + dir * step;
      if (hi > (1LL << 30) || hi < -(1LL << 30)) {
        ok = false;
        return false;
      }
      int s = sg(eval_lf64(hi) - target);
      if (s == 0) return true;
      if (s != s0) break;
      lo = hi;
      step *= 2;
    }
    std::int64_t a = lo, b = hi;
    while (std::llabs(b - a) > 1) {
      std::int64_t mid = a + (b - a) / 2;
      int s = sg(eval_lf64(mid) - target);
      if (s == 0) return true;
      if (s == s0) a = mid; else b = mid;
    }
    return false;
  }

  bool member(const Int& v) const {
    int deg = static_cast<int>(g.size()) - 1;
    Int target = L * v;
    if (deg == 0) return g[0] == target;
    if (deg == 1) return divides(g[1], target - g[0]);
    if (std::binary_search(middle_values.begin(), middle_values.end(), target)) return true;
    if (small && fits_i64(target) && abs_int(target) < (Int(1) << 62)) {
      bool ok = true;
      i128 t = to_i64(target);
      bool hit = tail_hit64(t, 1, ok) || (ok && tail_hit64(t, -1, ok));
      if (ok) return hit;
    }
    return tail_hit(target, 1) || tail_hit(target, -1);
  }
};

}  // namespace detail

// Formula compiled against its declarations for repeated evaluation.
class Evaluator {
 public:
  explicit Evaluator(const Sentence& s) : s_(s) {
    for (const auto& d : s.decls) preds_.emplace_back(d);
    compile(s.body);
  }

  bool body_at(const Int& x) const {
    std::int64_t x64 = 0;
    bool fast = fits_i64(x) && abs_int(x) < (Int(1) << 40);
    if (fast) x64 = to_i64(x);
    return eval(0, x, x64, fast);
  }

  // Truth of "body holds at x" for the existential reading; for a universal sentence
  // the interesting points are where the body fails.
  bool interesting_at(const Int& x) const {
    bool b = body_at(x);
    return s_.quant == Quantifier::Exists ? b : !b;
  }

  bool pred_member(const std::string& name, const Int& v) const {
    for (std::size_t i = 0; i < s_.decls.size(); ++i)
      if (s_.decls[i].name == name) return preds_[i].member(v);
    throw std::out_of_range("unknown predicate " + name);
  }

 private:
  struct Node {
    Formula::Kind kind;
    std::vector<std::size_t> kids;
    Linear lhs, rhs;
    bool small{false};
    std::int64_t a{0}, b{0};  // lhs - rhs when small
    Int k, r;
    std::size_t pred{0};
  };
  const Sentence& s_;
  std::vector<detail::IntPred> preds_;
  std::vector<Node> nodes_;

  std::size_t compile(const Formula& f) {
    std::size_t id = nodes_.size();
    nodes_.push_back(Node{f.kind, {}, {}, {}, false, 0, 0, f.k, f.r, 0});
    std::vector<std::size_t> kids;
    for (const auto& c : f.children) kids.push_back(compile(c));
    Node& n = nodes_[id];
    n.kids = std::move(kids);
    if (!f.terms.empty()) n.lhs = linearize(f.terms[0]);
    if (f.terms.size() > 1) n.rhs = linearize(f.terms[1]);
    Int a = n.lhs.a - n.rhs.a, b = n.lhs.b - n.rhs.b;
    if (abs_int(a) < (Int(1) << 20) && abs_int(b) < (Int(1) << 60)) {
      n.small = true;
      n.a = to_i64(a);
      n.b = to_i64(b);
    }
    if (f.kind == Formula::Kind::Pred)
      for (std::size_t i = 0; i < s_.decls.size(); ++i)
        if (s_.decls[i].name == f.pred) n.pred = i;
    return id;
  }

  bool eval(std::size_t id, const Int& x, std::int64_t x64, bool fast) const {
    const Node& n = nodes_[id];
    using K = Formula::Kind;
    switch (n.kind) {
      case K::And:
        for (auto c : n.kids)
          if (!eval(c, x, x64, fast)) return false;
        return true;
      case K::Or:
        for (auto c : n.kids)
          if (eval(c, x, x64, fast)) return true;
        return false;
      case K::Not: return !eval(n.kids[0], x, x64, fast);
      default: break;
    }
    Int v;
    if (fast && n.small) {
      std::int64_t vv = n.a * x64 + n.b;
      switch (n.kind) {
        case K::Eq: return vv == 0;
        case K::Lt: return vv < 0;
        case K::Gt: return vv > 0;
        case K::Pow: {
          std::int64_t root;
          return detail::exact_root64(vv, static_cast<unsigned>(n.k.get_ui()), root);
        }
        default: v = from_i64(vv);
      }
    } else {
      v = (n.lhs.a - n.rhs.a) * x + (n.lhs.b - n.rhs.b);
    }
    switch (n.kind) {
      case K::Eq: return v == 0;
      case K::Lt: return v < 0;
      case K::Gt: return v > 0;
      case K::Mod: return mod_floor(v - n.r, n.k) == 0;
      case K::Pow: return kth_root(v, n.k.get_ui()).has_value();
      case K::Pred: return preds_[n.pred].member(v);
      default: return false;
    }
  }
};

inline bool eval_at(const Sentence& s, const Int& x) { return Evaluator(s).body_at(x); }

struct ScanReport {
  Int bound;
  std::vector<Int> witnesses;  // ascending by |x|, then x >= 0 first
  bool exhaustive{false};
};

// Points |x| <= B in the existential reading (body true for exists, body false for
// forall), visited in order 0, 1, -1, 2, -2, ...; stops after `cap` witnesses.
inline ScanReport scan(const Sentence& s, const Int& B, std::size_t cap = 64) {
  Evaluator ev(s);
  ScanReport rep;
  rep.bound = B;
  rep.exhaustive = true;
  auto visit = [&](const Int& x) {
    if (ev.interesting_at(x)) rep.witnesses.push_back(x);
    return rep.witnesses.size() < cap;
  };
  if (B < 0) return rep;
  if (!visit(Int(0))) {
    rep.exhaustive = B == 0;
    return rep;
  }
  for (Int i = 1; i <= B; ++i) {
    if (!visit(i) || !visit(Int(-i))) {
      rep.exhaustive = false;
      return rep;
    }
  }
  return rep;
}

// Second membership path: enumerate u outward while |f(u)| stays within reach of v.
inline bool pred_member_by_enumeration(const PredicateDecl& d, const Int& v, const Int& slack = 1000) {
  int deg = d.degree();
  if (deg == 0) return d.eval(Rat(0)) == Rat(v);
  Int limit = abs_int(v) + slack;
  Rat spread = 0;
  for (std::size_t i = 1; i < d.coeffs.size(); ++i) spread += abs(d.coeffs[i] / d.coeffs[0]) * deg;
  Int crit = ceil_rat(spread) + 1;  // |f| is monotone beyond this
  for (Int u = 0;; ++u) {
    bool in_range = false;
    for (const Int& uu : {u, Int(-u)}) {
      Rat fv = d.eval(Rat(uu));
      if (fv == Rat(v)) return true;
      if (abs(fv) <= Rat(limit)) in_range = true;
    }
    if (!in_range && u > crit) return false;
  }
}

}  // namespace monapres::oracle
