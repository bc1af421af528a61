#pragma once

#include "solution_set.hpp"
#include "system.hpp"

#include <string>

namespace monapres {

// Value polynomial of an atom: t^k, t^2 or t^3 + D t.
inline RatPoly atom_poly(const Atom& at) {
  std::vector<Rat> c(at.k + 1, Rat(0));
  c[at.k] = 1;
  if (at.is_poly() && at.k == 3) c[1] = Rat(at.D);
  return RatPoly(c);
}

inline Int atom_value_poly(const Atom& at, const Int& t) {
  if (at.is_power()) return ipow(t, at.k);
  return at.f(t);
}

// {y : a*y + b = F(t), t admissible} as a family in t.
inline ImageFamily image_family(const Atom& at, const SolverOptions& opt) {
  ImageFamily f;
  f.p = make_rat(1, at.a) * (atom_poly(at) - RatPoly::constant(Rat(at.b)));
  f.modulus = lcm(at.a, at.q);
  f.label = at.str();
  if (f.modulus > opt.residue_cap) {
    f.lazy = true;
    f.residues.clear();
    return f;
  }
  f.residues.clear();
  std::int64_t Q = to_i64(f.modulus);
  Int bm = mod_floor(at.b, at.a);
  for (std::int64_t u = 0; u < Q; ++u) {
    Int U = from_i64(u);
    if (!at.residue_ok(U)) continue;
    Int v = at.is_power() ? powm(U, Int(at.k), at.a) : mod_floor(at.f(U), at.a);
    if (v == bm) f.residues.push_back(U);
  }
  return f;
}

inline SolutionSet single_atom_set(const Atom& at, const SolverOptions& opt, const std::string& label) {
  ImageFamily f = image_family(at, opt);
  if (!f.lazy && f.residues.empty()) return SolutionSet::empty("empty-residues");
  SolutionSet s;
  s.images.push_back(std::move(f));
  s.label = label;
  return s;
}

// Bounded enumeration over |t| <= H for the base atom, filtered by the others.
inline SolutionSet bounded_enumeration(const Atom& base, const std::vector<Atom>& others, const Int& lower,
                                       const SolverOptions& opt, const std::string& label) {
  ImageFamily f = image_family(base, opt);
  std::vector<Int> ys;
  const Int& H = opt.bound;
  auto consider = [&](const Int& t) {
    auto y = f.value(t);
    if (!y || *y <= lower) return;
    for (const auto& o : others)
      if (!o.predicate_at(*y)) return;
    ys.push_back(*y);
  };
  if (!f.lazy && f.modulus <= H) {
    for (Int blk = -H - mod_floor(-H, f.modulus); blk <= H; blk += f.modulus)
      for (const auto& u : f.residues) {
        Int t = blk + u;
        if (t >= -H && t <= H) consider(t);
      }
  } else {
    for (Int t = -H; t <= H; ++t) consider(t);
  }
  SolutionSet s = SolutionSet::of(std::move(ys), label, false);
  // members whose preimages all lie in |t| <= H
  Int Fhi = atom_value_poly(base, H + 1), Flo = atom_value_poly(base, -H - 1);
  Int c = critical_bound(atom_poly(base));
  if (H >= c) {
    Int top = ceil_div(Fhi - base.b, base.a) - 1;
    bool low_ok = base.k % 2 == 0 || lower >= floor_div(Flo - base.b, base.a);
    if (low_ok) s.complete_below = top;
  }
  return s;
}

inline void add_extras(SolutionSet& S, const std::vector<Int>& extras) {
  if (extras.empty() || S.all) return;
  std::vector<Int> xs = S.finite;
  xs.insert(xs.end(), extras.begin(), extras.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  S.finite = std::move(xs);
}

// Turn a solution set for the positive atoms into a verdict for the system.
inline Verdict resolve(const ConstraintSystem& sys, const SolutionSet& S, const SolverOptions& opt,
                       std::vector<std::string> trace) {
  trace.push_back(std::string("set:") + kind_name(S.kind()) + ":" + S.label);
  Verdict v;
  if (S.provably_empty()) {
    v = Verdict::unsat(S.label);
  } else {
    SearchResult r;
    try {
      r = search(S, sys.lower, sys.upper, [&](const Int& y) { return sys.accepts(y); }, opt);
    } catch (const std::length_error& e) {
      v = Verdict::unknown(std::string("resource-cap: ") + e.what(), opt.bound);
      v.trace = std::move(trace);
      return v;
    }
    switch (r.status) {
      case SearchResult::Status::Found: v = Verdict::sat(sys.x_of(*r.y)); break;
      case SearchResult::Status::Exhausted:
        if (r.exhaustive) {
          v = Verdict::unsat(S.infinite() || !S.complete ? "bounded-interval" : S.label);
          // the interval argument, not the set's label, is what certifies this
          if (!S.complete) trace.push_back("interval-complete:(" + sys.lower.get_str() + "," + sys.upper->get_str() + ")");
        } else {
          v = Verdict::unknown("bound-exhausted", opt.bound);
        }
        break;
      case SearchResult::Status::Capped: v = Verdict::unknown("scan-cap", Int(static_cast<unsigned long>(opt.scan_cap))); break;
    }
    trace.push_back("inspected:" + std::to_string(r.inspected));
  }
  v.trace = std::move(trace);
  return v;
}

}  // namespace monapres
