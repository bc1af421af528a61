#pragma once

// Systems over depressed quadratic/cubic atoms.  Quadratic atoms read
// t^2 = a y + b, cubic ones t^3 + D t = a y + b, each with a stride
// condition on t.  Power atoms of exponent >= 4 may appear alongside.

#include "power_solver.hpp"
#include "resolve.hpp"
#include "square_pair.hpp"

#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace monapres {

// c1 against a positive c2 of the same degree and similar arguments: on the curve
// a2 F1(t1) = a1 F2(t2), the points are t1 = lambda t2 (and t1 = -lambda t2 for
// squares), plus finitely many ellipse points for cubics.  zero_only: only t1 = t2 = 0.
struct PolyRedundancy {
  bool zero_only{false};
  Rat lambda{0};
  std::vector<std::pair<Int, Int>> ellipse;  // (t1, t2)
};

namespace detail {

inline std::optional<Rat> rational_root(const Rat& q, unsigned k) {
  auto n = kth_root(q.get_num(), k), d = kth_root(q.get_den(), k);
  if (!n || !d) return std::nullopt;
  return make_rat(*n, *d);
}

}  // namespace detail

inline std::optional<PolyRedundancy> poly_redundant(const Atom& c1, const Atom& c2) {
  if (!c1.is_poly() || !c2.is_poly() || c2.k % c1.k != 0 || c1.k != c2.k) return std::nullopt;
  if (c1.a * c2.b != c2.a * c1.b) return std::nullopt;
  Rat mu = make_rat(c1.a, c2.a);
  PolyRedundancy out;
  if (c1.k == 2) {
    auto l = detail::rational_root(mu, 2);
    if (!l) out.zero_only = true;
    else out.lambda = *l;
    return out;
  }
  auto l = detail::rational_root(mu, 3);
  if (!l || Rat(c1.D) != *l * *l * Rat(c2.D)) {
    if (c1.D == 0 && c2.D == 0) {
      out.zero_only = true;
      return out;
    }
    return std::nullopt;
  }
  out.lambda = *l;
  // (t1 - l t2)(t1^2 + l t1 t2 + l^2 t2^2 + D1) = 0
  const Rat& lam = *l;
  if (c1.D < 0) {
    Rat bound2 = Rat(4 * abs_int(c1.D)) / Rat(3 * lam * lam);
    Int B = isqrt(Int(floor_rat(bound2))) + 1;
    for (Int t2 = -B; t2 <= B; ++t2) {
      Rat disc = Rat(-3 * lam * lam * t2 * t2) - Rat(4 * c1.D);
      if (disc < 0) continue;
      auto s = detail::rational_root(disc, 2);
      if (!s) continue;
      for (int sg : {1, -1}) {
        auto t1 = as_integer(Rat(Rat(-lam * t2 + sg * *s) / 2));
        if (t1) out.ellipse.emplace_back(*t1, t2);
      }
    }
    std::sort(out.ellipse.begin(), out.ellipse.end());
    out.ellipse.erase(std::unique(out.ellipse.begin(), out.ellipse.end()), out.ellipse.end());
  }
  return out;
}

// g = (alpha t + beta)^2 (gamma t + delta) for a quadratic/cubic pair.
struct CurveSplit {
  Int alpha, beta, gamma, delta;
};

// a2 t1^2 = g(t2) with g = a1 F2(t2) - a1 b2 + a2 b1.
inline IntPoly pair_curve(const Atom& quad, const Atom& cubic) {
  const Int &a1 = quad.a, &b1 = quad.b, &a2 = cubic.a, &b2 = cubic.b;
  return IntPoly({Int(a2 * b1 - a1 * b2), Int(a1 * cubic.D), Int(0), a1});
}

inline std::optional<CurveSplit> split_double_root(const IntPoly& g) {
  RatPoly G = to_rat(g);
  RatPoly h = poly_gcd(G, G.derivative());
  if (h.degree() < 1) return std::nullopt;
  Rat rho = h.degree() == 1 ? Rat(-h.c[0] / h.c[1]) : Rat(-h.c[1] / (2 * h.c[2]));
  CurveSplit s;
  s.alpha = rho.get_den();
  s.beta = -rho.get_num();
  RatPoly sq = RatPoly::linear(Rat(s.alpha), Rat(s.beta));
  auto [q, r] = divmod(G, sq * sq);
  if (!r.is_zero() || q.degree() != 1) return std::nullopt;
  auto qi = to_int(q);
  if (!qi) return std::nullopt;
  s.gamma = qi->c[1];
  s.delta = qi->c[0];
  return s;
}

namespace detail {

// t2 as a polynomial in v, where v^2 = a2 (gamma t2 + delta).
inline RatPoly t_of_v(const Int& a2, const CurveSplit& s) {
  Rat den = Rat(a2 * s.gamma);
  return RatPoly({Rat(Rat(-a2 * s.delta) / den), Rat(0), Rat(Rat(1) / den)});
}

inline RatPoly y_of_t(const Atom& cubic) { return make_rat(1, cubic.a) * (atom_poly(cubic) - RatPoly::constant(Rat(cubic.b))); }

inline bool cubic_t_ok(const Atom& cubic, const Int& t2) {
  return cubic.residue_ok(t2) && divides(cubic.a, cubic.f(t2) - cubic.b);
}

}  // namespace detail

// Quadratic and cubic whose curve has a double point: y as a degree-6 image family in v,
// plus the point with t1 = 0 on the double root.
inline SolutionSet split_family(const Atom& quad, const Atom& cubic, const CurveSplit& s, const SolverOptions& opt) {
  const Int& a2 = cubic.a;
  ImageFamily f;
  f.p = detail::y_of_t(cubic).compose(detail::t_of_v(a2, s));
  f.modulus = abs_int(a2 * s.gamma) * lcm(cubic.q, a2 * quad.q);
  f.label = "3c(" + quad.str() + "," + cubic.str() + ")";
  if (f.modulus > opt.residue_cap) {
    f.lazy = true;
    f.residues.clear();
  } else {
    f.residues.clear();
    std::int64_t Q = to_i64(f.modulus);
    for (std::int64_t vv = 0; vv < Q; ++vv) {
      Int v = from_i64(vv);
      Int num = v * v - a2 * s.delta;
      if (!divides(a2 * s.gamma, num)) continue;
      Int t2 = num / (a2 * s.gamma);
      if (!detail::cubic_t_ok(cubic, t2)) continue;
      Int n1 = v * (s.alpha * t2 + s.beta);
      if (!divides(a2, n1) || !quad.residue_ok(n1 / a2)) continue;
      f.residues.push_back(v);
    }
  }
  SolutionSet out;
  if (f.lazy || !f.residues.empty()) out.images.push_back(std::move(f));
  std::vector<Int> pts;
  if (divides(s.alpha, s.beta)) {
    Int rho = -s.beta / s.alpha;
    if (quad.residue_ok(0) && detail::cubic_t_ok(cubic, rho)) {
      Int y = (cubic.f(rho) - cubic.b) / a2;
      if (quad.predicate_at(y)) pts.push_back(y);
    }
  }
  std::sort(pts.begin(), pts.end());
  out.finite = pts;
  out.label = "3c-split";
  return out;
}

namespace detail {

// One cubic and two quadratics whose pair curves both split:
// (g3 v1)^2 - g1 g3 v3^2 = g3 a2 (g3 d1 - g1 d3).
inline std::optional<SolutionSet> pell_4c(const Atom& q1, const CurveSplit& s1, const Atom& q3, const CurveSplit& s3,
                                          const Atom& cubic, const SolverOptions& opt, std::vector<std::string>& trace) {
  const Int& a2 = cubic.a;
  Int n = s1.gamma * s3.gamma;
  Int N = s3.gamma * a2 * (s3.gamma * s1.delta - s1.gamma * s3.delta);
  if (N == 0) return std::nullopt;
  trace.push_back("4c:n=" + n.get_str() + ",N=" + N.get_str());
  RatPoly ymap = y_of_t(cubic).compose(t_of_v(a2, s3));

  auto y_from = [&](const Int& X, const Int& Y) -> std::optional<Int> {
    if (!divides(s3.gamma, X)) return std::nullopt;
    Int v1 = X / s3.gamma;
    Int num = Y * Y - a2 * s3.delta;
    if (!divides(a2 * s3.gamma, num)) return std::nullopt;
    Int t2 = num / (a2 * s3.gamma);
    if (!cubic_t_ok(cubic, t2)) return std::nullopt;
    Int n1 = v1 * (s1.alpha * t2 + s1.beta), n3 = Y * (s3.alpha * t2 + s3.beta);
    if (!divides(a2, n1) || !q1.residue_ok(n1 / a2) || !divides(a2, n3) || !q3.residue_ok(n3 / a2)) return std::nullopt;
    return Int((cubic.f(t2) - cubic.b) / a2);
  };

  // double points of either pair curve
  std::vector<Int> pts;
  for (const CurveSplit* s : {&s1, &s3}) {
    if (!divides(s->alpha, s->beta)) continue;
    Int t2 = -s->beta / s->alpha;
    if (!cubic_t_ok(cubic, t2)) continue;
    Int y = (cubic.f(t2) - cubic.b) / a2;
    if (q1.predicate_at(y) && q3.predicate_at(y)) pts.push_back(y);
  }

  if (n < 0) {
    Int bound = isqrt(Int(abs_int(N) / abs_int(n))) + 1;
    if (bound > opt.interval_cap) return std::nullopt;
    for (Int Y = -bound; Y <= bound; ++Y) {
      Int X2 = N + n * Y * Y;
      if (X2 < 0 || !is_square(X2)) continue;
      Int X = isqrt(X2);
      for (const Int& x : {X, Int(-X)})
        if (auto y = y_from(x, Y)) pts.push_back(*y);
    }
    return SolutionSet::of(std::move(pts), "4c-ellipse");
  }
  if (is_square(n)) {
    Int s = isqrt(n);
    for (const auto& [d, e] : divisor_pairs(N)) {
      if (!divides(2, d + e) || !divides(2 * s, e - d)) continue;
      Int X = (d + e) / 2, Y = (e - d) / (2 * s);
      if (auto y = y_from(X, Y)) pts.push_back(*y);
    }
    return SolutionSet::of(std::move(pts), "4c-divisor");
  }

  PellSolutionSet ps = solve_generalized(n, N);
  Int L = lcm(lcm(cubic.q, a2), lcm(a2 * q1.q, a2 * q3.q));
  Int Mw = abs_int(s3.gamma) * a2 * q1.q, Mz = abs_int(a2 * s3.gamma) * L;
  SolutionSet out = SolutionSet::of(std::move(pts), "4c-pell");
  for (const auto& cls : ps.classes) {
    for (int sign : {1, -1}) {
      Lrbs ws = cls.w_seq(sign), zs = cls.z_seq(sign);
      PeriodInfo pw = period_mod(ws, Mw), pz = period_mod(zs, Mz);
      std::int64_t P = lcm64(pw.period, pz.period);
      std::vector<std::int64_t> rs;
      for (std::int64_t m = 0; m < P; ++m)
        if (y_from(pw.table[static_cast<std::size_t>(m % pw.period)], pz.table[static_cast<std::size_t>(m % pz.period)]))
          rs.push_back(m);
      if (rs.empty()) continue;
      LrbsFamily f;
      f.seq = zs;
      f.map = ymap;
      f.index = IndexSet::progressions(P, std::move(rs)).minimized();
      f.radicand = n;
      f.unit = ps.fundamental;
      f.label = "4c(" + cls.rep.w.get_str() + "," + cls.rep.z.get_str() + (sign > 0 ? ")" : ")*-1");
      out.lrbs.push_back(std::move(f));
    }
  }
  return out;
}

inline SolutionSet filter_finite(const SolutionSet& s, const std::vector<Atom>& pos, const std::string& label) {
  std::vector<Int> ys;
  for (const auto& y : s.finite) {
    bool ok = true;
    for (const auto& o : pos) ok = ok && o.predicate_at(y);
    if (ok) ys.push_back(y);
  }
  return SolutionSet::of(std::move(ys), label, s.complete);
}

inline std::size_t highest_degree(const std::vector<Atom>& pos) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pos.size(); ++i)
    if (pos[i].k > pos[best].k) best = i;
  return best;
}

inline SolutionSet bounded_on(const std::vector<Atom>& pos, std::size_t base, const Int& lower, const SolverOptions& opt,
                              const std::string& label) {
  std::vector<Atom> others;
  for (std::size_t i = 0; i < pos.size(); ++i)
    if (i != base) others.push_back(pos[i]);
  return bounded_enumeration(pos[base], others, lower, opt, label);
}

}  // namespace detail

// Members of the positive atoms (non-redundant, a > 0) above lower.
inline SolutionSet solve_positive_poly(std::vector<Atom> pos, const Int& lower, const SolverOptions& opt,
                                       std::vector<std::string>* trace_out = nullptr) {
  std::vector<std::string> trace;
  for (auto& at : pos)
    if (at.is_power() && at.k <= 3) at = power_as_poly(at);
  std::vector<std::size_t> quads, cubics, powers;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (pos[i].is_power()) powers.push_back(i);
    else if (pos[i].k == 2) quads.push_back(i);
    else cubics.push_back(i);
  }
  SolutionSet S;
  auto done = [&](SolutionSet s) {
    if (trace_out) *trace_out = trace;
    return s;
  };
  if (pos.empty()) return done(SolutionSet::everything("case1-all"));
  if (pos.size() == 1) return done(single_atom_set(pos[0], opt, "case2-images"));

  if (powers.empty() && pos.size() == 2) {
    if (quads.size() == 2) {
      S = solve_square_pair(pos[0], pos[1]).set;
      if (S.lrbs.empty() && S.label == "3b-pell") S.label = "3b-pell-index";
      return done(S);
    }
    if (cubics.size() == 2) return done(detail::bounded_on(pos, 0, lower, opt, "3a-cubic-baker-bounded"));
    const Atom &qa = pos[quads[0]], &ca = pos[cubics[0]];
    auto sp = split_double_root(pair_curve(qa, ca));
    if (!sp) {
      trace.push_back("3c:squarefree");
      return done(bounded_enumeration(ca, {qa}, lower, opt, "3c-elliptic-baker-bounded"));
    }
    trace.push_back("3c:split(" + sp->alpha.get_str() + "," + sp->beta.get_str() + "," + sp->gamma.get_str() + "," +
                    sp->delta.get_str() + ")");
    return done(split_family(qa, ca, *sp, opt));
  }

  // three or more atoms (or powers mixed in): a complete pair settles everything
  for (std::size_t i = 0; i < quads.size(); ++i)
    for (std::size_t j = i + 1; j < quads.size(); ++j) {
      SquarePairResult sp;
      try {
        sp = solve_square_pair(pos[quads[i]], pos[quads[j]]);
      } catch (const std::length_error&) {
        continue;
      }
      if (sp.set.kind() != SolutionSet::Kind::Lrbs) {
        trace.push_back("pair:" + sp.set.label);
        return done(detail::filter_finite(sp.set, pos, sp.set.label));
      }
    }
  for (std::size_t c : cubics)
    for (std::size_t i = 0; i < quads.size(); ++i)
      for (std::size_t j = i + 1; j < quads.size(); ++j) {
        auto s1 = split_double_root(pair_curve(pos[quads[i]], pos[c]));
        auto s3 = split_double_root(pair_curve(pos[quads[j]], pos[c]));
        if (!s1 || !s3) continue;
        auto s = detail::pell_4c(pos[quads[i]], *s1, pos[quads[j]], *s3, pos[c], opt, trace);
        if (!s) continue;
        if (pos.size() == 3) return done(*s);
        if (s->lrbs.empty()) return done(detail::filter_finite(*s, pos, s->label));
        std::vector<Int> ys;
        for (const auto& f : s->lrbs)
          for (std::int64_t m = -opt.lrbs_index_bound; m <= opt.lrbs_index_bound; ++m)
            if (auto y = f.value_at(m); y && *y > lower) ys.push_back(*y);
        ys.insert(ys.end(), s->finite.begin(), s->finite.end());
        return done(detail::filter_finite(SolutionSet::of(std::move(ys), "", false), pos, "5-pell-bounded"));
      }
  std::size_t base = detail::highest_degree(pos);
  return done(detail::bounded_on(pos, base, lower, opt, pos.size() == 3 ? "4-baker-bounded" : "5-baker-bounded"));
}

namespace detail {

// Shortest linear recurrence of s over the rationals (Berlekamp-Massey):
// s_n = c_1 s_{n-1} + ... + c_L s_{n-L}.
inline std::vector<Rat> berlekamp_massey(const std::vector<Int>& s) {
  std::vector<Rat> C{Rat(1)}, B{Rat(1)};
  std::size_t L = 0, m = 1;
  Rat b = 1;
  for (std::size_t n = 0; n < s.size(); ++n) {
    Rat d = Rat(s[n]);
    for (std::size_t i = 1; i <= L && i < C.size(); ++i) d += C[i] * Rat(s[n - i]);
    if (d == 0) {
      ++m;
      continue;
    }
    std::vector<Rat> T = C;
    Rat coef = d / b;
    if (C.size() < B.size() + m) C.resize(B.size() + m, Rat(0));
    for (std::size_t i = 0; i < B.size(); ++i) C[i + m] -= coef * B[i];
    if (2 * L <= n) {
      L = n + 1 - L;
      B = T;
      b = d;
      m = 1;
    } else {
      ++m;
    }
  }
  C.resize(L + 1, Rat(0));
  std::vector<Rat> out;
  for (std::size_t i = 1; i <= L; ++i) out.push_back(-C[i]);
  return out;
}

inline Int binomial(unsigned n, unsigned k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Preimage used to follow a member sequence: the largest-magnitude admissible root.
inline std::optional<Int> follow_preimage(const Atom& N, const Int& v) {
  if (N.is_power()) {
    auto r = kth_root(v, N.k);
    if (r && N.k % 2 == 0) r = abs_int(*r);
    return r;
  }
  std::optional<Int> best;
  for (const auto& t : N.preimages(v))
    if (!best || abs_int(t) > abs_int(*best)) best = N.k == 2 ? abs_int(t) : t;
  return best;
}

inline bool admissible_pm(const Atom& N, const Int& t) {
  if (N.is_power()) return true;
  return N.residue_ok(t) || (N.k % 2 == 0 && N.residue_ok(-t));
}

}  // namespace detail

struct DiscardReport {
  IndexSet residual;
  std::vector<std::pair<std::int64_t, std::int64_t>> discarded;  // (modulus, residue)
};

// Indices of the family at which the negated predicate N certainly holds, taken out of
// its index set.  A progression is discarded when the preimages of N along it follow an
// integral reversible recurrence and N's equation holds identically; the identity is
// verified on more consecutive terms than the order of the difference sequence.
inline DiscardReport subtract_discarded(const LrbsFamily& f, const Atom& N, int max_refine = 6) {
  DiscardReport rep;
  rep.residual = f.index;
  if (f.index.complement || !f.index.included.empty() || !f.index.excluded.empty()) return rep;
  const std::int64_t P0 = f.index.modulus;
  const unsigned kN = N.k;
  const unsigned dm = static_cast<unsigned>(std::max(1, f.map.degree()));
  const unsigned dz = static_cast<unsigned>(f.seq.order());
  IndexSet gone = IndexSet::none();
  for (int r = 1; r <= max_refine; ++r) {
    std::int64_t Lstep = P0 * r;
    for (std::int64_t rho = 0; rho < Lstep; ++rho) {
      if (!f.index.contains(rho) || gone.contains(rho)) continue;
      const std::size_t W = 24;
      std::vector<Int> ts, ys;
      bool ok = true;
      for (std::size_t s = 0; s < W && ok; ++s) {
        auto y = f.value_at(rho + Lstep * static_cast<std::int64_t>(s));
        if (!y) { ok = false; break; }
        auto t = detail::follow_preimage(N, N.value(*y));
        if (!t) { ok = false; break; }
        ys.push_back(*y);
        ts.push_back(*t);
      }
      if (!ok) continue;
      std::vector<Rat> rc = detail::berlekamp_massey(ts);
      if (rc.empty() || 2 * rc.size() + 4 > W) continue;
      std::vector<Int> coeffs;
      for (const auto& c : rc) {
        auto ci = as_integer(c);
        if (!ci) { ok = false; break; }
        coeffs.push_back(*ci);
      }
      if (!ok || abs_int(coeffs.back()) != 1) continue;
      Lrbs tseq(coeffs, std::vector<Int>(ts.begin(), ts.begin() + static_cast<std::ptrdiff_t>(coeffs.size())));
      unsigned R = static_cast<unsigned>(coeffs.size());
      Int omega = detail::binomial(R + kN, kN) + detail::binomial(dz + dm, dm) + 1;
      if (omega > 2000) continue;
      std::size_t need = std::max<std::size_t>(W, omega.get_ui());
      std::vector<Int> gen = tseq.range(0, static_cast<std::int64_t>(need) - 1);
      for (std::size_t s = 0; s < need && ok; ++s) {
        Int y = s < ys.size() ? ys[s] : *f.value_at(rho + Lstep * static_cast<std::int64_t>(s));
        Int v = N.is_power() ? ipow(gen[s], kN) : N.f(gen[s]);
        ok = v == N.value(y);
      }
      if (!ok) continue;
      std::int64_t per = 1;
      std::vector<std::int64_t> sub;
      if (N.is_power()) {
        sub.push_back(0);
      } else {
        PeriodInfo pi = period_mod(tseq, N.q, 1000000);
        per = pi.period;
        for (std::int64_t s = 0; s < per; ++s)
          if (detail::admissible_pm(N, pi.table[static_cast<std::size_t>(s)])) sub.push_back(s);
      }
      std::int64_t mod = Lstep * per;
      std::vector<std::int64_t> rs;
      for (auto s0 : sub) rs.push_back(rho + Lstep * s0);
      for (auto x : rs) rep.discarded.emplace_back(mod, mod_index(x, mod));
      IndexSet add = IndexSet::progressions(mod, rs);
      std::int64_t M = lcm64(gone.modulus, mod);
      std::vector<std::int64_t> u = gone.residues_mod(M), w = add.residues_mod(M);
      u.insert(u.end(), w.begin(), w.end());
      gone = IndexSet::progressions(M, u).minimized();
    }
  }
  rep.residual = subtract(f.index, gone).minimized();
  return rep;
}

inline Verdict decide_poly(const ConstraintSystem& sys, const SolverOptions& opt = {}) {
  if (sys.resolved) return *sys.resolved;
  std::vector<std::string> trace{"poly:l=" + std::to_string(sys.positives.size())};
  trace.insert(trace.end(), sys.log.begin(), sys.log.end());
  SolutionSet S;
  try {
    if (sys.only) {
      S = SolutionSet::of(*sys.only, sys.only_cert);
    } else {
      std::vector<std::string> t;
      S = solve_positive_poly(sys.positives, sys.lower, opt, &t);
      trace.insert(trace.end(), t.begin(), t.end());
      if (!S.lrbs.empty() && S.label.rfind("3b", 0) == 0 && !sys.negatives.empty()) {
        bool all_gone = true;
        for (auto& f : S.lrbs) {
          for (const auto& N : sys.negatives) {
            DiscardReport d = subtract_discarded(f, N.negated());
            if (!d.discarded.empty()) trace.push_back("discarded:" + N.str() + " from " + f.label);
            f.index = d.residual;
          }
          all_gone = all_gone && f.index.is_empty();
        }
        if (all_gone) {
          S.lrbs.clear();
          if (S.finite.empty() && !S.all && S.images.empty()) S.label = "pell-index";
        }
      }
      add_extras(S, sys.extras);
    }
  } catch (const std::length_error& e) {
    Verdict v = Verdict::unknown(std::string("resource-cap: ") + e.what(), opt.bound);
    v.trace = trace;
    return v;
  }
  return resolve(sys, S, opt, std::move(trace));
}

}  // namespace monapres
