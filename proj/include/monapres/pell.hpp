#pragma once

#include "lrbs.hpp"
#include "quadnum.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace monapres {

struct PellPair {
  Int w, z;
  bool operator==(const PellPair&) const = default;
  bool operator<(const PellPair& o) const { return w != o.w ? w < o.w : z < o.z; }
};

struct ContinuedFraction {
  Int a0;
  std::vector<Int> period;  // periodic part of sqrt(n)
};

inline void check_pell_radicand(const Int& n) {
  if (n < 2 || is_square(n)) throw std::invalid_argument("Pell coefficient must be a positive non-square >= 2");
}

inline ContinuedFraction sqrt_continued_fraction(const Int& n) {
  check_pell_radicand(n);
  ContinuedFraction cf;
  cf.a0 = isqrt(n);
  Int m = 0, d = 1, a = cf.a0;
  do {
    m = d * a - m;
    d = (n - m * m) / d;
    a = (cf.a0 + m) / d;
    cf.period.push_back(a);
  } while (a != 2 * cf.a0);
  return cf;
}

namespace detail {

// Convergent p_{L-1}/q_{L-1} at the end of the first period.
inline PellPair period_convergent(const Int& n) {
  ContinuedFraction cf = sqrt_continued_fraction(n);
  Int p0 = 1, q0 = 0, p1 = cf.a0, q1 = 1;
  for (std::size_t i = 0; i + 1 < cf.period.size(); ++i) {
    Int p2 = cf.period[i] * p1 + p0, q2 = cf.period[i] * q1 + q0;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
  }
  return {p1, q1};
}

}  // namespace detail

// Minimal positive solution of w^2 - n z^2 = 1.
inline PellPair fundamental(const Int& n) {
  ContinuedFraction cf = sqrt_continued_fraction(n);
  PellPair c = detail::period_convergent(n);
  if (cf.period.size() % 2 == 0) return c;
  return {c.w * c.w + n * c.z * c.z, 2 * c.w * c.z};
}

// Minimal positive solution of w^2 - n z^2 = -1, if one exists.
inline std::optional<PellPair> negative_unit(const Int& n) {
  ContinuedFraction cf = sqrt_continued_fraction(n);
  if (cf.period.size() % 2 == 0) return std::nullopt;
  return detail::period_convergent(n);
}

inline PellPair unit_mul(const PellPair& p, const PellPair& u, const Int& n) {
  return {p.w * u.w + n * p.z * u.z, p.w * u.z + p.z * u.w};
}
inline PellPair unit_div(const PellPair& p, const PellPair& u, const Int& n) {
  return {p.w * u.w - n * p.z * u.z, p.z * u.w - p.w * u.z};
}

struct PellClass {
  Int n, N;
  PellPair rep;
  PellPair fundamental;

  // A class is the orbit of +-rep; sign selects one of the two bi-sequences.
  Lrbs w_seq(int sign = 1) const {
    PellPair next = unit_mul(rep, fundamental, n);
    return Lrbs({2 * fundamental.w, Int(-1)}, {sign * rep.w, sign * next.w});
  }
  Lrbs z_seq(int sign = 1) const {
    PellPair next = unit_mul(rep, fundamental, n);
    return Lrbs({2 * fundamental.w, Int(-1)}, {sign * rep.z, sign * next.z});
  }
  QuadNum epsilon() const { return QuadNum(Rat(fundamental.w), Rat(fundamental.z), n); }
  // w_m = A1 eps^m + A2 eps^-m, z_m = B1 eps^m + B2 eps^-m.
  QuadNum A1() const { return QuadNum(Rat(rep.w, 2), Rat(rep.z, 2), n); }
  QuadNum A2() const { return QuadNum(Rat(rep.w, 2), Rat(-rep.z, 2), n); }
  QuadNum B1() const { return QuadNum(Rat(rep.z, 2), Rat(rep.w, 2 * n), n); }
  QuadNum B2() const { return QuadNum(Rat(rep.z, 2), Rat(-rep.w, 2 * n), n); }
};

struct PellSolutionSet {
  Int n, N;
  PellPair fundamental;
  std::vector<PellClass> classes;
};

// Element of the orbit of +-p with minimal |w|, then z >= 0, then w >= 0.
inline PellPair canonical_rep(PellPair p, const PellPair& u, const Int& n) {
  for (;;) {
    PellPair up = unit_mul(p, u, n), down = unit_div(p, u, n);
    if (abs_int(up.w) < abs_int(p.w)) p = up;
    else if (abs_int(down.w) < abs_int(p.w)) p = down;
    else break;
  }
  auto better = [](const PellPair& q, const PellPair& b) {
    if (abs_int(q.w) != abs_int(b.w)) return abs_int(q.w) < abs_int(b.w);
    if ((q.z >= 0) != (b.z >= 0)) return q.z >= 0;
    if (abs_int(q.z) != abs_int(b.z)) return abs_int(q.z) < abs_int(b.z);
    return q.w >= 0 && b.w < 0;
  };
  PellPair best = p;
  for (const PellPair& q0 : {p, unit_mul(p, u, n), unit_div(p, u, n)})
    for (const PellPair& q : {q0, PellPair{-q0.w, -q0.z}})
      if (better(q, best)) best = q;
  return best;
}

namespace detail {

// PQa expansion of (P0 + sqrt(D)) / Q0; returns (G_{i-1}, B_{i-1}) at the first i >= 1
// with Q_i = +-1, or nothing if the expansion cycles first.
inline std::optional<PellPair> pqa_unit_hit(const Int& P0, const Int& Q0, const Int& D) {
  Int s = isqrt(D);
  Int P = P0, Q = Q0;
  Int A2 = 0, A1 = 1, B2 = 1, B1 = 0, G2 = -P0, G1 = Q0;
  std::set<std::pair<Int, Int>> seen;
  for (;;) {
    Int a = Q > 0 ? floor_div(P + s, Q) : Int(-(floor_div(P + s, -Q) + 1));
    Int A = a * A1 + A2, B = a * B1 + B2, G = a * G1 + G2;
    A2 = A1; A1 = A; B2 = B1; B1 = B; G2 = G1; G1 = G;
    Int Pn = a * Q - P;
    Int Qn = (D - Pn * Pn) / Q;
    P = Pn;
    Q = Qn;
    if (Q == 1 || Q == -1) return PellPair{G1, B1};
    if (!seen.insert({P, Q}).second) return std::nullopt;
  }
}

}  // namespace detail

// All solution classes of w^2 - n z^2 = N under multiplication by the fundamental unit.
inline PellSolutionSet solve_generalized(const Int& n, const Int& N) {
  check_pell_radicand(n);
  if (N == 0) throw std::invalid_argument("solve_generalized: N must be nonzero");
  PellSolutionSet out;
  out.n = n;
  out.N = N;
  out.fundamental = fundamental(n);
  std::optional<PellPair> neg = negative_unit(n);
  std::set<PellPair> reps;
  auto add = [&](const PellPair& p) {
    if (p.w * p.w - n * p.z * p.z != N) throw std::logic_error("solve_generalized: bad representative");
    reps.insert(canonical_rep(p, out.fundamental, n));
  };
  Int absN = abs_int(N);
  for (const Int& f : divisors(absN)) {
    if (!divides(f * f, absN)) continue;
    Int m = N / (f * f);
    Int am = abs_int(m);
    if (am > 200000000) throw std::length_error("solve_generalized: right-hand side too large");
    std::int64_t mm = to_i64(am);
    std::int64_t nres = to_i64(mod_floor(n, am));
    for (std::int64_t z0 = 0; z0 < mm; ++z0) {
      __int128 sq = static_cast<__int128>(z0) * z0;
      if (static_cast<std::int64_t>(sq % mm) != nres) continue;
      std::int64_t z = z0 > mm / 2 ? z0 - mm : z0;  // z in (-|m|/2, |m|/2]
      if (mm == 1) z = 0;
      if (mm == 2 && z0 == 1) z = 1;
      auto hit = detail::pqa_unit_hit(from_i64(z), am, n);
      if (!hit) continue;
      Int r = hit->w, t = hit->z;
      Int val = r * r - n * t * t;
      if (val == m) {
        add({f * r, f * t});
      } else if (val == -m && neg) {
        add({f * (r * neg->w + t * n * neg->z), f * (r * neg->z + t * neg->w)});
      }
    }
  }
  for (const auto& p : reps) out.classes.push_back(PellClass{n, N, p, out.fundamental});
  return out;
}

// Solutions at indices lo..hi of every class, both signs.
inline std::vector<PellPair> expand(const PellSolutionSet& set, std::int64_t lo, std::int64_t hi) {
  std::vector<PellPair> out;
  for (const auto& c : set.classes)
    for (int sign : {1, -1}) {
      std::vector<Int> ws = c.w_seq(sign).range(lo, hi), zs = c.z_seq(sign).range(lo, hi);
      for (std::size_t i = 0; i < ws.size(); ++i) out.push_back({ws[i], zs[i]});
    }
  return out;
}

}  // namespace monapres
