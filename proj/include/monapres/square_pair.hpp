#pragma once

// Two square constraints t1^2 = a1*y + b1, t2^2 = a2*y + b2 (with stride conditions on t1, t2).
// Eliminating y gives (a2 t1)^2 - a1 a2 t2^2 = a2 (a2 b1 - a1 b2).

#include "atoms.hpp"
#include "pell.hpp"
#include "solution_set.hpp"

#include <optional>
#include <string>

namespace monapres {

struct SquarePairResult {
  SolutionSet set;
  Int n, N;
  std::optional<PellSolutionSet> pell;
};

inline RatPoly square_map(const Atom& at) {
  // y = (t^2 - b) / a
  return RatPoly({make_rat(-at.b, at.a), Rat(0), make_rat(1, at.a)});
}

inline SquarePairResult solve_square_pair(const Atom& A1, const Atom& A2) {
  if (A1.k != 2 || A2.k != 2 || A1.a <= 0 || A2.a <= 0) throw std::invalid_argument("solve_square_pair: need a > 0 squares");
  const Int &a1 = A1.a, &b1 = A1.b, &a2 = A2.a, &b2 = A2.b;
  SquarePairResult out;
  Int K = a2 * b1 - a1 * b2;
  if (K == 0) throw std::invalid_argument("solve_square_pair: atoms are similar");
  out.n = a1 * a2;
  out.N = a2 * K;

  auto valid = [&](const Int& w, const Int& z) {
    return divides(a2, w) && A1.residue_ok(w / a2) && A2.residue_ok(z) && divides(a2, z * z - b2);
  };

  if (is_square(out.n)) {
    Int s = isqrt(out.n);
    std::vector<Int> ys;
    for (const auto& [d, e] : divisor_pairs(out.N)) {
      Int sum = d + e, diff = e - d;
      if (!divides(2, sum) || !divides(2 * s, diff)) continue;
      Int w = sum / 2, z = diff / (2 * s);
      if (valid(w, z)) ys.push_back((z * z - b2) / a2);
    }
    out.set = SolutionSet::of(std::move(ys), "3b-divisor");
    return out;
  }

  out.pell = solve_generalized(out.n, out.N);
  Int Mw = a2 * A1.q, Mz = lcm(A2.q, a2);
  for (const auto& cls : out.pell->classes) {
    for (int sign : {1, -1}) {
      Lrbs ws = cls.w_seq(sign), zs = cls.z_seq(sign);
      PeriodInfo pw = period_mod(ws, Mw), pz = period_mod(zs, Mz);
      std::int64_t P = lcm64(pw.period, pz.period);
      std::vector<std::int64_t> rs;
      for (std::int64_t m = 0; m < P; ++m) {
        const Int& wr = pw.table[static_cast<std::size_t>(m % pw.period)];
        const Int& zr = pz.table[static_cast<std::size_t>(m % pz.period)];
        if (valid(wr, zr)) rs.push_back(m);
      }
      if (rs.empty()) continue;
      LrbsFamily f;
      f.seq = zs;
      f.map = square_map(A2);
      f.index = IndexSet::progressions(P, std::move(rs)).minimized();
      f.radicand = out.n;
      f.unit = out.pell->fundamental;
      f.label = "pell(" + cls.rep.w.get_str() + "," + cls.rep.z.get_str() + (sign > 0 ? ")" : ")*-1");
      out.set.lrbs.push_back(std::move(f));
    }
  }
  out.set.label = "3b-pell";
  return out;
}

}  // namespace monapres
