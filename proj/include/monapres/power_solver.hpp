#pragma once

#include "resolve.hpp"
#include "square_pair.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace monapres {

// c1 = Z^k(c y + d) against a positive c2 = Z^j(a y + b): when k | j and a d = b c, the truth
// of c1 is forced wherever c2 holds (except at the common zero), and is returned.
inline std::optional<bool> is_redundant(const Atom& c1, const Atom& c2) {
  if (!c1.is_power() || !c2.is_power()) return std::nullopt;
  if (c2.k % c1.k != 0 || c2.a * c1.b != c2.b * c1.a) return std::nullopt;
  Int t = c2.a * ipow(c1.a, c1.k - 1);
  return kth_root(t, c1.k).has_value();
}

inline bool similar(const Atom& x, const Atom& y) { return x.a * y.b == x.b * y.a; }

// Pairwise similar positive power atoms as one Z^K atom, or nullopt when only the
// common zero can satisfy them all.
inline std::optional<Atom> coalesce_similar(const std::vector<Atom>& atoms) {
  if (atoms.empty()) throw std::invalid_argument("coalesce_similar: no atoms");
  if (atoms.size() == 1) return atoms[0];
  Int g0 = gcd(atoms[0].a, atoms[0].b);
  Int a = atoms[0].a / g0, b = atoms[0].b / g0;
  unsigned long K = 1;
  std::vector<Int> lambda;
  for (const auto& at : atoms) {
    if (!at.is_power() || !at.positive || at.a <= 0) throw std::invalid_argument("coalesce_similar: positive power atoms with a > 0");
    if (at.a * b != at.b * a) throw std::invalid_argument("coalesce_similar: atoms are not similar");
    lambda.push_back(at.a / a);
    K = std::lcm(K, static_cast<unsigned long>(at.k));
  }
  std::set<Int> primes;
  for (const auto& l : lambda)
    for (const auto& [p, e] : factor(l).factors) primes.insert(p);
  Int mult = 1;
  for (const auto& p : primes) {
    // v_p(a y + b) = -v_p(lambda_i) mod k_i for every i
    std::vector<ResidueClass> cls;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      cls.emplace_back(Int(atoms[i].k), -Int(valuation(p, lambda[i])));
    auto s = crt_extended(cls);
    if (!s) return std::nullopt;
    Int rp = mod_floor(-s->residue, Int(K));
    mult *= ipow(p, rp.get_ui());
  }
  return Atom::power(true, static_cast<unsigned>(K), a * mult, b * mult);
}

namespace detail {

inline SolutionSet positive_pairs_or_bounded(const std::vector<Atom>& pos, const Int& lower, const SolverOptions& opt,
                                             std::vector<std::string>& trace) {
  // a complete pair of squares settles everything
  std::optional<SolutionSet> lrbs_base;
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      if (pos[i].k != 2 || pos[j].k != 2) continue;
      SquarePairResult sp;
      try {
        sp = solve_square_pair(pos[i], pos[j]);
      } catch (const std::length_error&) {
        continue;
      }
      if (sp.set.kind() != SolutionSet::Kind::Lrbs) {
        std::vector<Int> ys;
        for (const auto& y : sp.set.finite) {
          bool ok = true;
          for (const auto& o : pos) ok = ok && o.predicate_at(y);
          if (ok) ys.push_back(y);
        }
        trace.push_back("pair(" + std::to_string(i) + "," + std::to_string(j) + "):" + sp.set.label);
        return SolutionSet::of(std::move(ys), sp.set.label);
      }
      if (!lrbs_base) lrbs_base = sp.set;
    }
  if (lrbs_base) {
    std::vector<Int> ys;
    for (const auto& f : lrbs_base->lrbs)
      for (std::int64_t m = -opt.lrbs_index_bound; m <= opt.lrbs_index_bound; ++m) {
        auto y = f.value_at(m);
        if (!y || *y <= lower) continue;
        bool ok = true;
        for (const auto& o : pos) ok = ok && o.predicate_at(*y);
        if (ok) ys.push_back(*y);
      }
    trace.push_back("simultaneous-pell");
    return SolutionSet::of(std::move(ys), "simultaneous-pell-bounded", false);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < pos.size(); ++i)
    if (pos[i].k > pos[best].k) best = i;
  std::vector<Atom> others;
  for (std::size_t i = 0; i < pos.size(); ++i)
    if (i != best) others.push_back(pos[i]);
  trace.push_back("hyperelliptic-base:" + pos[best].str());
  return bounded_enumeration(pos[best], others, lower, opt, "hyperelliptic-baker-bounded");
}

}  // namespace detail

// Members of the positive atoms (pairwise non-similar, non-redundant, a > 0) above lower.
inline SolutionSet solve_positive(const std::vector<Atom>& pos, const Int& lower, const SolverOptions& opt,
                                  std::vector<std::string>* trace_out = nullptr) {
  std::vector<std::string> trace;
  SolutionSet S;
  if (pos.empty()) {
    S = SolutionSet::everything("case1-all");
  } else if (pos.size() == 1) {
    S = single_atom_set(pos[0], opt, "case2-images");
  } else if (pos.size() == 2 && pos[0].k == 2 && pos[1].k == 2) {
    S = solve_square_pair(pos[0], pos[1]).set;
    if (S.lrbs.empty() && S.label == "3b-pell") S.label = "3b-pell-index";
  } else if (pos.size() == 2) {
    std::size_t hi = pos[1].k > pos[0].k ? 1 : 0;
    S = bounded_enumeration(pos[hi], {pos[1 - hi]}, lower, opt, "3a-hyperelliptic-baker-bounded");
  } else {
    S = detail::positive_pairs_or_bounded(pos, lower, opt, trace);
  }
  if (trace_out) *trace_out = trace;
  return S;
}

inline Verdict decide(const ConstraintSystem& sys, const SolverOptions& opt = {}) {
  if (sys.resolved) return *sys.resolved;
  std::vector<std::string> trace{"power:l=" + std::to_string(sys.positives.size())};
  trace.insert(trace.end(), sys.log.begin(), sys.log.end());
  SolutionSet S;
  try {
    if (sys.only) {
      S = SolutionSet::of(*sys.only, sys.only_cert);
    } else {
      std::vector<std::string> t;
      S = solve_positive(sys.positives, sys.lower, opt, &t);
      trace.insert(trace.end(), t.begin(), t.end());
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
