#pragma once

#include "normalize.hpp"
#include "oracle.hpp"

#include <chrono>
#include <string>
#include <vector>

namespace monapres {

struct SystemReport {
  std::string origin;
  Verdict verdict;
  std::vector<std::string> log;
  double ms{0};
};

struct Decision {
  Verdict verdict;
  bool has_witness{false};  // false for true universal sentences
  std::vector<SystemReport> systems;
  std::vector<std::string> log;  // coalescing / redundancy steps, all disjuncts
  double normalize_ms{0}, solve_ms{0};
};

inline Verdict decide_system(const ConstraintSystem& sys, const SolverOptions& opt = {}) {
  return sys.has_poly() ? decide_poly(sys, opt) : decide(sys, opt);
}

namespace detail {

inline bool better_witness(const Int& x, const Int& y) {
  Int ax = abs_int(x), ay = abs_int(y);
  if (ax != ay) return ax < ay;
  return x > y;
}

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// exists x. (negate ? not body : body)
inline Decision decide_exists(const Sentence& s, bool negate, const SolverOptions& opt) {
  Decision d;
  auto t0 = std::chrono::steady_clock::now();
  Normalized n;
  try {
    n = normalize(s, negate, opt);
  } catch (const std::length_error& e) {
    d.verdict = Verdict::unknown(std::string("resource-cap: ") + e.what(), opt.bound);
    d.normalize_ms = ms_since(t0);
    return d;
  }
  d.normalize_ms = ms_since(t0);
  oracle::Evaluator ev(s);
  auto t1 = std::chrono::steady_clock::now();
  std::optional<Int> best;
  bool all_unsat = true;
  std::string unknown_reason;
  Int unknown_bound = opt.bound;
  for (const auto& sys : n.systems) {
    auto ts = std::chrono::steady_clock::now();
    SystemReport r;
    r.origin = sys.origin;
    r.log = sys.log;
    r.verdict = decide_system(sys, opt);
    if (r.verdict.is_sat() && ev.body_at(r.verdict.witness) == negate) {
      // never report a witness the formula does not accept
      r.verdict = Verdict::unknown("internal: witness failed verification", opt.bound);
    }
    r.ms = ms_since(ts);
    for (const auto& l : sys.log) d.log.push_back(l);
    if (r.verdict.is_sat()) {
      all_unsat = false;
      if (!best || better_witness(r.verdict.witness, *best)) best = r.verdict.witness;
    } else if (r.verdict.is_unknown()) {
      all_unsat = false;
      if (unknown_reason.empty()) {
        unknown_reason = r.verdict.reason;
        unknown_bound = r.verdict.bound;
      }
    }
    d.systems.push_back(std::move(r));
  }
  d.solve_ms = ms_since(t1);
  if (best) {
    d.verdict = Verdict::sat(*best);
    d.has_witness = true;
  } else if (all_unsat) {
    std::string cert;
    for (const auto& r : d.systems) cert += (cert.empty() ? "" : ",") + r.verdict.certificate;
    d.verdict = Verdict::unsat(cert.empty() ? "no-disjuncts" : cert);
  } else {
    d.verdict = Verdict::unknown(unknown_reason, unknown_bound);
  }
  for (const auto& r : d.systems)
    d.verdict.trace.insert(d.verdict.trace.end(), r.verdict.trace.begin(), r.verdict.trace.end());
  return d;
}

}  // namespace detail

// Truth of the sentence: Sat means true (with a witness for existential sentences),
// Unsat means false (with a counterexample in the trace for universal ones).
inline Decision decide_sentence(const Sentence& s, const SolverOptions& opt = {}) {
  if (s.quant == Quantifier::Exists) return detail::decide_exists(s, false, opt);
  Decision d = detail::decide_exists(s, true, opt);
  Verdict v = d.verdict;
  if (v.is_sat()) {
    d.verdict = Verdict::unsat("counterexample x=" + v.witness.get_str());
    d.verdict.trace = v.trace;
    d.has_witness = false;
  } else if (v.is_unsat()) {
    d.verdict = Verdict::sat(0);
    d.verdict.trace = v.trace;
    d.verdict.certificate = v.certificate;
    d.has_witness = false;
  }
  return d;
}

}  // namespace monapres
