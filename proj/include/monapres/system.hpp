#pragma once

#include "atoms.hpp"
#include "numtheory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace monapres {

struct Verdict {
  enum class Kind { Sat, Unsat, Unknown };
  Kind kind{Kind::Unknown};
  Int witness{0};           // x, original coordinates (Sat)
  std::string certificate;  // why Unsat is certain
  std::string reason;       // why Unknown
  Int bound{0};             // bound in force for Unknown
  std::vector<std::string> trace;

  static Verdict sat(Int x) {
    Verdict v;
    v.kind = Kind::Sat;
    v.witness = std::move(x);
    return v;
  }
  static Verdict unsat(std::string cert) {
    Verdict v;
    v.kind = Kind::Unsat;
    v.certificate = std::move(cert);
    return v;
  }
  static Verdict unknown(std::string reason, Int bound) {
    Verdict v;
    v.kind = Kind::Unknown;
    v.reason = std::move(reason);
    v.bound = std::move(bound);
    return v;
  }
  bool is_sat() const { return kind == Kind::Sat; }
  bool is_unsat() const { return kind == Kind::Unsat; }
  bool is_unknown() const { return kind == Kind::Unknown; }
};

inline const char* verdict_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Sat: return "sat";
    case Verdict::Kind::Unsat: return "unsat";
    case Verdict::Kind::Unknown: return "unknown";
  }
  return "?";
}

// One disjunct over y, where x = sign*(M*y + r), y > lower and (optionally) y < upper.
struct ConstraintSystem {
  int sign{1};
  Int M{1}, r{0};
  Int lower{0};
  std::optional<Int> upper;
  std::vector<Atom> positives, negatives;  // what the solvers reason about
  std::vector<Atom> checks;                // every atom of the disjunct, for pointwise tests
  std::vector<std::string> log;
  std::optional<Verdict> resolved;         // settled during normalization; y-structure kept
  std::optional<std::vector<Int>> only;    // every solution lies in this list
  std::string only_cert{"forced"};
  std::vector<Int> extras;                 // candidates outside the structural set
  std::string origin;

  bool sign_flipped() const { return sign < 0; }
  ResidueClass substitution() const { return ResidueClass(M, r); }
  Int x_of(const Int& y) const { return sign * (M * y + r); }
  std::optional<Int> y_of(const Int& x) const {
    Int xs = sign * x - r;
    if (!divides(M, xs)) return std::nullopt;
    return Int(xs / M);
  }
  bool in_range(const Int& y) const { return y > lower && (!upper || y < *upper); }
  bool accepts(const Int& y) const {
    if (!in_range(y)) return false;
    for (const auto& a : checks)
      if (!a.holds(y)) return false;
    return true;
  }
  bool holds_at_x(const Int& x) const {
    auto y = y_of(x);
    return y && accepts(*y);
  }
  bool has_poly() const {
    for (const auto& a : positives)
      if (a.is_poly()) return true;
    for (const auto& a : negatives)
      if (a.is_poly()) return true;
    return false;
  }
};

}  // namespace monapres
