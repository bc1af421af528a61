#pragma once

#include "quadnum.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace monapres {

// u_{n+d} = a_1 u_{n+d-1} + ... + a_d u_n, indexed over all of Z.
struct Lrbs {
  std::vector<Int> coeffs;  // a_1 .. a_d
  std::vector<Int> init;    // u_0 .. u_{d-1}

  Lrbs() = default;
  Lrbs(std::vector<Int> a, std::vector<Int> u) : coeffs(std::move(a)), init(std::move(u)) {
    if (coeffs.empty() || coeffs.size() != init.size()) throw std::invalid_argument("Lrbs: order mismatch");
    if (abs_int(coeffs.back()) != 1) throw std::invalid_argument("Lrbs: trailing coefficient must be +1 or -1");
  }

  std::size_t order() const { return coeffs.size(); }

  // Shift the window (u_n .. u_{n+d-1}) one step forward.
  void step_forward(std::vector<Int>& w) const {
    std::size_t d = order();
    Int next = 0;
    for (std::size_t i = 0; i < d; ++i) next += coeffs[i] * w[d - 1 - i];
    w.erase(w.begin());
    w.push_back(next);
  }

  void step_backward(std::vector<Int>& w) const {
    std::size_t d = order();
    // a_d u_{n-1} = u_{n+d-1} - a_1 u_{n+d-2} - ... - a_{d-1} u_n
    Int rest = w[d - 1];
    for (std::size_t i = 1; i < d; ++i) rest -= coeffs[i - 1] * w[d - 1 - i];
    Int prev = rest * coeffs.back();  // a_d = +-1 is its own inverse
    w.pop_back();
    w.insert(w.begin(), prev);
  }

  Int eval(std::int64_t n) const {
    std::vector<Int> w = init;
    std::int64_t d = static_cast<std::int64_t>(order());
    if (n >= 0) {
      for (std::int64_t i = 0; i + d <= n; ++i) step_forward(w);
      return w[static_cast<std::size_t>(n < d ? n : d - 1)];
    }
    for (std::int64_t i = 0; i < -n; ++i) step_backward(w);
    return w[0];
  }

  // u_lo .. u_hi inclusive.
  std::vector<Int> range(std::int64_t lo, std::int64_t hi) const {
    std::vector<Int> out;
    if (lo > hi) return out;
    std::vector<Int> w = init;
    std::int64_t pos = 0;
    while (pos > lo) {
      step_backward(w);
      --pos;
    }
    while (pos < lo) {
      step_forward(w);
      ++pos;
    }
    while (pos <= hi) {
      out.push_back(w[0]);
      step_forward(w);
      ++pos;
    }
    return out;
  }

  // Characteristic polynomial X^d - a_1 X^{d-1} - ... - a_d is squarefree.
  bool is_simple() const {
    if (order() == 1) return true;
    if (order() != 2) throw std::invalid_argument("is_simple: order > 2 unsupported");
    return coeffs[0] * coeffs[0] + 4 * coeffs[1] != 0;
  }
};

struct PeriodInfo {
  std::int64_t period{1};
  std::vector<Int> table;  // u_0 .. u_{P-1} mod M
};

inline PeriodInfo period_mod(const Lrbs& seq, const Int& M, std::int64_t cap = 50000000) {
  if (M < 1) throw std::invalid_argument("period_mod: modulus must be >= 1");
  PeriodInfo info;
  std::vector<Int> start;
  for (const auto& u : seq.init) start.push_back(mod_floor(u, M));
  std::vector<Int> w = start;
  do {
    info.table.push_back(w[0]);
    std::size_t d = seq.order();
    Int next = 0;
    for (std::size_t i = 0; i < d; ++i) next += seq.coeffs[i] * w[d - 1 - i];
    w.erase(w.begin());
    w.push_back(mod_floor(next, M));
    if (static_cast<std::int64_t>(info.table.size()) > cap) throw std::length_error("period_mod: period exceeds cap");
  } while (w != start);
  info.period = static_cast<std::int64_t>(info.table.size());
  return info;
}

inline std::int64_t mod_index(std::int64_t n, std::int64_t m) {
  std::int64_t r = n % m;
  return r < 0 ? r + m : r;
}

// Union of progressions {s + M t}, adjusted by finite inclusions and exclusions,
// optionally complemented.
struct IndexSet {
  std::int64_t modulus{1};
  std::vector<std::int64_t> residues;  // sorted, in [0, modulus)
  std::set<std::int64_t> included;
  std::set<std::int64_t> excluded;
  bool complement{false};

  static IndexSet all() { return IndexSet{1, {0}, {}, {}, false}; }
  static IndexSet none() { return IndexSet{1, {}, {}, {}, false}; }
  static IndexSet progressions(std::int64_t m, std::vector<std::int64_t> rs) {
    IndexSet s;
    s.modulus = m;
    for (auto& r : rs) r = mod_index(r, m);
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    s.residues = std::move(rs);
    return s;
  }

  bool contains(std::int64_t n) const {
    bool in;
    if (excluded.count(n)) in = false;
    else if (included.count(n)) in = true;
    else in = std::binary_search(residues.begin(), residues.end(), mod_index(n, modulus));
    return in != complement;
  }

  // True only when the set is provably empty.
  bool is_empty() const {
    if (complement) return false;
    if (!included.empty()) return false;
    return residues.empty();
  }

  // Progression part only, re-expressed modulo a multiple of the modulus.
  std::vector<std::int64_t> residues_mod(std::int64_t m) const {
    if (m % modulus != 0) throw std::invalid_argument("IndexSet: modulus must be a multiple");
    std::vector<std::int64_t> out;
    for (std::int64_t k = 0; k < m / modulus; ++k)
      for (auto r : residues) out.push_back(r + k * modulus);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Reduce to the smallest modulus describing the same progressions.
  IndexSet minimized() const {
    IndexSet out = *this;
    for (std::int64_t d = 1; d <= modulus; ++d) {
      if (modulus % d) continue;
      bool ok = true;
      for (std::int64_t r = 0; r < modulus && ok; ++r) {
        bool a = std::binary_search(residues.begin(), residues.end(), r);
        bool b = std::binary_search(residues.begin(), residues.end(), r % d);
        if (a != b) ok = false;
      }
      if (ok) {
        out.modulus = d;
        out.residues.clear();
        for (auto r : residues)
          if (r < d) out.residues.push_back(r);
        return out;
      }
    }
    return out;
  }
};

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  Int l = lcm(from_i64(a), from_i64(b));
  if (l > 100000000) throw std::length_error("index modulus too large");
  return to_i64(l);
}

// Intersection of the progression parts (no exceptions, no complement).
inline IndexSet intersect(const IndexSet& x, const IndexSet& y) {
  if (x.complement || y.complement || !x.included.empty() || !y.included.empty() || !x.excluded.empty() ||
      !y.excluded.empty())
    throw std::invalid_argument("intersect: plain progression sets only");
  std::int64_t m = lcm64(x.modulus, y.modulus);
  std::vector<std::int64_t> rs;
  for (std::int64_t r = 0; r < m; ++r)
    if (x.contains(r) && y.contains(r)) rs.push_back(r);
  return IndexSet::progressions(m, std::move(rs));
}

// x minus the progressions of y (plain sets).
inline IndexSet subtract(const IndexSet& x, const IndexSet& y) {
  IndexSet ny = y;
  ny.complement = false;
  std::int64_t m = lcm64(x.modulus, y.modulus);
  std::vector<std::int64_t> rs;
  for (std::int64_t r = 0; r < m; ++r)
    if (x.contains(r) && !ny.contains(r)) rs.push_back(r);
  IndexSet out = IndexSet::progressions(m, std::move(rs));
  out.included = x.included;
  out.excluded = x.excluded;
  return out;
}

inline IndexSet filter_congruence(const Lrbs& seq, const Int& M, const Int& r) {
  PeriodInfo p = period_mod(seq, M);
  Int rr = mod_floor(r, M);
  std::vector<std::int64_t> rs;
  for (std::int64_t i = 0; i < p.period; ++i)
    if (p.table[static_cast<std::size_t>(i)] == rr) rs.push_back(i);
  return IndexSet::progressions(p.period, std::move(rs));
}

struct Growth {
  bool growing{false};
  QuadNum epsilon;  // dominant root, > 1, when growing
  int degree{1};    // degree of the dominant root over Q
};

inline Growth growth_rank(const Lrbs& seq) {
  Growth g;
  if (seq.order() == 1) return g;  // u_{n+1} = +-u_n
  if (seq.order() != 2) throw std::invalid_argument("growth_rank: order > 2 unsupported");
  const Int& a1 = seq.coeffs[0];
  const Int& a2 = seq.coeffs[1];
  Int disc = a1 * a1 + 4 * a2;
  if (disc <= 0 || is_square(disc)) return g;  // roots of modulus 1
  // roots (a1 +- sqrt(disc)) / 2; dominant magnitude |a1|/2 + sqrt(disc)/2
  g.growing = true;
  g.degree = 2;
  g.epsilon = QuadNum(Rat(abs_int(a1), 2), Rat(1, 2), disc);
  return g;
}

// Smallest n0 >= 0 with |u_{n+1}| > |u_n| for every n >= n0, and m0 >= 0 with
// |u_{n-1}| > |u_n| for every n <= -m0.  Requires a certified growth regime.
struct MonotoneIndex {
  std::int64_t forward{0};
  std::int64_t backward{0};
};

inline bool has_growth_certificate(const Lrbs& seq) {
  if (seq.order() != 2) return false;
  Int a = abs_int(seq.coeffs[0]);
  if (seq.coeffs[1] == -1) return a >= 3;
  return a >= 2;
}

inline std::optional<MonotoneIndex> monotone_index(const Lrbs& seq, std::int64_t max_steps = 100000) {
  if (!has_growth_certificate(seq)) return std::nullopt;
  if (seq.init[0] == 0 && seq.init[1] == 0) return std::nullopt;
  MonotoneIndex mi;
  std::vector<Int> w = seq.init;
  std::int64_t n = 0;
  while (abs_int(w[1]) <= abs_int(w[0])) {
    seq.step_forward(w);
    if (++n > max_steps) return std::nullopt;
  }
  mi.forward = n;
  // backward: look at (u_{-n}, u_{-n-1})
  w = seq.init;
  n = 0;
  std::vector<Int> prev = w;
  seq.step_backward(prev);
  while (abs_int(prev[0]) <= abs_int(w[0])) {
    w = prev;
    seq.step_backward(prev);
    if (++n > max_steps) return std::nullopt;
  }
  mi.backward = n;
  return mi;
}

}  // namespace monapres
