#pragma once

#include "bigint.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace monapres {

struct ResidueClass {
  Int modulus{1};
  Int residue{0};

  ResidueClass() = default;
  ResidueClass(Int m, Int r) : modulus(std::move(m)), residue(std::move(r)) {
    if (modulus < 1) throw std::invalid_argument("modulus must be >= 1");
    residue = mod_floor(residue, modulus);
  }
  bool contains(const Int& x) const { return mod_floor(x - residue, modulus) == 0; }
  bool operator==(const ResidueClass&) const = default;
};

struct Factorization {
  int sign{1};
  std::vector<std::pair<Int, unsigned>> factors;  // increasing primes

  Int product() const {
    Int r = sign;
    for (const auto& [p, e] : factors) r *= ipow(p, e);
    return r;
  }
};

inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// Intersection of residue classes; moduli need not be coprime.
inline std::optional<ResidueClass> crt_extended(const std::vector<ResidueClass>& classes) {
  Int m = 1, r = 0;
  for (const auto& c : classes) {
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t(), c.modulus.get_mpz_t());
    Int diff = c.residue - r;
    if (!divides(g, diff)) return std::nullopt;
    Int l = m / g * c.modulus;
    // r + m * k with m*k = diff (mod c.modulus)
    Int k = mod_floor(diff / g * s, c.modulus / g);
    r = mod_floor(r + m * k, l);
    m = l;
  }
  return ResidueClass(m, r);
}

inline unsigned valuation(const Int& p, const Int& n) {
  if (n == 0) throw std::domain_error("valuation of zero");
  if (p < 2) throw std::domain_error("valuation base must be >= 2");
  Int rest;
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

inline std::optional<Int> kth_root(const Int& n, unsigned long k) {
  if (k < 2) throw std::invalid_argument("root degree must be >= 2");
  if (n < 0 && k % 2 == 0) return std::nullopt;
  Int a = abs_int(n), r;
  if (mpz_root(r.get_mpz_t(), a.get_mpz_t(), k) == 0) return std::nullopt;
  if (n < 0) r = -r;
  return r;
}

inline bool is_kth_power(const Int& n, unsigned long k) { return kth_root(n, k).has_value(); }

inline Int powm(const Int& b, const Int& e, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline std::vector<Int> kth_power_residues(unsigned long k, const Int& m) {
  if (m < 1) throw std::invalid_argument("modulus must be >= 1");
  if (m == 1) return {Int(0)};
  if (!fits_i64(m) || m > 100000000) throw std::length_error("modulus too large for residue table");
  std::int64_t mm = to_i64(m);
  std::vector<char> seen(static_cast<std::size_t>(mm), 0);
  Int e = static_cast<unsigned long>(k);
  for (std::int64_t u = 0; u < mm; ++u) {
    std::int64_t v = to_i64(powm(from_i64(u), e, m));
    seen[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<Int> out;
  for (std::int64_t v = 0; v < mm; ++v)
    if (seen[static_cast<std::size_t>(v)]) out.push_back(from_i64(v));
  return out;
}

namespace detail {

inline Int pollard_brent(const Int& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Int y = seed % 97 + 2, c = seed % 89 + 1, g = 1, q = 1, x, ys;
  unsigned long r = 1, m = 128;
  auto f = [&](const Int& v) { return mod_floor(v * v + c, n); };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        q = mod_floor(q * abs_int(x - y), n);
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd(abs_int(x - ys), n);
    } while (g == 1);
  }
  return g;
}

inline void factor_into(const Int& n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (unsigned long seed = 1;; ++seed) {
    Int d = pollard_brent(n, seed);
    if (d != n && d != 1) {
      factor_into(d, out);
      factor_into(n / d, out);
      return;
    }
  }
}

}  // namespace detail

inline Factorization factor(const Int& n) {
  if (n == 0) throw std::domain_error("factor of zero");
  Factorization f;
  f.sign = n < 0 ? -1 : 1;
  Int m = abs_int(n);
  std::map<Int, unsigned> acc;
  for (unsigned long p = 2; p < 10000 && Int(p) * p <= m; p += (p == 2 ? 1 : 2)) {
    Int pp = p;
    while (divides(pp, m)) {
      ++acc[pp];
      m /= pp;
    }
  }
  if (m > 1) detail::factor_into(m, acc);
  for (auto& [p, e] : acc) f.factors.emplace_back(p, e);
  return f;
}

// Positive divisors in increasing order.
inline std::vector<Int> divisors(const Int& n) {
  if (n == 0) throw std::domain_error("divisors of zero");
  std::vector<Int> ds{1};
  for (const auto& [p, e] : factor(n).factors) {
    std::size_t cur = ds.size();
    Int pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < cur; ++j) ds.push_back(ds[j] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

inline std::vector<std::pair<Int, Int>> divisor_pairs(const Int& n) {
  std::vector<std::pair<Int, Int>> out;
  for (const Int& d : divisors(n)) {
    out.emplace_back(d, n / d);
    out.emplace_back(Int(-d), Int(-(n / d)));
  }
  return out;
}

// Solutions x of a*x = c (mod m), as one class, or absent.
inline std::optional<ResidueClass> solve_linear_congruence(const Int& a, const Int& c, const Int& m) {
  Int mm = abs_int(m);
  if (mm == 0) throw std::invalid_argument("zero modulus");
  Int g = gcd(a, mm);
  if (!divides(g, c)) return std::nullopt;
  Int m2 = mm / g, inv;
  Int a2 = mod_floor(a / g, m2);
  if (m2 == 1) return ResidueClass(1, 0);
  mpz_invert(inv.get_mpz_t(), a2.get_mpz_t(), m2.get_mpz_t());
  return ResidueClass(m2, (c / g) * inv);
}

inline Int squarefree_part(const Int& n) {
  if (n == 0) return 0;
  Int r = n < 0 ? -1 : 1;
  for (const auto& [p, e] : factor(n).factors)
    if (e % 2) r *= p;
  return r;
}

}  // namespace monapres
