#pragma once

#include "bigint.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monapres {

// Dense univariate polynomial, c[i] is the coefficient of t^i.
template <class T>
struct Poly {
  std::vector<T> c;

  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
  static Poly monomial(const T& v, std::size_t deg) {
    std::vector<T> cs(deg + 1, T(0));
    cs[deg] = v;
    return Poly(std::move(cs));
  }
  static Poly linear(const T& slope, const T& offset) { return Poly(std::vector<T>{offset, slope}); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  T coeff(std::size_t i) const { return i < c.size() ? c[i] : T(0); }
  T lead() const { return c.empty() ? T(0) : c.back(); }

  template <class U>
  U eval(const U& x) const {
    U r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + U(c[i]);
    return r;
  }

  Poly derivative() const {
    std::vector<T> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * T(static_cast<long>(i)));
    return Poly(std::move(d));
  }

  Poly compose(const Poly& inner) const {
    Poly r;
    for (std::size_t i = c.size(); i-- > 0;) r = r * inner + constant(c[i]);
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c.size(), b.c.size()), T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& v : r.c) v = -v;
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> r(a.c.size() + b.c.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const T& s, const Poly& a) {
    Poly r = a;
    for (auto& v : r.c) v *= s;
    r.trim();
    return r;
  }
  bool operator==(const Poly& o) const { return c == o.c; }
};

using RatPoly = Poly<Rat>;
using IntPoly = Poly<Int>;

inline RatPoly to_rat(const IntPoly& p) {
  std::vector<Rat> cs;
  for (const auto& v : p.c) cs.emplace_back(v);
  return RatPoly(std::move(cs));
}

inline std::optional<IntPoly> to_int(const RatPoly& p) {
  std::vector<Int> cs;
  for (const auto& v : p.c) {
    auto i = as_integer(v);
    if (!i) return std::nullopt;
    cs.push_back(*i);
  }
  return IntPoly(std::move(cs));
}

// Least common denominator of the coefficients.
inline Int common_denominator(const RatPoly& p) {
  Int l = 1;
  for (const auto& v : p.c) l = lcm(l, v.get_den());
  return l;
}

inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  RatPoly q, r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    RatPoly t = RatPoly::monomial(r.lead() / b.lead(), static_cast<std::size_t>(r.degree() - b.degree()));
    q = q + t;
    r = r - t * b;
  }
  return {q, r};
}

// Monic gcd over the rationals.
inline RatPoly poly_gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  Rat l = a.lead();
  for (auto& v : a.c) v /= l;
  return a;
}

namespace detail {

// Monotone on [lo, hi]; finds t with p(t) = 0.
inline std::optional<Int> bisect_root(const IntPoly& p, Int lo, Int hi) {
  if (lo > hi) return std::nullopt;
  int slo = sgn(p.eval(lo)), shi = sgn(p.eval(hi));
  if (slo == 0) return lo;
  if (shi == 0) return hi;
  if (slo == shi) return std::nullopt;
  while (hi - lo > 1) {
    Int mid = floor_div(lo + hi, 2);
    int s = sgn(p.eval(mid));
    if (s == 0) return mid;
    if (s == slo) lo = mid; else hi = mid;
  }
  return std::nullopt;
}

// floor of (-b + sign*sqrt(disc)) / (2a) for a > 0, disc >= 0.
inline Int floor_quadratic_root(const Int& a, const Int& b, const Int& disc, int sign) {
  Int s = isqrt(disc);
  bool exact = s * s == disc;
  if (sign > 0) return floor_div(-b + s, 2 * a);
  return floor_div(-b - s - (exact ? 0 : 1), 2 * a);
}

}  // namespace detail

// All integer roots of a nonzero polynomial of degree <= 3, ascending.
inline std::vector<Int> integer_roots(IntPoly p) {
  if (p.is_zero()) throw std::domain_error("integer_roots of zero polynomial");
  std::vector<Int> out;
  int d = p.degree();
  if (d == 0) return out;
  if (d > 3) throw std::invalid_argument("integer_roots supports degree <= 3");
  if (p.lead() < 0) p = -p;
  if (d == 1) {
    if (divides(p.c[1], p.c[0])) out.push_back(-p.c[0] / p.c[1]);
    return out;
  }
  if (d == 2) {
    Int disc = p.c[1] * p.c[1] - 4 * p.c[2] * p.c[0];
    if (!is_square(disc)) return out;
    Int s = isqrt(disc);
    for (Int num : {Int(-p.c[1] - s), Int(-p.c[1] + s)})
      if (divides(2 * p.c[2], num)) out.push_back(num / (2 * p.c[2]));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  Int bound = 1;
  for (int i = 0; i < d; ++i) bound = std::max(bound, abs_int(p.c[i]));
  bound += 1;
  // critical points of 3c3 t^2 + 2c2 t + c1
  Int a = 3 * p.c[3], b = 2 * p.c[2], cc = p.c[1];
  Int disc = b * b - 4 * a * cc;
  std::vector<std::pair<Int, Int>> pieces;
  if (disc <= 0) {
    pieces.emplace_back(-bound, bound);
  } else {
    Int c1 = detail::floor_quadratic_root(a, b, disc, -1);
    Int c2 = detail::floor_quadratic_root(a, b, disc, +1);
    pieces.emplace_back(-bound, std::min(c1, bound));
    pieces.emplace_back(std::max(Int(c1 + 1), Int(-bound)), std::min(c2, bound));
    pieces.emplace_back(std::max(Int(c2 + 1), Int(-bound)), bound);
  }
  for (const auto& [lo, hi] : pieces)
    if (auto r = detail::bisect_root(p, lo, hi)) out.push_back(*r);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::string poly_to_string(const RatPoly& p, const std::string& var = "t") {
  if (p.is_zero()) return "0";
  std::string s;
  for (std::size_t i = p.c.size(); i-- > 0;) {
    if (p.c[i] == 0) continue;
    Rat v = p.c[i];
    if (!s.empty()) s += v < 0 ? " - " : " + ";
    else if (v < 0) s += "-";
    Rat av = v < 0 ? Rat(-v) : v;
    if (av != 1 || i == 0) s += av.get_str();
    if (i > 0) s += (av != 1 ? "*" : "") + var + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return s;
}

}  // namespace monapres
