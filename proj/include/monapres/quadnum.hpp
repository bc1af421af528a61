#pragma once

#include "numtheory.hpp"

#include <stdexcept>
#include <string>

namespace monapres {

// a + b*sqrt(n) with n > 1 squarefree.
struct QuadNum {
  Rat a{0};
  Rat b{0};
  Int n{2};

  QuadNum() = default;
  QuadNum(Rat a_, Rat b_, const Int& radicand) : a(std::move(a_)), b(std::move(b_)) {
    a.canonicalize();
    b.canonicalize();
    if (radicand < 2 || is_square(radicand)) throw std::invalid_argument("radicand must be a positive non-square");
    n = 1;
    Int sq = 1;
    for (const auto& [p, e] : factor(radicand).factors) {
      if (e % 2) n *= p;
      sq *= ipow(p, e / 2);
    }
    b *= sq;
  }

  static QuadNum in_field(Rat a_, Rat b_, const Int& squarefree_n) {
    QuadNum q;
    q.a = std::move(a_);
    q.b = std::move(b_);
    q.n = squarefree_n;
    q.a.canonicalize();
    q.b.canonicalize();
    return q;
  }

  QuadNum conj() const { return in_field(a, -b, n); }
  Rat norm() const { return a * a - b * b * n; }

  void check_field(const QuadNum& o) const {
    if (n != o.n) throw std::invalid_argument("QuadNum field mismatch");
  }
  friend QuadNum operator+(const QuadNum& x, const QuadNum& y) {
    x.check_field(y);
    return in_field(x.a + y.a, x.b + y.b, x.n);
  }
  friend QuadNum operator-(const QuadNum& x, const QuadNum& y) {
    x.check_field(y);
    return in_field(x.a - y.a, x.b - y.b, x.n);
  }
  friend QuadNum operator*(const QuadNum& x, const QuadNum& y) {
    x.check_field(y);
    return in_field(x.a * y.a + x.b * y.b * x.n, x.a * y.b + x.b * y.a, x.n);
  }
  QuadNum inverse() const {
    Rat nm = norm();
    if (nm == 0) throw std::domain_error("QuadNum inverse of zero");
    return in_field(a / nm, -b / nm, n);
  }
  friend QuadNum operator/(const QuadNum& x, const QuadNum& y) { return x * y.inverse(); }
  bool operator==(const QuadNum& o) const { return a == o.a && b == o.b && n == o.n; }

  QuadNum pow(long e) const {
    QuadNum base = e < 0 ? inverse() : *this;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    QuadNum r = in_field(1, 0, n);
    while (k) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  // Exact sign of the real value.
  int sign() const {
    int sa = monapres::sgn(a), sb = monapres::sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with n b^2
    int c = cmp(a * a, b * b * n);
    return c > 0 ? sa : (c < 0 ? sb : 0);
  }
  friend bool operator<(const QuadNum& x, const QuadNum& y) { return (x - y).sign() < 0; }

  std::string str() const { return a.get_str() + (b < 0 ? " - " : " + ") + Rat(abs(b)).get_str() + "*sqrt(" + n.get_str() + ")"; }
};

}  // namespace monapres
