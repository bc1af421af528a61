#include <monapres/lrbs.hpp>
#include <monapres/pell.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace monapres;

namespace {

Lrbs random_order2(std::mt19937& rng) {
  long a1 = static_cast<long>(rng() % 21) - 10;
  long a2 = rng() % 2 ? 1 : -1;
  long u0 = static_cast<long>(rng() % 41) - 20, u1 = static_cast<long>(rng() % 41) - 20;
  return Lrbs({Int(a1), Int(a2)}, {Int(u0), Int(u1)});
}

// Plain left-to-right evaluation from index lo.
std::vector<Int> forward_from(const Lrbs& s, long lo, long hi) {
  std::vector<Int> u{s.eval(lo), s.eval(lo + 1)};
  while (static_cast<long>(u.size()) < hi - lo + 1) {
    std::size_t k = u.size();
    u.push_back(s.coeffs[0] * u[k - 1] + s.coeffs[1] * u[k - 2]);
  }
  u.resize(static_cast<std::size_t>(hi - lo + 1));
  return u;
}

}  // namespace

TEST(Lrbs, Examples) {
  Lrbs pell({6, -1}, {1, 3});
  EXPECT_EQ(pell.eval(2), 17);
  EXPECT_EQ(pell.eval(0), 1);
  EXPECT_EQ(pell.eval(-1), (pell.eval(1) - 6 * pell.eval(0)) / -1);
  EXPECT_THROW(Lrbs({2, 2}, {0, 1}), std::invalid_argument);
}

TEST(Lrbs, ForwardBackwardConsistency) {
  std::mt19937 rng(1);
  for (int it = 0; it < 200; ++it) {
    Lrbs s = random_order2(rng);
    auto r = s.range(-100, 100);
    auto f = forward_from(s, -100, 100);
    ASSERT_EQ(r, f);
    for (long n : {-100L, -37L, 0L, 1L, 64L, 100L}) EXPECT_EQ(s.eval(n), r[static_cast<std::size_t>(n + 100)]);
  }
}

TEST(Lrbs, ReversibleIntegral) {
  // Fatou: trailing coefficient +-1 keeps backward values integral
  std::mt19937 rng(2);
  for (int it = 0; it < 1000; ++it) {
    Lrbs s = random_order2(rng);
    auto r = s.range(-50, 50);
    for (std::size_t i = 2; i < r.size(); ++i) EXPECT_EQ(r[i], s.coeffs[0] * r[i - 1] + s.coeffs[1] * r[i - 2]);
  }
}

TEST(PeriodMod, Examples) {
  Lrbs constant({1}, {7});
  EXPECT_EQ(period_mod(constant, 13).period, 1);
  Lrbs fib({1, 1}, {0, 1});
  EXPECT_EQ(period_mod(fib, 10).period, 60);
  Lrbs pell({6, -1}, {1, 3});
  auto p = period_mod(pell, 8);
  // direct scan of states mod 8
  long a = 1, b = 3, P = 0;
  do {
    long c = ((6 * b - a) % 8 + 8) % 8;
    a = b;
    b = c;
    ++P;
  } while (!(a == 1 && b == 3));
  EXPECT_EQ(p.period, P);
}

TEST(PeriodMod, MinimalAndValid) {
  std::mt19937 rng(3);
  for (int it = 0; it < 1000; ++it) {
    Lrbs s = random_order2(rng);
    long M = 1 + rng() % 30;
    auto p = period_mod(s, M);
    auto vals = s.range(-p.period, 3 * p.period);
    auto md = [&](const Int& v) { return mod_floor(v, Int(M)); };
    for (long n = 0; n + p.period < static_cast<long>(vals.size()); ++n)
      ASSERT_EQ(md(vals[static_cast<std::size_t>(n)]), md(vals[static_cast<std::size_t>(n + p.period)]));
    for (long d = 1; d < p.period; ++d) {
      if (p.period % d) continue;
      bool works = true;
      for (long n = 0; n + d < static_cast<long>(vals.size()) && works; ++n)
        works = md(vals[static_cast<std::size_t>(n)]) == md(vals[static_cast<std::size_t>(n + d)]);
      EXPECT_FALSE(works) << "smaller period " << d;
    }
  }
}

TEST(FilterCongruence, MatchesScan) {
  std::mt19937 rng(4);
  for (int it = 0; it < 1000; ++it) {
    Lrbs s = random_order2(rng);
    long M = 1 + rng() % 12;
    long r = rng() % M;
    IndexSet is = filter_congruence(s, M, r);
    long P = is.modulus;
    auto vals = s.range(-3 * P, 3 * P);
    for (long n = -3 * P; n <= 3 * P; ++n)
      ASSERT_EQ(is.contains(n), mod_floor(vals[static_cast<std::size_t>(n + 3 * P)], Int(M)) == r);
  }
  Lrbs z = solve_generalized(2, 1).classes[0].z_seq();
  IndexSet is = filter_congruence(z, 3, 0).minimized();
  for (long n = -100; n < 100; ++n) EXPECT_EQ(is.contains(n), mod_floor(z.eval(n), 3) == 0);
  Lrbs constant({1}, {5});
  EXPECT_FALSE(filter_congruence(constant, 7, 5).is_empty());
  EXPECT_TRUE(filter_congruence(constant, 7, 4).is_empty());
}

TEST(Growth, Examples) {
  Growth g = growth_rank(Lrbs({6, -1}, {1, 3}));
  ASSERT_TRUE(g.growing);
  EXPECT_EQ(g.epsilon, QuadNum(3, 2, 2));
  EXPECT_FALSE(growth_rank(Lrbs({1}, {4})).growing);
  for (long w0 : {2L, 3L, 9L, 649L}) {
    Growth h = growth_rank(Lrbs({Int(2 * w0), -1}, {1, Int(w0)}));
    ASSERT_TRUE(h.growing);
    EXPECT_EQ(h.epsilon, QuadNum(Rat(w0), 1, Int(w0 * w0 - 1)));
  }
}

TEST(Growth, MonotoneBeyondIndex) {
  std::mt19937 rng(5);
  int checked = 0;
  for (int it = 0; it < 1000; ++it) {
    long n = 2 + rng() % 60;
    long N = static_cast<long>(rng() % 201) - 100;
    if (is_square(n) || N == 0) continue;
    auto s = solve_generalized(n, N);
    for (auto& c : s.classes)
      for (Lrbs seq : {c.w_seq(), c.z_seq()}) {
        auto mi = monotone_index(seq);
        ASSERT_TRUE(mi);
        auto vals = seq.range(-mi->backward - 30, mi->forward + 30);
        long off = mi->backward + 30;
        for (long k = mi->forward; k < mi->forward + 29; ++k)
          ASSERT_GT(abs_int(vals[static_cast<std::size_t>(k + 1 + off)]), abs_int(vals[static_cast<std::size_t>(k + off)]));
        for (long k = -mi->backward; k > -mi->backward - 29; --k)
          ASSERT_GT(abs_int(vals[static_cast<std::size_t>(k - 1 + off)]), abs_int(vals[static_cast<std::size_t>(k + off)]));
        ++checked;
      }
  }
  EXPECT_GT(checked, 100);
}

TEST(IndexSet, Operations) {
  IndexSet ev = IndexSet::progressions(2, {0});
  IndexSet m3 = IndexSet::progressions(3, {1});
  IndexSet both = intersect(ev, m3);
  for (long n = -20; n < 20; ++n) EXPECT_EQ(both.contains(n), n % 2 == 0 && mod_index(n, 3) == 1);
  IndexSet diff = subtract(IndexSet::all(), ev);
  for (long n = -20; n < 20; ++n) EXPECT_EQ(diff.contains(n), n % 2 != 0);
  IndexSet comp = ev;
  comp.complement = true;
  comp.excluded.insert(3);
  EXPECT_TRUE(comp.contains(1));
  EXPECT_FALSE(comp.contains(2));
  EXPECT_TRUE(comp.contains(3));  // excluded from the base set, so present in the complement
}
