#include <monapres/power_solver.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace monapres;

namespace {

Atom Z(unsigned k, long a, long b, bool pos = true) { return Atom::power(pos, k, a, b); }

bool all_hold(const std::vector<Atom>& as, const Int& y) {
  for (const auto& a : as)
    if (!a.predicate_at(y)) return false;
  return true;
}

}  // namespace

TEST(Redundancy, Examples) {
  EXPECT_EQ(is_redundant(Z(2, 1, 0), Z(4, 16, 0)), std::optional<bool>(true));
  EXPECT_EQ(is_redundant(Z(2, 3, 0), Z(4, 16, 0)), std::optional<bool>(false));
  EXPECT_EQ(is_redundant(Z(2, 1, 1), Z(4, 16, 0)), std::nullopt);
  EXPECT_EQ(is_redundant(Z(4, 16, 0), Z(2, 1, 0)), std::nullopt);
}

TEST(Redundancy, ForcedValueMatchesScan) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    unsigned k = 2 + rng() % 3, j = k * (1 + rng() % 2);
    long a = 1 + rng() % 30, c = 1 + rng() % 30, b = static_cast<long>(rng() % 21) - 10;
    if ((b * c) % a) continue;
    long d = b * c / a;
    auto f = is_redundant(Z(k, c, d), Z(j, a, b));
    ASSERT_TRUE(f.has_value());
    for (long y = -3000; y <= 3000; ++y) {
      if (a * y + b == 0) continue;
      if (!Z(j, a, b).predicate_at(y)) continue;
      EXPECT_EQ(Z(k, c, d).predicate_at(y), *f) << k << " " << c << " " << d << " vs " << j << " " << a << " " << b;
    }
  }
}

TEST(Coalesce, SquareAndCube) {
  auto c = coalesce_similar({Z(2, 5, 0), Z(3, 4, 0)});
  ASSERT_TRUE(c);
  EXPECT_EQ(c->k, 6u);
  EXPECT_EQ(c->a, 500);
  EXPECT_EQ(c->b, 0);
}

TEST(Coalesce, SingletonAndDyadic) {
  auto s = coalesce_similar({Z(2, 1, 0)});
  ASSERT_TRUE(s);
  EXPECT_EQ(*s, Z(2, 1, 0));
  auto c = coalesce_similar({Z(2, 8, 0), Z(4, 2, 0)});
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, Z(4, 2, 0));
}

TEST(Coalesce, EquivalentToInputsOnScan) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    long a = 1 + rng() % 6, b = static_cast<long>(rng() % 9) - 4;
    std::vector<Atom> as;
    int n = 2 + rng() % 2;
    for (int i = 0; i < n; ++i) {
      long l = 1 + rng() % 30;
      as.push_back(Z(2 + rng() % 4, l * a, l * b));
    }
    auto c = coalesce_similar(as);
    for (long y = -100000; y <= 100000; ++y) {
      bool want = all_hold(as, y);
      bool got = c ? c->predicate_at(y) : (a * y + b == 0);
      ASSERT_EQ(got, want) << "trial " << trial << " y=" << y;
    }
  }
}

TEST(SolvePositive, Examples) {
  SolverOptions opt;
  EXPECT_TRUE(solve_positive({}, 0, opt).all);
  EXPECT_TRUE(solve_positive({Z(2, 4, 2)}, -100, opt).provably_empty());
  auto pell = solve_positive({Z(2, 1, 0), Z(2, 2, 1)}, -1, opt);
  EXPECT_EQ(pell.kind(), SolutionSet::Kind::Lrbs);
  EXPECT_EQ(members(pell, -1, 4), (std::vector<Int>{0, 4, 144, 4900}));
  auto div = solve_positive({Z(2, 1, 0), Z(2, 1, 1)}, -1000, opt);
  EXPECT_EQ(div.kind(), SolutionSet::Kind::Finite);
  EXPECT_TRUE(div.complete);
  EXPECT_EQ(div.finite, (std::vector<Int>{0}));
}

TEST(SolvePositive, PellMembersMatchScan) {
  SolverOptions opt;
  for (auto [a1, b1, a2, b2] : std::vector<std::array<long, 4>>{{1, 0, 2, 1}, {1, 0, 5, 4}, {1, 0, 5, -4}, {3, 1, 7, 2}, {2, 3, 5, -1}}) {
    std::vector<Atom> pos{Z(2, a1, b1), Z(2, a2, b2)};
    auto S = solve_positive(pos, -100, opt);
    auto ms = members(S, -100, 1000);
    std::vector<Int> want;
    for (long y = -99; y <= 1000000; ++y)
      if (all_hold(pos, y)) want.push_back(y);
    std::vector<Int> got;
    for (auto& m : ms)
      if (m <= 1000000) got.push_back(m);
    EXPECT_EQ(got, want) << a1 << " " << b1 << " " << a2 << " " << b2;
  }
}

TEST(SolvePositive, SingleAtomImages) {
  SolverOptions opt;
  std::vector<Atom> pos{Z(3, 7, 1)};
  auto S = solve_positive(pos, -1000, opt);
  auto ms = members(S, -1000, 200);
  std::vector<Int> want;
  for (long y = -999; want.size() < 200; ++y)
    if (all_hold(pos, y)) want.push_back(y);
  EXPECT_EQ(ms, want);
}
