#include <monapres/decide.hpp>
#include <monapres/normalize.hpp>
#include <monapres/oracle.hpp>

#include <gtest/gtest.h>

#include "random_sentences.hpp"

using namespace monapres;

namespace {

bool log_mentions(const std::vector<ConstraintSystem>& ss, const std::string& needle) {
  for (const auto& s : ss)
    for (const auto& l : s.log)
      if (l.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Normalize, CrtSubstitution) {
  auto n = normalize(parse("(exists x (and (> x 0) (mod x 4 1) (mod x 6 5)))"));
  ASSERT_EQ(n.systems.size(), 1u);
  const auto& s = n.systems[0];
  EXPECT_EQ(s.M, 12);
  EXPECT_EQ(s.r, 5);
  EXPECT_EQ(s.sign, 1);
  EXPECT_TRUE(s.positives.empty());
  EXPECT_EQ(mod_floor(s.r, Int(4)), 1);
  EXPECT_EQ(mod_floor(s.r, Int(6)), 5);
}

TEST(Normalize, CrtWithoutBoundsSplitsOnSign) {
  auto n = normalize(parse("(exists x (and (mod x 4 1) (mod x 6 5)))"));
  bool found = false;
  for (const auto& s : n.systems) found = found || (s.sign == 1 && s.M == 12 && s.r == 5);
  EXPECT_TRUE(found);
  for (Int x = -100; x <= 100; ++x) {
    bool any = false;
    for (const auto& s : n.systems) any = any || s.holds_at_x(x);
    EXPECT_EQ(any, mod_floor(x, Int(12)) == 5) << x;
  }
}

TEST(Normalize, CrtInfeasible) {
  Decision d = decide_sentence(parse("(exists x (and (mod x 4 1) (mod x 6 2)))"));
  EXPECT_TRUE(d.verdict.is_unsat());
}

TEST(Normalize, BoundedIntervalScan) {
  Decision d = decide_sentence(parse("(exists x (and (> x 0) (< x 5) (pow 2 x)))"));
  ASSERT_TRUE(d.verdict.is_sat());
  // intervals are scanned from the top; 1 is also a witness
  EXPECT_EQ(d.verdict.witness, 4);
  d = decide_sentence(parse("(exists x (and (> x 4) (< x 9) (pow 2 x)))"));
  EXPECT_TRUE(d.verdict.is_unsat());
  EXPECT_EQ(d.verdict.certificate, "bounded-interval");
}

TEST(Normalize, ForallIsNegatedExists) {
  Sentence s = parse("(forall x (not (pow 2 x)))");
  auto n = normalize(s, true);
  for (Int x = -50; x <= 50; ++x) {
    bool any = false;
    for (const auto& sys : n.systems) any = any || sys.holds_at_x(x);
    EXPECT_EQ(any, kth_root(x, 2).has_value()) << x;
  }
  EXPECT_TRUE(decide_sentence(s).verdict.is_unsat());
  EXPECT_TRUE(decide_sentence(parse("(forall x (or (> x 0) (< x 1)))")).verdict.is_sat());
}

TEST(Normalize, NotEqualSplits) {
  Dnf d = to_dnf(parse("(exists x (not (= (* 2 x) 6)))").body, true, Sentence{});
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0][0].str(), "x<3");
  EXPECT_EQ(d[1][0].str(), "x>3");
}

TEST(Normalize, LowDegreePredicatesBecomeLinear) {
  Sentence s = parse("(declare-pred L (coeffs 3 1)) (declare-pred P (coeffs 7)) (exists x (and (pred L x) (not (pred P x))))");
  Dnf d = to_dnf(s.body, true, s);
  for (const auto& c : d)
    for (const auto& l : c) EXPECT_NE(l.kind, Literal::Kind::Atom) << l.str();
}

TEST(Normalize, CoalescingExposesRedundancy) {
  auto n = normalize(parse("(exists x (and (> x 0) (pow 2 (* 5 x)) (pow 3 (* 4 x)) (not (pow 6 (* 24 x)))))"));
  ASSERT_EQ(n.systems.size(), 1u);
  const auto& s = n.systems[0];
  ASSERT_EQ(s.positives.size(), 1u);
  EXPECT_EQ(s.positives[0].k, 6u);
  EXPECT_EQ(s.positives[0].a, 500);
  EXPECT_TRUE(s.negatives.empty());
  EXPECT_TRUE(log_mentions(n.systems, "redundant-after-coalescing"));
}

TEST(Normalize, ForcedValues) {
  // Z^4(16x) forces Z^2(x) true and Z^2(3x) false (away from zero)
  auto n = normalize(parse("(exists x (and (> x 0) (pow 4 (* 16 x)) (pow 2 x)))"));
  ASSERT_EQ(n.systems[0].positives.size(), 1u);
  EXPECT_EQ(n.systems[0].positives[0].k, 4u);
  Decision d = decide_sentence(parse("(exists x (and (> x 0) (pow 4 (* 16 x)) (pow 2 (* 3 x))))"));
  EXPECT_TRUE(d.verdict.is_unsat());
  EXPECT_EQ(d.verdict.certificate, "forced");
}

TEST(Normalize, NegativeLeadingCoefficients) {
  // Z^2(100 - x) with x > 0: finite check
  Decision d = decide_sentence(parse("(exists x (and (> x 50) (pow 2 (- 100 x)) (pow 3 (- x 36))))"));
  ASSERT_TRUE(d.verdict.is_sat());
  EXPECT_EQ(d.verdict.witness, 100);
  // not Z^2(7 - x) holds automatically beyond 7
  d = decide_sentence(parse("(exists x (and (> x 0) (not (pow 2 (- 7 x))) (pow 2 x)))"));
  ASSERT_TRUE(d.verdict.is_sat());
  EXPECT_EQ(d.verdict.witness, 4);  // top of the bounded part (0, 7]
}

TEST(Normalize, PositivesPairwiseNonSimilar) {
  std::mt19937 rng(11);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    Sentence s = gen::random_power_system(rng, 12, 5, 4);
    for (const auto& sys : normalize(s).systems) {
      if (sys.resolved || sys.only) continue;
      for (std::size_t a = 0; a < sys.positives.size(); ++a)
        for (std::size_t b = a + 1; b < sys.positives.size(); ++b)
          EXPECT_FALSE(similar(sys.positives[a], sys.positives[b])) << print(s);
      for (const auto& at : sys.positives) EXPECT_GT(at.a, 0);
      for (const auto& at : sys.negatives) EXPECT_GT(at.a, 0);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Normalize, SemanticPreservation) {
  std::mt19937 rng(2024);
  for (int i = 0; i < 500; ++i) {
    Sentence s = gen::random_sentence(rng, 3, true);
    Normalized n;
    try {
      n = normalize(s);
    } catch (const std::length_error&) {
      continue;
    }
    oracle::Evaluator ev(s);
    for (Int x = -200; x <= 200; ++x) {
      bool any = false;
      for (const auto& sys : n.systems) any = any || sys.holds_at_x(x);
      ASSERT_EQ(any, ev.body_at(x)) << print(s) << " at x=" << x;
    }
  }
}

TEST(Normalize, ResolvedSystemsAgreeWithPoints) {
  std::mt19937 rng(99);
  for (int i = 0; i < 300; ++i) {
    Sentence s = gen::random_sentence(rng, 2, true);
    Normalized n;
    try {
      n = normalize(s);
    } catch (const std::length_error&) {
      continue;
    }
    for (const auto& sys : n.systems) {
      if (!sys.resolved) continue;
      if (sys.resolved->is_sat()) {
        EXPECT_TRUE(sys.holds_at_x(sys.resolved->witness)) << print(s);
      } else if (sys.resolved->is_unsat()) {
        for (Int x = -300; x <= 300; ++x) ASSERT_FALSE(sys.holds_at_x(x)) << print(s) << " " << sys.origin;
      }
    }
  }
}
