#include <monapres/oracle.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace monapres;

namespace {

const std::string kTri = "(declare-pred T (coeffs 1/2 1/2 0))\n";

}  // namespace

TEST(EvalAt, Examples) {
  EXPECT_TRUE(oracle::eval_at(parse("(exists x (pow 2 x))"), 144));
  EXPECT_FALSE(oracle::eval_at(parse(kTri + "(exists x (pred T x))"), 7));
  EXPECT_TRUE(oracle::eval_at(parse(kTri + "(exists x (pred T x))"), 6));
  EXPECT_FALSE(oracle::eval_at(parse("(exists x (> x 8))"), 8));
  EXPECT_TRUE(oracle::eval_at(parse("(exists x (mod (- x) 5 2))"), 3));
  EXPECT_TRUE(oracle::eval_at(parse("(exists x (pow 3 (- x)))"), 27));
  EXPECT_FALSE(oracle::eval_at(parse("(exists x (pow 2 (- x)))"), 4));
}

TEST(EvalAt, BigValues) {
  Sentence s = parse("(exists x (pow 5 (* 7 x)))");
  Int x = ipow(Int(7), 4) * ipow(Int(123456789), 5);
  EXPECT_TRUE(oracle::eval_at(s, x));
  EXPECT_FALSE(oracle::eval_at(s, x + 1));
  Sentence c = parse("(declare-pred C (coeffs 1 0 -1 0))\n(exists x (pred C x))");
  Int u("98765432109");
  EXPECT_TRUE(oracle::eval_at(c, u * u * u - u));
  EXPECT_FALSE(oracle::eval_at(c, u * u * u - u + 1));
}

TEST(EvalAt, PredicateAgreesWithEnumeration) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-6, 6);
  for (int trial = 0; trial < 60; ++trial) {
    int deg = 2 + trial % 2;
    PredicateDecl d{"P", {}};
    do {
      d.coeffs.clear();
      Int den = 1 + rng() % 6;
      for (int i = 0; i <= deg; ++i) d.coeffs.push_back(make_rat(Int(c(rng)), den));
    } while (d.coeffs[0] == 0 || !d.integer_valued());
    Sentence s;
    s.decls = {d};
    s.body = Formula::pred_app("P", Term::var("x"));
    oracle::Evaluator ev(s);
    for (int v = -300; v <= 300; ++v)
      ASSERT_EQ(ev.pred_member("P", v), oracle::pred_member_by_enumeration(d, v)) << print(d) << " at " << v;
  }
}

TEST(Scan, SquaresUpToTen) {
  auto rep = oracle::scan(parse("(exists x (pow 2 x))"), 10);
  EXPECT_TRUE(rep.exhaustive);
  EXPECT_EQ(rep.witnesses, (std::vector<Int>{0, 1, 4, 9}));
}

TEST(Scan, CapAndExhaustive) {
  auto all = oracle::scan(parse("(exists x (= x x))"), 100, 10);
  EXPECT_EQ(all.witnesses.size(), 10u);
  EXPECT_FALSE(all.exhaustive);
  auto none = oracle::scan(parse("(exists x (< x x))"), 100, 10);
  EXPECT_TRUE(none.witnesses.empty());
  EXPECT_TRUE(none.exhaustive);
}

TEST(Scan, ForallCollectsCounterexamples) {
  auto rep = oracle::scan(parse("(forall x (not (pow 2 x)))"), 5);
  EXPECT_EQ(rep.witnesses, (std::vector<Int>{0, 1, 4}));
}

TEST(Scan, CatalanNoWitness) {
  auto rep = oracle::scan(parse("(exists x (and (> x 8) (pow 2 x) (pow 3 (+ x 1))))"), 1000000);
  EXPECT_TRUE(rep.exhaustive);
  EXPECT_TRUE(rep.witnesses.empty());
}
