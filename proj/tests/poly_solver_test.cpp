#include <monapres/decide.hpp>
#include <monapres/oracle.hpp>
#include <monapres/poly_solver.hpp>

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace monapres;

namespace {

const PredicateDecl kTri{"T", {Rat(1, 2), Rat(1, 2), Rat(0)}};

Atom quad(Int a, Int b) {
  Atom x = power_as_poly(Atom::power(true, 2, std::move(a), std::move(b)));
  return x;
}

Atom cubic(Int a, Int b, Int D) {
  Atom x = power_as_poly(Atom::power(true, 3, std::move(a), std::move(b)));
  x.D = std::move(D);
  return x;
}

bool all_hold(const std::vector<Atom>& as, const Int& y) {
  for (const auto& a : as)
    if (!a.predicate_at(y)) return false;
  return true;
}

}  // namespace

TEST(Depress, Triangular) {
  DepressedPred d = depress(kTri, 1, 0);
  EXPECT_EQ(d.degree, 2u);
  EXPECT_EQ(d.q, 2);
  EXPECT_EQ(d.residues, std::vector<Int>{1});
  EXPECT_EQ(d.a, 8);
  EXPECT_EQ(d.b, 1);
}

TEST(Depress, ShiftedCubeIsPureCube) {
  PredicateDecl c{"C", {Rat(1), Rat(3), Rat(3), Rat(1)}};
  DepressedPred d = depress(c, 1, 0);
  EXPECT_EQ(d.degree, 3u);
  EXPECT_EQ(d.D, 0);
  EXPECT_EQ(d.q, 1);
  EXPECT_EQ(d.a, 1);
  EXPECT_EQ(d.b, 0);
  Atom at = poly_atom(true, c, 1, 0);
  for (int x = -50; x <= 50; ++x) EXPECT_EQ(at.predicate_at(x), kth_root(Int(x), 3).has_value()) << x;
}

TEST(Depress, PointwiseOnRandomPredicates) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> dc(-6, 6), dab(-5, 5);
  for (int i = 0; i < 100; ++i) {
    int deg = 2 + static_cast<int>(rng() % 2);
    std::vector<Rat> cs;
    Int den = rng() % 3 == 0 ? 2 : 1;  // occasionally halve an even-valued form
    for (int j = 0; j <= deg; ++j) cs.push_back(Rat(dc(rng)));
    if (cs[0] == 0) cs[0] = 1;
    PredicateDecl d{"R", cs};
    if (den == 2) {
      PredicateDecl h{"R", {}};
      for (const auto& c : cs) h.coeffs.push_back(Rat(c / 2));
      if (h.integer_valued()) d = h;
    }
    int a = dab(rng), b = dab(rng);
    if (a == 0) a = 2;
    Atom at = poly_atom(true, d, a, b);
    for (int x = -100; x <= 100; ++x) {
      Int v = Int(a) * x + b;
      ASSERT_EQ(at.predicate_at(x), oracle::pred_member_by_enumeration(d, v)) << print(d) << " a=" << a << " b=" << b << " x=" << x;
    }
  }
}

TEST(PolyRedundant, SquaresWithSquareRatio) {
  auto r = poly_redundant(quad(1, 0), quad(4, 0));
  ASSERT_TRUE(r);
  EXPECT_FALSE(r->zero_only);
  EXPECT_EQ(r->lambda * r->lambda, Rat(1, 4));
  // t1 = +-lambda t2 on every point of t1^2 = y, t2^2 = 4y
  for (int t2 = -40; t2 <= 40; t2 += 2) {
    Int y = Int(t2 * t2) / 4;
    EXPECT_TRUE(quad(1, 0).predicate_at(y));
    EXPECT_EQ(Rat(Rat(t2) * r->lambda) * Rat(Rat(t2) * r->lambda), Rat(y));
  }
}

TEST(PolyRedundant, NotApplicable) {
  EXPECT_FALSE(poly_redundant(quad(1, 0), cubic(1, 0, 0)));
  EXPECT_FALSE(poly_redundant(cubic(1, 0, 1), cubic(1, 1, 1)));
  auto z = poly_redundant(quad(1, 0), quad(2, 0));
  ASSERT_TRUE(z);
  EXPECT_TRUE(z->zero_only);
}

TEST(PolyRedundant, CubicEllipsePoints) {
  // t1^3 - 7 t1 = y and t2^3 - 7 t2 = y: t1 = t2 or t1^2 + t1 t2 + t2^2 = 7
  auto r = poly_redundant(cubic(1, 0, -7), cubic(1, 0, -7));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->lambda, Rat(1));
  std::set<std::pair<Int, Int>> want;
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b)
      if (a * a + a * b + b * b == 7) want.insert({a, b});
  std::set<std::pair<Int, Int>> got(r->ellipse.begin(), r->ellipse.end());
  EXPECT_EQ(got, want);
  EXPECT_FALSE(want.empty());
}

TEST(SolvePositivePoly, EmptyAndSingle) {
  EXPECT_EQ(solve_positive_poly({}, 0, {}).kind(), SolutionSet::Kind::All);
  Atom t = poly_atom(true, kTri, 1, 0);
  SolutionSet s = solve_positive_poly({t}, -1, {});
  EXPECT_EQ(s.kind(), SolutionSet::Kind::Images);
  EXPECT_EQ(members(s, -1, 6), (std::vector<Int>{0, 1, 3, 6, 10, 15}));
}

TEST(SolvePositivePoly, FermatIsEllipticBounded) {
  Atom t = poly_atom(true, kTri, 1, 0);
  Atom c = power_as_poly(Atom::power(true, 3, 1, 0));
  SolverOptions opt;
  opt.bound = 10000;
  SolutionSet s = solve_positive_poly({t, c}, -1, opt);
  EXPECT_EQ(s.label, "3c-elliptic-baker-bounded");
  EXPECT_FALSE(s.complete);
  EXPECT_EQ(s.finite, (std::vector<Int>{0, 1}));
}

TEST(SolvePositivePoly, SplitCurveFamilyMatchesScan) {
  // 2y + 4 = t1^2, y = t2^3 - 3 t2: the curve 2 t1^2 = 2 (t2 - 1)^2 (t2 + 2) has a double point
  Atom q = quad(2, 4), c = cubic(1, 0, -3);
  IntPoly g = pair_curve(q, c);
  auto sp = split_double_root(g);
  ASSERT_TRUE(sp);
  RatPoly sq = RatPoly::linear(Rat(sp->alpha), Rat(sp->beta));
  EXPECT_EQ(sq * sq * RatPoly::linear(Rat(sp->gamma), Rat(sp->delta)), to_rat(g));
  SolutionSet s = solve_positive_poly({q, c}, -100, {});
  EXPECT_EQ(s.label, "3c-split");
  std::set<Int> brute;
  for (Int t = -3000; t <= 3000; ++t) {
    Int y = t * t * t - 3 * t;
    if (y > -100 && y < 100000000 && q.predicate_at(y)) brute.insert(y);
  }
  std::vector<Int> got;
  for (const auto& y : members(s, -100, 200))
    if (y < 100000000) got.push_back(y);
  EXPECT_EQ(got, std::vector<Int>(brute.begin(), brute.end()));
  EXPECT_GE(got.size(), 5u);
}

TEST(SolvePositivePoly, PellCase4cMembersSatisfyAllAtoms) {
  Atom q1 = quad(2, 4), q3 = quad(1, -2), c = cubic(1, 0, -3);
  std::vector<Atom> pos{q1, q3, c};
  SolutionSet s = solve_positive_poly(pos, -100, {});
  EXPECT_EQ(s.label, "4c-pell");
  ASSERT_FALSE(s.lrbs.empty());
  auto ms = members(s, -100, 8);
  ASSERT_GE(ms.size(), 4u);
  for (const auto& y : ms) EXPECT_TRUE(all_hold(pos, y)) << y;
  std::set<Int> brute;
  Int cap("1000000000000000");
  for (Int t = -100000; t <= 100000; ++t) {
    Int y = t * t * t - 3 * t;
    if (y > -100 && y < cap && all_hold(pos, y)) brute.insert(y);
  }
  std::vector<Int> got;
  for (const auto& y : members(s, -100, 40))
    if (y < cap) got.push_back(y);
  EXPECT_EQ(got, std::vector<Int>(brute.begin(), brute.end()));
}

TEST(SubtractDiscarded, IrrationalRadicandDiscardsNothing) {
  // Z^2(y) & Z^2(2y+1) against a cube: nothing matches
  Atom a1 = quad(1, 0), a2 = quad(2, 1);
  SquarePairResult sp = solve_square_pair(a1, a2);
  ASSERT_FALSE(sp.set.lrbs.empty());
  for (const auto& f : sp.set.lrbs) {
    DiscardReport d = subtract_discarded(f, cubic(1, 0, 0));
    EXPECT_TRUE(d.discarded.empty());
    EXPECT_EQ(d.residual.modulus, f.index.modulus);
    EXPECT_EQ(d.residual.residues, f.index.residues);
  }
}

TEST(SubtractDiscarded, MatchesPointwiseEvaluation) {
  // S: 2y + 4 and y - 2 both squares; the cubic y = t^3 - 3t holds on whole progressions of S
  Atom q1 = quad(2, 4), q3 = quad(1, -2), n = cubic(1, 0, -3);
  SquarePairResult sp = solve_square_pair(q1, q3);
  ASSERT_FALSE(sp.set.lrbs.empty());
  bool any_discard = false;
  for (const auto& f : sp.set.lrbs) {
    DiscardReport d = subtract_discarded(f, n);
    any_discard = any_discard || !d.discarded.empty();
    for (std::int64_t m = -50; m <= 50; ++m) {
      if (!f.index.contains(m)) continue;
      auto y = f.value_at(m);
      ASSERT_TRUE(y);
      EXPECT_EQ(!d.residual.contains(m), n.predicate_at(*y)) << f.label << " m=" << m;
    }
  }
  EXPECT_TRUE(any_discard);
}

TEST(SubtractDiscarded, EvenIndicesOfPellSquares) {
  // S: y and 2y + 1 squares, x^2 - 2 t^2 = 1.  R(u) = 32u^2 + 8u holds iff 2y + 1 = t^2 with
  // t = +-1 mod 8, which happens on every other Pell index.
  PredicateDecl r{"R", {Rat(32), Rat(8), Rat(0)}};
  Atom n = poly_atom(true, r, 1, 0);
  EXPECT_EQ(n.q, 8);
  SquarePairResult sp = solve_square_pair(quad(1, 0), quad(2, 1));
  ASSERT_FALSE(sp.set.lrbs.empty());
  for (const auto& f : sp.set.lrbs) {
    ASSERT_EQ(f.index.modulus, 1);
    DiscardReport d = subtract_discarded(f, n);
    EXPECT_EQ(d.residual.modulus, 2) << f.label;
    EXPECT_EQ(d.residual.residues.size(), 1u) << f.label;
    for (std::int64_t m = -50; m <= 50; ++m) {
      auto y = f.value_at(m);
      ASSERT_TRUE(y);
      EXPECT_EQ(!d.residual.contains(m), n.predicate_at(*y)) << f.label << " m=" << m;
    }
  }
}

TEST(DecidePoly, DiscardedIndices) {
  const char* decl = "(declare-pred R (coeffs 32 8 0)) (declare-pred V (coeffs 32 24 4))";
  Decision d = decide_sentence(parse(std::string(decl) + " (exists x (and (> x 0) (pow 2 x) (pow 2 (+ (* 2 x) 1)) (not (pred R x))))"));
  ASSERT_TRUE(d.verdict.is_sat());
  EXPECT_EQ(d.verdict.witness, 4);
  // V covers t = +-3 mod 8, so together nothing is left
  Sentence all = parse(std::string(decl) + " (exists x (and (pow 2 x) (pow 2 (+ (* 2 x) 1)) (not (pred R x)) (not (pred V x))))");
  d = decide_sentence(all);
  EXPECT_TRUE(d.verdict.is_unsat());
  EXPECT_TRUE(oracle::scan(all, 100000).witnesses.empty());
}

TEST(DecidePoly, Examples) {
  Sentence fermat = parse("(declare-pred T (coeffs 1/2 1/2 0)) (declare-pred Cube (coeffs 1 0 0 0))"
                          " (exists x (and (> x 1) (pred T x) (pred Cube x)))");
  SolverOptions opt;
  opt.bound = 100000;
  Decision d = decide_sentence(fermat, opt);
  EXPECT_FALSE(d.verdict.is_sat());
  Sentence contra = parse("(declare-pred T (coeffs 1/2 1/2 0)) (exists x (and (pred T x) (not (pred T x))))");
  d = decide_sentence(contra);
  EXPECT_TRUE(d.verdict.is_unsat());
  Sentence gessel = parse("(exists x (and (pow 2 x) (> x 64) (or (pow 2 (+ (* 5 x) 4)) (pow 2 (- (* 5 x) 4)))))");
  d = decide_sentence(gessel);
  ASSERT_TRUE(d.verdict.is_sat());
  EXPECT_EQ(d.verdict.witness, 169);
}

TEST(DecidePoly, TriangularSquares) {
  // 36 is the first triangular square above 1
  Sentence s = parse("(declare-pred T (coeffs 1/2 1/2 0)) (exists x (and (> x 1) (pred T x) (pow 2 x)))");
  Decision d = decide_sentence(s);
  ASSERT_TRUE(d.verdict.is_sat());
  EXPECT_EQ(d.verdict.witness, 36);
}
