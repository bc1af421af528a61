#pragma once

// Random sentence generators shared by the property tests.

#include <monapres/encoder.hpp>
#include <monapres/formula.hpp>

#include <random>
#include <string>
#include <vector>

namespace monapres::gen {

inline std::vector<PredicateDecl> sample_decls() {
  return {
      {"T", {Rat(1, 2), Rat(1, 2), Rat(0)}},                 // u(u+1)/2
      {"Q", {Rat(2), Rat(1), Rat(-3)}},                      // 2u^2 + u - 3
      {"C", {Rat(1, 6), Rat(0), Rat(-1, 6), Rat(0)}},        // (u^3 - u)/6
      {"K", {Rat(1), Rat(-1), Rat(2), Rat(1)}},              // u^3 - u^2 + 2u + 1
      {"L", {Rat(3), Rat(1)}},                               // 3u + 1
      {"P", {Rat(7)}},                                       // 7
  };
}

inline Term affine_term(std::mt19937& rng, int amax, int bmax) {
  std::uniform_int_distribution<int> da(-amax, amax), db(-bmax, bmax);
  int a = da(rng), b = db(rng);
  if (a == 0) a = 1;
  return Term::add({Term::mul(a, Term::var("x")), Term::constant(b)});
}

inline Formula random_literal(std::mt19937& rng, bool with_preds) {
  std::uniform_int_distribution<int> pick(0, with_preds ? 7 : 4);
  std::uniform_int_distribution<int> c(-60, 60);
  switch (pick(rng)) {
    case 0: return Formula::cmp(Formula::Kind::Eq, affine_term(rng, 3, 20), Term::constant(c(rng)));
    case 1: return Formula::cmp(Formula::Kind::Lt, affine_term(rng, 3, 20), Term::constant(c(rng)));
    case 2: return Formula::cmp(Formula::Kind::Gt, affine_term(rng, 3, 20), Term::constant(c(rng)));
    case 3: return Formula::mod(affine_term(rng, 4, 10), 2 + rng() % 7, rng() % 9);
    case 4: return Formula::pow(2 + rng() % 4, affine_term(rng, 6, 30));
    default: {
      static const char* names[] = {"T", "Q", "C", "K", "L", "P"};
      return Formula::pred_app(names[rng() % 6], affine_term(rng, 4, 20));
    }
  }
}

inline Formula random_body(std::mt19937& rng, int depth, bool with_preds) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 5 : 1);
  switch (pick(rng)) {
    case 0:
    case 1: return random_literal(rng, with_preds);
    case 2: return Formula::negate(random_body(rng, depth - 1, with_preds));
    case 3:
    case 4: {
      std::vector<Formula> xs;
      int n = 2 + static_cast<int>(rng() % 2);
      for (int i = 0; i < n; ++i) xs.push_back(random_body(rng, depth - 1, with_preds));
      return Formula::conj(std::move(xs));
    }
    default: return Formula::disj({random_body(rng, depth - 1, with_preds), random_body(rng, depth - 1, with_preds)});
  }
}

inline Sentence random_sentence(std::mt19937& rng, int depth, bool with_preds) {
  Sentence s;
  s.decls = sample_decls();
  s.quant = Quantifier::Exists;
  s.body = random_body(rng, depth, with_preds);
  return s;
}

// Conjunction of power atoms Z^k(a x + b), optionally with a lower bound and negations.
inline Sentence random_power_system(std::mt19937& rng, int coeff, int kmax, int max_atoms) {
  std::uniform_int_distribution<int> dc(-coeff, coeff), dn(1, max_atoms), dk(2, kmax);
  std::vector<Formula> xs;
  int n = dn(rng);
  for (int i = 0; i < n; ++i) {
    int a = dc(rng), b = dc(rng);
    if (a == 0) a = 1 + static_cast<int>(rng() % static_cast<unsigned>(coeff));
    Formula f = Formula::pow(dk(rng), Term::add({Term::mul(a, Term::var("x")), Term::constant(b)}));
    if (i > 0 && rng() % 4 == 0) f = Formula::negate(f);
    xs.push_back(std::move(f));
  }
  if (rng() % 2) xs.push_back(Formula::cmp(Formula::Kind::Gt, Term::var("x"), Term::constant(dc(rng))));
  Sentence s;
  s.quant = Quantifier::Exists;
  s.body = xs.size() == 1 ? xs[0] : Formula::conj(std::move(xs));
  return s;
}

// Conjunction of up to three polynomial predicate atoms drawn from random degree <= 3 declarations.
inline Sentence random_poly_system(std::mt19937& rng, int coeff) {
  std::uniform_int_distribution<int> dc(-coeff, coeff), dd(2, 3), dn(1, 3);
  Sentence s;
  s.quant = Quantifier::Exists;
  int n = dn(rng);
  std::vector<Formula> xs;
  for (int i = 0; i < n; ++i) {
    int deg = dd(rng);
    std::vector<Rat> cs;
    for (int j = 0; j <= deg; ++j) cs.push_back(Rat(dc(rng)));
    if (cs[0] == 0) cs[0] = 1;
    std::string name = "R" + std::to_string(i);
    s.decls.push_back({name, cs});
    int a = dc(rng), b = dc(rng);
    if (a == 0) a = 1;
    Formula f = Formula::pred_app(name, Term::add({Term::mul(a, Term::var("x")), Term::constant(b)}));
    if (i > 0 && rng() % 4 == 0) f = Formula::negate(f);
    xs.push_back(std::move(f));
  }
  if (rng() % 2) xs.push_back(Formula::cmp(Formula::Kind::Gt, Term::var("x"), Term::constant(dc(rng))));
  s.body = xs.size() == 1 ? xs[0] : Formula::conj(std::move(xs));
  return s;
}

// n <= 4 variables, total degree <= 3, coefficients in [-coeff, coeff].
inline encoder::MultiPoly random_multipoly(std::mt19937& rng, int coeff) {
  std::uniform_int_distribution<int> dn(1, 4), dm(1, 5), dc(-coeff, coeff), dd(0, 3);
  encoder::MultiPoly h;
  h.n = static_cast<std::size_t>(dn(rng));
  int m = dm(rng);
  for (int i = 0; i < m; ++i) {
    std::vector<unsigned> e(h.n, 0);
    int d = dd(rng);
    for (int j = 0; j < d; ++j) ++e[rng() % h.n];
    int c = dc(rng);
    h.add(e, c == 0 ? 1 : c);
  }
  if (h.terms.empty()) h.add(std::vector<unsigned>(h.n, 0), 1);
  return h;
}

}  // namespace monapres::gen
