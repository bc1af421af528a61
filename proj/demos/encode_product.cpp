// Encodes x1 x2 = 6 over Z^2 and checks it on a small grid.

#include <monapres/encoder.hpp>

#include <iostream>

using namespace monapres;

int main(int argc, char** argv) {
  encoder::MultiPoly h = encoder::parse_poly(argc > 1 ? argv[1] : "(- (* x1 x2) 6)");
  encoder::Encoding e = encoder::encode(h);
  std::cout << e.formula.str() << "\n";
  std::cout << encoder::atom_count(e.formula) << " atoms, " << encoder::bound_variables(e.formula).size() << " bound variables\n";
  auto rep = encoder::check_equiv(h, e.formula, 15);
  std::cout << (rep.pass ? "agrees" : "differs") << " on " << rep.points << " points\n";
  return rep.pass ? 0 : 1;
}
