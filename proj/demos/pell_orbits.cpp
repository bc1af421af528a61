// Solution classes of w^2 - n z^2 = N and the first few members of each orbit.

#include <monapres/pell.hpp>

#include <iostream>
#include <string>

using namespace monapres;

int main(int argc, char** argv) {
  Int n = argc > 1 ? Int(argv[1]) : Int(2);
  Int N = argc > 2 ? Int(argv[2]) : Int(7);
  PellSolutionSet s = solve_generalized(n, N);
  std::cout << "w^2 - " << n << " z^2 = " << N << ", unit " << s.fundamental.w << " + " << s.fundamental.z << " sqrt(" << n << ")\n";
  for (const auto& c : s.classes) {
    std::cout << "class (" << c.rep.w << ", " << c.rep.z << "):";
    Lrbs z = c.z_seq();
    for (long m = -2; m <= 3; ++m) std::cout << " " << z.eval(m);
    std::cout << "\n";
  }
  if (s.classes.empty()) std::cout << "no solutions\n";
}
