// Prints the normalized disjuncts of a sentence and what happened to each atom.

#include <monapres/report.hpp>

#include <iostream>

using namespace monapres;

int main(int argc, char** argv) {
  std::string text = argc > 1 ? argv[1] : "(exists x (and (> x 0) (pow 2 (* 5 x)) (pow 3 (* 4 x)) (not (pow 6 (* 24 x)))))";
  Sentence s = parse(text);
  Normalized n = normalize(s);
  for (const auto& sys : n.systems) {
    std::cout << sys.origin << "\n";
    for (const auto& l : sys.log) std::cout << "  " << l << "\n";
  }
  Decision d = decide_sentence(s);
  std::cout << human_line(make_record("", 0, d)) << "\n";
}
