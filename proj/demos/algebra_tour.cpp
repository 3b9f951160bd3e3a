// A short tour of the exact symbolic layer: Wick reordering, adjoints,
// commutators, vacuum expectations, and the 15-generator closure.

#include <iostream>

#include "cgf/parse.hpp"

using namespace cgf;

namespace {

void show(const std::string& text) {
  std::cout << "  " << text << "  ->  " << printExpr(parseExpr(text)) << "\n";
}

}  // namespace

int main() {
  std::cout << "Normal ordering (exact Gaussian-rational coefficients):\n";
  show("a1*a1^");
  show("a1^2*a1^^2");
  show("b2*a1^*b2^");
  show("(a1+a1^)^3");

  std::cout << "\nPair operators close on the number operator:\n";
  show("M*Mdag - Mdag*M");

  std::cout << "\nPhysical operators are polynomials in the modes with 1/w weights:\n";
  show("x_3");
  std::cout << "  vev(r) = " << printCoefficient(vacuumExpectation(parseExpr("r"))) << "\n";
  std::cout << "  [r, x_3] = " << printExpr(commutator(parseExpr("r"), parseExpr("x_3")))
            << "  (r is diagonal in the same basis as the dipole)\n";

  std::cout << "\nS-state norms, exact: <ns|ns> with squared norm n!(n+1)!\n";
  for (int n = 0; n <= 3; ++n) {
    const KetState s = sState(n);
    std::cout << "  n=" << n << ": raw <ns|ns> = "
              << printCoefficient(innerProductRaw(s, s)) << ", divisor "
              << s.normDivisor2() << "\n";
  }

  const ClosureReport closure = checkClosure();
  std::cout << "\nGenerator closure: " << closure.entries.size()
            << " commutators, all resolved in the span: "
            << (closure.pass ? "yes" : "NO") << "\n";
  std::cout << "  example: [" << generatorString(closure.entries[6].left) << ", "
            << generatorString(closure.entries[6].right) << "] has "
            << closure.entries[6].coefficients.size() << " nonzero structure constant(s)\n";
  return closure.pass ? 0 : 1;
}
