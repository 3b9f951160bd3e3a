#pragma once

// Deterministic random-expression generator shared by the property tests and
// the acceptance suite.

#include <random>

#include "cgf/wick.hpp"

namespace cgf::testing {

struct ExprGenOptions {
  unsigned maxTerms = 3;
  unsigned maxExponent = 3;    // per elementary slot
  unsigned maxModesTouched = 3;
  bool symbolicOmega = false;  // mix w powers into coefficients
};

inline GaussianRational randomGaussian(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> pickImag(0, 2);
  BigRational re(num(rng), den(rng));
  BigRational im = pickImag(rng) == 0 ? BigRational(num(rng), den(rng)) : BigRational(0);
  return {re, im};
}

inline Coefficient randomCoefficient(std::mt19937& rng, bool symbolicOmega) {
  GaussianRational g = randomGaussian(rng);
  if (g.isZero()) g = GaussianRational(1);
  Coefficient c(g);
  if (symbolicOmega) {
    std::uniform_int_distribution<int> wpow(-2, 2);
    c = c * Coefficient::symbol(Symbol::w, wpow(rng));
  }
  return c;
}

inline NormalMonomial randomMonomial(std::mt19937& rng, const ExprGenOptions& opt) {
  NormalMonomial m;
  std::uniform_int_distribution<unsigned> nslots(1, opt.maxModesTouched);
  std::uniform_int_distribution<int> slot(0, 7);
  std::uniform_int_distribution<unsigned> expo(1, opt.maxExponent);
  const unsigned k = nslots(rng);
  for (unsigned j = 0; j < k; ++j) m.e[slot(rng)] = expo(rng);
  return m;
}

inline OperatorExpr randomExpr(std::mt19937& rng, const ExprGenOptions& opt = {}) {
  std::uniform_int_distribution<unsigned> nterms(1, opt.maxTerms);
  OperatorExpr x;
  const unsigned k = nterms(rng);
  for (unsigned j = 0; j < k; ++j)
    x.addTerm(randomMonomial(rng, opt), randomCoefficient(rng, opt.symbolicOmega));
  return x;
}

}  // namespace cgf::testing
