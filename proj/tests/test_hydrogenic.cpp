#include <catch2/catch_amalgamated.hpp>

#include "cgf/hydrogenic.hpp"

using namespace cgf;

namespace {

OperatorExpr aOp(int i, bool dag) { return OperatorExpr::mode(Family::a, i, dag); }
OperatorExpr bOp(int i, bool dag) { return OperatorExpr::mode(Family::b, i, dag); }

KetState scaleKet(const Coefficient& c, const KetState& k) {
  return KetState(c * k.expr(), k.normDivisor2());
}

}  // namespace

TEST_CASE("generator dictionary matches the printed definitions") {
  CHECK(generator(GeneratorName::M) ==
        multiply(aOp(1, false), bOp(1, false)) + multiply(aOp(2, false), bOp(2, false)));
  CHECK(generator(GeneratorName::Na3) ==
        multiply(aOp(1, true), aOp(1, false)) - multiply(aOp(2, true), aOp(2, false)));
  // m(1) = a2 b1 + a1 b2
  CHECK(generator(GeneratorName::m1) ==
        multiply(aOp(2, false), bOp(1, false)) + multiply(aOp(1, false), bOp(2, false)));
  // m(2) = -i a2 b1 + i a1 b2
  CHECK(generator(GeneratorName::m2) ==
        (-Coefficient::imaginaryUnit()) * multiply(aOp(2, false), bOp(1, false)) +
            Coefficient::imaginaryUnit() * multiply(aOp(1, false), bOp(2, false)));
}

TEST_CASE("adjoint pairing across the dictionary") {
  CHECK(adjoint(generator(GeneratorName::M)) == generator(GeneratorName::Mdag));
  for (int L = 1; L <= 3; ++L) {
    CHECK(adjoint(generatorM(L, false)) == generatorM(L, true));
    CHECK(adjoint(generatorN(L, Family::a)) == generatorN(L, Family::a));
    CHECK(adjoint(generatorN(L, Family::b)) == generatorN(L, Family::b));
  }
  CHECK(adjoint(generator(GeneratorName::Nplus2)) == generator(GeneratorName::Nplus2));
}

TEST_CASE("physical operators") {
  const OperatorExpr r = physicalOperator(PhysicalOpName::r);
  CHECK(vacuumExpectation(r) == Coefficient::symbol(Symbol::w, -1));

  // r is self-adjoint, as are the x components.
  CHECK(adjoint(r) == r);
  for (auto p : {PhysicalOpName::x1, PhysicalOpName::x2, PhysicalOpName::x3})
    CHECK(adjoint(physicalOperator(p)) == physicalOperator(p));

  // r and x_3 commute (multiplication operators in disguise).
  CHECK(commutator(r, physicalOperator(PhysicalOpName::x3)).isZero());
  // L^2 commutes with the scalar pair ladder.
  CHECK(commutator(physicalOperator(PhysicalOpName::L2), generator(GeneratorName::Mdag))
            .isZero());
  // rp_lambda is self-adjoint as printed.
  CHECK(adjoint(physicalOperator(PhysicalOpName::rp3)) ==
        physicalOperator(PhysicalOpName::rp3));
}

TEST_CASE("s states: eigenrelations and exact norms") {
  const OperatorExpr L2 = physicalOperator(PhysicalOpName::L2);
  const OperatorExpr n2 = generator(GeneratorName::Nplus2);

  for (int n = 0; n <= 5; ++n) {
    KetState s = sState(n);
    // <ns|ns> = 1 exactly: raw norm n!(n+1)! over the attached divisor.
    CHECK(innerProduct(s, s) == Coefficient::one());
    if (n <= 4) {
      CHECK(applyToKet(L2, s).isZero());
      CHECK(applyToKet(n2, s) == scaleKet(Coefficient(2 * n + 2), s));
    }
  }
  CHECK_THROWS_AS(sState(-1), DomainError);
}

TEST_CASE("p states: printed normalization, frozen norm and eigenvalues") {
  CHECK_THROWS_AS(pState(0), DomainError);

  // Squared norm under the printed 1/sqrt(n!(n+1)!) normalization: (n+2)/(6n).
  for (int n = 1; n <= 4; ++n) {
    KetState p = pState(n);
    CHECK(innerProduct(p, p) == Coefficient(BigRational(n + 2, 6 * n)));
  }

  // Orthogonal to the s ladder.
  CHECK(innerProductRaw(sState(1), pState(1)).isZero());

  // l_3 eigenvalue is 2 (twice the physical m = 1: the representation counts
  // the doubled angle), L^2 eigenvalue is 2 = l(l+1) with l = 1.
  const OperatorExpr l3 = physicalOperator(PhysicalOpName::l3);
  const OperatorExpr L2 = physicalOperator(PhysicalOpName::L2);
  for (int n = 1; n <= 3; ++n) {
    KetState p = pState(n);
    CHECK(applyToKet(l3, p) == scaleKet(Coefficient(2), p));
    CHECK(applyToKet(L2, p) == scaleKet(Coefficient(2), p));
  }
}

TEST_CASE("closure: all 105 commutators resolve in the 15-generator span") {
  ClosureReport rep = checkClosure();
  CHECK(rep.pass);
  CHECK(rep.entries.size() == 105);
  for (const auto& e : rep.entries) CHECK(e.residual.isZero());

  auto lookup = [&](GeneratorName a, GeneratorName b) {
    for (const auto& e : rep.entries)
      if (e.left == a && e.right == b) return e.coefficients;
    FAIL("pair not found");
    return std::map<GeneratorName, GaussianRational>{};
  };

  // [M, Mdag] = N+2
  auto c1 = lookup(GeneratorName::M, GeneratorName::Mdag);
  REQUIRE(c1.size() == 1);
  CHECK(c1.at(GeneratorName::Nplus2) == GaussianRational(1));

  // [n_a(3), Mdag] = mdag(3)
  auto c2 = lookup(GeneratorName::Na3, GeneratorName::Mdag);
  REQUIRE(c2.size() == 1);
  CHECK(c2.at(GeneratorName::mdag3) == GaussianRational(1));

  // [m(1), mdag(3)] = i n_a(2) - i n_b(2): imaginary structure constants.
  auto c3 = lookup(GeneratorName::m1, GeneratorName::mdag3);
  REQUIRE(c3.size() == 2);
  CHECK(c3.at(GeneratorName::Na2) == GaussianRational::i());
  CHECK(c3.at(GeneratorName::Nb2) == -GaussianRational::i());

  // l(3) = n_a(3) - n_b(3) commutes with M: check via the span expansion.
  OperatorExpr l3 = physicalOperator(PhysicalOpName::l3);
  CHECK(commutator(l3, generator(GeneratorName::M)).isZero());
}

TEST_CASE("closure structure constants are antisymmetric") {
  // [A,B] = -[B,A] holds by construction; verify the expansion agrees with a
  // direct recomputation for a few pairs including the central one.
  for (auto [a, b] : {std::pair{GeneratorName::M, GeneratorName::Mdag},
                      std::pair{GeneratorName::m2, GeneratorName::mdag2},
                      std::pair{GeneratorName::Na1, GeneratorName::m1}}) {
    OperatorExpr ab = commutator(generator(a), generator(b));
    OperatorExpr ba = commutator(generator(b), generator(a));
    CHECK((ab + ba).isZero());
    auto ex = expandInGenerators(ab);
    REQUIRE(ex.has_value());
    OperatorExpr rebuilt;
    for (const auto& [g, c] : *ex) rebuilt += Coefficient(c) * generator(g);
    CHECK(rebuilt == ab);
  }
}
