#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>

#include "cgf/quadrature.hpp"
#include "cgf/vdw.hpp"

using namespace cgf;
using Catch::Approx;

namespace {

const Complex I{0, 1};
constexpr double kFrozenC6 = 6.499026705405875;

double cdist(Complex a, Complex b) { return std::abs(a - b); }

// Frozen imaginary-frequency values of the inner integral (independent
// reference computation, tolerance-stacked well below the checks here).
struct FrozenJ {
  double sigma;
  Complex j;
};
const FrozenJ kFrozen[] = {
    {0.25, {0.9717295407422215, -1.6563098886050347}},
    {0.5, {1.0832631682459806, -0.9526942185380375}},
    {1.0, {0.8060346350777453, -0.3712203764760414}},
    {2.0, {0.46803086992145687, -0.112236804459168}},
};

}  // namespace

TEST_CASE("adaptive quadrature on smooth references") {
  const auto cube = [](double x) -> Complex { return {x * x * x, 0.0}; };
  auto q = adaptiveGK(cube, 0.0, 1.0, 1e-12);
  CHECK(q.value.real() == Approx(0.25).epsilon(1e-14));
  CHECK(q.intervals == 1);  // K15 is exact on cubics

  const auto sine = [](double x) -> Complex { return {std::sin(x), 0.0}; };
  q = adaptiveGK(sine, 0.0, std::numbers::pi, 1e-12);
  CHECK(q.value.real() == Approx(2.0).epsilon(1e-13));

  const auto osc = [](double x) -> Complex { return std::exp(Complex(0, 40.0) * x); };
  q = adaptiveGK(osc, 0.0, 1.0, 1e-11);
  const Complex exact = (std::exp(Complex(0, 40.0)) - 1.0) / Complex(0, 40.0);
  CHECK(cdist(q.value, exact) < 1e-11);
  // Every evaluated panel counts, including parents that were later split.
  CHECK(q.nodesUsed >= q.intervals * 15);
  CHECK(q.nodesUsed % 15 == 0);
}

TEST_CASE("adaptive quadrature stalls on an exhausted budget") {
  const auto sine = [](double x) -> Complex { return {std::sin(x), 0.0}; };
  CHECK_THROWS_AS(adaptiveGK(sine, 0.0, 3.0, 1e-15, 2), QuadratureStall);
  CHECK_THROWS_AS(adaptiveGK(sine, 1.0, 0.0, 1e-8), DomainError);
}

TEST_CASE("quadrature results do not depend on the thread count") {
  const auto f = [](double x) -> Complex {
    return std::exp(Complex(0, 7.0) * x) / (1.0 + x * x);
  };
  setenv("CGF_THREADS", "1", 1);
  const auto serial = adaptiveGK(f, 0.0, 2.0, 1e-12);
  setenv("CGF_THREADS", "4", 1);
  const auto threaded = adaptiveGK(f, 0.0, 2.0, 1e-12);
  unsetenv("CGF_THREADS");
  CHECK(serial.value == threaded.value);  // byte-identical
  CHECK(serial.nodesUsed == threaded.nodesUsed);
  CHECK(serial.intervals == threaded.intervals);
}

TEST_CASE("convolution plans resolve the delta constraint") {
  CHECK_THROWS_AS(buildPlan({}), DomainError);
  CHECK_THROWS_AS(buildPlan({{1, 1.0, -0.5}}), DomainError);
  CHECK_THROWS_AS(buildPlan({{1, -1.0, -0.5}, {2, 1.0, -0.5}}), DomainError);

  const auto plan = buildPlan({{1, 1.0, -0.5}, {2, 1.0, -0.5}});
  CHECK(plan.freeShiftCount() == 1);
  CHECK(plan.totalEnergy() == Approx(-1.0));
  const auto effs = plan.effectiveEnergies({Complex(0.2)});
  REQUIRE(effs.size() == 2);
  CHECK(cdist(effs[0], Complex(-0.7)) < 1e-15);
  CHECK(cdist(effs[1], Complex(-0.3)) < 1e-15);
  CHECK_THROWS_AS(plan.effectiveEnergies({Complex(0.1), Complex(0.1)}), DomainError);

  const auto plan3 = buildPlan({{1, 1.0, -0.5}, {2, 1.0, -0.3}, {3, 2.0, -0.2}});
  CHECK(plan3.freeShiftCount() == 2);
  const auto e3 = plan3.effectiveEnergies({Complex(0.1, 0.2), Complex(-0.4, 0.1)});
  // The implied shifts always sum to zero.
  Complex shiftSum{};
  for (std::size_t k = 0; k < 3; ++k)
    shiftSum += Complex(plan3.particles()[k].energyShare) - e3[k];
  CHECK(std::abs(shiftSum) < 1e-15);
}

TEST_CASE("energy-to-frequency map") {
  // Ground state, no shift: E = -w^2/2 gives v = w (the q = 0 reduction).
  const auto ground = shiftToV(Complex(-0.5), 1.0);
  CHECK(ground.branch == Branch::Bound);
  CHECK(cdist(ground.v, Complex(1.0)) < 1e-15);
  CHECK_FALSE(ground.atBranchPoint);

  // Positive effective energy: continuum tag with the real parameter u.
  const auto cont = shiftToV(Complex(0.5), 1.0);
  CHECK(cont.branch == Branch::Continuum);
  CHECK(cdist(cont.v, Complex(1.0)) < 1e-15);
  CHECK(cdist(cont.boundForm(), I) < 1e-15);

  CHECK(shiftToV(Complex(0.0), 1.0).atBranchPoint);
  CHECK_THROWS_AS(shiftToV(Complex(-0.5), 0.0), DomainError);

  // Complex energies land on the principal branch with Re(v) > 0, and v is
  // continuous along the imaginary-axis contour.
  Complex prev{};
  for (int k = 0; k <= 50; ++k) {
    const double sigma = 0.1 * k;
    const auto s = shiftToV(Complex(-0.5, -sigma), 1.0);
    CHECK(s.branch == Branch::Bound);
    CHECK(s.v.real() > 0);
    if (k > 0) CHECK(cdist(s.v, prev) < 0.3);
    prev = s.v;
  }
}

TEST_CASE("dipole coupling structure and first order") {
  const TwoParticleExpr v = dipoleCoupling();
  REQUIRE(v.terms().size() == 3);
  for (const auto& t : v.terms()) {
    CHECK(applyToVacuum(t.first).maxQuanta() == 4);
    CHECK(applyToVacuum(t.second).maxQuanta() == 4);
  }

  CHECK(firstOrderCheck().isZero());

  // <V V> over the product vacuum: (4+1+1) * (5/(2w^4))^2 = 75/(2 w^8).
  const Coefficient vv = multiply(v, v).vacuumExpectation();
  const Coefficient expected =
      Coefficient(BigRational(75, 2)) * Coefficient::symbol(Symbol::w, -8);
  CHECK(vv == expected);
}

TEST_CASE("angular multiplicity of the second-order contraction") {
  const MultiplicityReport rep = dipoleMultiplicityReport();
  CHECK(rep.isotropic);
  CHECK(rep.crossTermsVanish);
  CHECK(rep.contractionMatches);
  CHECK(rep.weight == 6);
}

TEST_CASE("inner integral: exact three-term case at v = w") {
  // alpha = 0 keeps v = w: rho = 0 and J collapses to
  // -i/2 * (4/(2w-e2) + 1/(3w-e2)) at w = 1, e2 = 1: -i * 9/4.
  VdwConfig cfg;
  long terms = 0;
  const Complex j0 = innerIntegralJ(Complex(0.0), cfg, &terms);
  CHECK(cdist(j0, Complex(0.0, -2.25)) < 1e-15);
  CHECK(terms <= 8);
}

TEST_CASE("inner integral reproduces frozen contour values") {
  VdwConfig cfg;
  for (const auto& f : kFrozen) {
    const Complex j = innerIntegralJ(I * f.sigma, cfg);
    CHECK(cdist(j, f.j) < 1e-12);
    // Schwarz pairing across the real axis.
    const Complex jbar = innerIntegralJ(-I * f.sigma, cfg);
    CHECK(cdist(jbar, -std::conj(j)) < 1e-12);
    // The paired product is real and attractive.
    const Complex prod = j * jbar;
    CHECK(std::abs(prod.imag()) < 1e-12 * std::abs(prod));
    CHECK(prod.real() < 0);
  }
}

TEST_CASE("inner integral failure modes") {
  VdwConfig cfg;
  // Real alpha beyond the branch point: Re(v) = 0, geometric ratio on the
  // unit circle.
  CHECK_THROWS_AS(innerIntegralJ(Complex(0.6), cfg), SeriesDivergence);
  // Exactly at the branch point v = 0.
  CHECK_THROWS_AS(innerIntegralJ(Complex(0.5), cfg), PoleHit);
  // Real alpha = 4/9 puts 3v = e2 with v = 1/3: a hydrogen-spectrum pole.
  CHECK_THROWS_AS(innerIntegralJ(Complex(4.0 / 9.0), cfg), PoleHit);
}

TEST_CASE("series and Fock-oracle inner integrals agree on the contour") {
  VdwConfig cfg;
  const VdwOracle oracle(cfg);
  const double sigmas[] = {0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
  for (double sigma : sigmas) {
    const Complex js = innerIntegralJ(I * sigma, cfg);
    const Complex jo = oracle.innerIntegralJ(I * sigma);
    CHECK(cdist(js, jo) < 1e-6 * std::abs(js));
  }
}

TEST_CASE("damped t-integration extrapolates to the series value") {
  // J(alpha) is the eps -> 0+ limit of int_0^inf e^{i e2 t - eps t} S(t) dt.
  // Evaluate the damped integral numerically from the closed-form S(t) at
  // eps = 1e-2, 1e-3 and Richardson-extrapolate linearly in eps.
  VdwConfig cfg;
  const Complex alpha = Complex(0, 0.7);
  const Complex v = shiftToV(alpha - Complex(0.5), cfg.omega).boundForm();
  const auto damped = [&](double eps) {
    const auto f = [&](double t) -> Complex {
      return std::exp(Complex(0, cfg.e2) * t - eps * t) *
             closedFormRxGRx(cfg.omega, v, Complex(t));
    };
    return adaptiveGK(f, 0.0, 30.0, 1e-12).value;
  };
  const Complex extrap = (10.0 * damped(1e-3) - damped(1e-2)) / 9.0;
  const Complex series = innerIntegralJ(alpha, cfg);
  CHECK(cdist(extrap, series) < 1e-4 * std::abs(series));
}

TEST_CASE("second-order energy reproduces the dispersion coefficient") {
  VdwConfig cfg;
  const C6Result res = secondOrderEnergy(cfg);
  CHECK(res.c6 == Approx(kFrozenC6).epsilon(1e-7));
  CHECK(res.c6 > 0);
  CHECK(res.estimatedError < 1e-6);
  CHECK(res.estimatedError > 0);
  CHECK(res.seriesTermsUsed > 5);
  CHECK(res.quadNodesUsed >= 15);
  CHECK(res.oracleDelta == 0.0);

  // Tightened quadrature: closer still to the frozen value.
  VdwConfig tight = cfg;
  tight.quadTol = 1e-10;
  const C6Result res2 = secondOrderEnergy(tight);
  CHECK(res2.c6 == Approx(kFrozenC6).epsilon(1e-9));

  // Contour-scale stability: halving the scale moves c6 by less than the
  // combined error estimates.
  VdwConfig half = cfg;
  half.contourScale = 0.5 * cfg.omega * cfg.omega;
  const C6Result res3 = secondOrderEnergy(half);
  CHECK(std::abs(res3.c6 - res.c6) <=
        2.0 * (res.estimatedError + res3.estimatedError) + 1e-12);
}

TEST_CASE("oracle pipeline matches the analytic pipeline end to end") {
  VdwConfig cfg;
  const C6Result res = secondOrderEnergy(cfg, C6Route::Oracle);
  CHECK(res.c6 == Approx(kFrozenC6).epsilon(1e-6));
  CHECK(res.oracleDelta < 1e-6);
}

TEST_CASE("config validation") {
  VdwConfig cfg;
  cfg.omega = -1;
  CHECK_THROWS_AS(secondOrderEnergy(cfg), DomainError);
  cfg = {};
  cfg.quadTol = 0;
  CHECK_THROWS_AS(secondOrderEnergy(cfg), DomainError);
  cfg = {};
  cfg.seriesTol = 2;
  CHECK_THROWS_AS(secondOrderEnergy(cfg), DomainError);
  cfg = {};
  cfg.truncation.maxQuanta = 2;
  CHECK_THROWS_AS(secondOrderEnergy(cfg), DomainError);
  cfg = {};
  CHECK(cfg.effectiveContourScale() == Approx(1.0));
  cfg.contourScale = 2.5;
  CHECK(cfg.effectiveContourScale() == Approx(2.5));
}
