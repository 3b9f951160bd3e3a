#pragma once

#include <numbers>

#include "cgf/mcgf.hpp"
#include "cgf/quadrature.hpp"

namespace cgf {

// ---------------------------------------------------------------------------
// Configuration and result types
// ---------------------------------------------------------------------------

struct VdwConfig {
  double omega = 1.0;  // ground-state frequency; the variational optimum is e2
  double e2 = 1.0;
  double seriesTol = 1e-12;
  double quadTol = 1e-8;
  double contourScale = 0;  // 0 means "use omega^2"
  FockTruncation truncation{160};

  double effectiveContourScale() const {
    return contourScale > 0 ? contourScale : omega * omega;
  }

  void validate() const {
    if (!(omega > 0)) throw DomainError("VdwConfig: omega must be positive");
    if (!(e2 > 0)) throw DomainError("VdwConfig: e2 must be positive");
    if (!(seriesTol > 0 && seriesTol < 1))
      throw DomainError("VdwConfig: seriesTol must lie in (0,1)");
    if (!(quadTol > 0 && quadTol < 1))
      throw DomainError("VdwConfig: quadTol must lie in (0,1)");
    if (contourScale < 0) throw DomainError("VdwConfig: contourScale must be positive");
    if (truncation.maxQuanta < 4)
      throw DomainError("VdwConfig: truncation too small for the dipole bracket");
  }
};

struct C6Result {
  double c6 = 0;              // E2 = -c6 * e2 / R^6
  double estimatedError = 0;  // absolute, from the quadrature internals
  long seriesTermsUsed = 0;   // largest term count of any single series evaluation
  long quadNodesUsed = 0;
  double oracleDelta = 0;     // |c6_oracle - c6_series| / c6_series when oracle ran
};

enum class C6Route : std::uint8_t { Series, Oracle };

// ---------------------------------------------------------------------------
// Dipole coupling over the two-particle product algebra
// ---------------------------------------------------------------------------

inline OperatorExpr radialDipoleOperator(PhysicalOpName component = PhysicalOpName::x3) {
  return multiply(physicalOperator(PhysicalOpName::r), physicalOperator(component));
}

// r1 r2 (2 z1 z2 - x1 x2 - y1 y2); the external scalar beta = e2/R^3 is kept
// outside the algebra.
inline TwoParticleExpr dipoleCoupling() {
  const OperatorExpr rz = radialDipoleOperator(PhysicalOpName::x3);
  const OperatorExpr rx = radialDipoleOperator(PhysicalOpName::x1);
  const OperatorExpr ry = radialDipoleOperator(PhysicalOpName::x2);
  return Coefficient(2) * TwoParticleExpr::tensorTerm(rz, rz) -
         TwoParticleExpr::tensorTerm(rx, rx) - TwoParticleExpr::tensorTerm(ry, ry);
}

// Exact first-order energy correction over the product vacuum.
inline Coefficient firstOrderCheck() { return dipoleCoupling().vacuumExpectation(); }

// Symbolic consistency of the angular reduction: the full second-order tensor
// contraction must equal (multiplicity) x (single-component bracket)^2 with
// isotropic diagonal brackets and vanishing cross terms.
struct MultiplicityReport {
  bool isotropic = false;
  bool crossTermsVanish = false;
  bool contractionMatches = false;
  int weight = 0;
};

inline MultiplicityReport dipoleMultiplicityReport() {
  const PhysicalOpName comps[3] = {PhysicalOpName::x1, PhysicalOpName::x2,
                                   PhysicalOpName::x3};
  Coefficient bracket[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      bracket[i][j] =
          sandwichSymbolic(radialDipoleOperator(comps[i]), radialDipoleOperator(comps[j]));

  MultiplicityReport rep;
  rep.isotropic = bracket[0][0] == bracket[1][1] && bracket[1][1] == bracket[2][2];
  rep.crossTermsVanish = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && !bracket[i][j].isZero()) rep.crossTermsVanish = false;

  // <V G V> expanded through the product factorization, in shared symbols.
  const TwoParticleExpr v = dipoleCoupling();
  Coefficient contraction;
  for (const auto& tk : v.terms())
    for (const auto& tl : v.terms())
      contraction += sandwichSymbolic(tk.first, tl.first) *
                     sandwichSymbolic(tk.second, tl.second);
  const Coefficient single = bracket[2][2];
  for (int w = 1; w <= 12; ++w) {
    if (contraction == Coefficient(w) * single * single) {
      rep.weight = w;
      rep.contractionMatches = true;
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// The inner t-integral J(alpha)
// ---------------------------------------------------------------------------

namespace detail {

// J evaluated from the geometric expansion of the bracket denominator:
// 1/(1 - rho e^{-ivt})^6 = sum_m C(m+5,5) rho^m e^{-imvt}, each term
// integrating against e^{i e2 t - eps t} to a simple pole in the eps -> 0+
// limit. Requires |rho| < 1, i.e. Re(v) > 0.
inline Complex seriesJFromShift(const VShift& shift, const VdwConfig& cfg,
                                long* termsUsed) {
  if (shift.atBranchPoint)
    throw PoleHit("innerIntegralJ: effective energy sits on the branch point v = 0");
  const double w = cfg.omega;
  const Complex v = shift.boundForm();
  const Complex ratio = (w - v) / (w + v);
  const Complex rho = ratio * ratio;
  if (std::abs(rho) >= 1.0)
    throw SeriesDivergence("innerIntegralJ: |rho| >= 1; contour crosses Re(v) = 0");

  const Complex A = (w + v) * (w + v);
  const Complex B = 3.0 * v * v - 2.0 * w * w;
  const Complex C = (w - v) * (w - v);
  const double floor = 1e-12 * (cfg.e2 + std::abs(v));

  Complex total{};
  Complex rhoPow{1.0};
  double binom = 1.0;  // C(m+5, 5)
  long m = 0;
  for (;; ++m) {
    if (m > 0) {
      rhoPow *= rho;
      binom *= static_cast<double>(m + 5) / static_cast<double>(m);
    }
    const auto denom = [&](long k) {
      const Complex d = static_cast<double>(m + k) * v - cfg.e2;
      if (std::abs(d) < floor)
        throw PoleHit("innerIntegralJ: pole of the t-integral on the contour");
      return d;
    };
    const Complex term = binom * rhoPow * (A / denom(2) + B / denom(3) + C / denom(4));
    total += term;
    if (m > 5 && std::abs(term) < cfg.seriesTol * std::abs(total)) break;
    if (m > 2000000)
      throw SeriesDivergence("innerIntegralJ: tail tolerance unreachable");
  }
  if (termsUsed) *termsUsed = m + 1;

  const Complex wpv2 = A;
  const Complex wpv6 = wpv2 * wpv2 * wpv2;
  const Complex pref =
      Complex(0, -1) * 2048.0 * (w * w) * (v * v * v * v) / (wpv6 * wpv6);
  return pref * total;
}

}  // namespace detail

// J(alpha) = int_0^inf dt e^{i e2 t - eps t} <0| rx exp(-it A(alpha)) rx |0>
// in the eps -> 0+ limit, where A(alpha) has v^2 = omega^2 - 2 alpha.
inline Complex innerIntegralJ(Complex alpha, const VdwConfig& cfg,
                              long* termsUsed = nullptr) {
  const Complex effective = alpha - Complex(0.5 * cfg.omega * cfg.omega);
  return detail::seriesJFromShift(shiftToV(effective, cfg.omega), cfg, termsUsed);
}

// Independent evaluation of the same bracket through the truncated-Fock
// linear solve: J = -i <0| rx (A - e2)^{-1} rx |0>.
class VdwOracle {
public:
  explicit VdwOracle(const VdwConfig& cfg)
      : cfg_(cfg),
        ladder_(radialDipoleOperator(), radialDipoleOperator(), cfg.omega,
                cfg.truncation) {}

  Complex innerIntegralJ(Complex alpha) const {
    const Complex effective = alpha - Complex(0.5 * cfg_.omega * cfg_.omega);
    const VShift shift = shiftToV(effective, cfg_.omega);
    const auto f = exponentFactor(cfg_.omega, shift.boundForm(), Branch::Bound);
    return Complex(0, -1) * ladder_.resolvent(f, Complex(cfg_.e2));
  }

  const FockLadder& ladder() const { return ladder_; }

private:
  VdwConfig cfg_;
  FockLadder ladder_;
};

// ---------------------------------------------------------------------------
// Second-order dispersion energy
// ---------------------------------------------------------------------------

namespace detail {

// Integrate the paired product over the imaginary-axis contour,
// sigma = scale u/(1-u):  returns int_0^inf J(E1(i sigma)) J(E2(i sigma)) d sigma
// with the two effective energies supplied by the two-particle plan.
template <typename JofEff>
QuadratureOutcome contourIntegral(const VdwConfig& cfg, const JofEff& j,
                                  double quadTol) {
  const double scale = cfg.effectiveContourScale();
  const ConvolutionPlan plan =
      buildPlan({{1, 1.0, -0.5 * cfg.omega * cfg.omega},
                 {2, 1.0, -0.5 * cfg.omega * cfg.omega}});
  const auto integrand = [&](double u) -> Complex {
    const double sigma = scale * u / (1.0 - u);
    const auto effs = plan.effectiveEnergies({Complex(0, sigma)});
    const double jac = scale / ((1.0 - u) * (1.0 - u));
    return j(effs[0]) * j(effs[1]) * jac;
  };
  return adaptiveGK(integrand, 0.0, 1.0, quadTol);
}

}  // namespace detail

inline C6Result secondOrderEnergy(const VdwConfig& cfg,
                                  C6Route route = C6Route::Series) {
  cfg.validate();
  constexpr double pi = std::numbers::pi;
  const double prefactor = (6.0 / pi) * cfg.omega * cfg.omega;  // (3i/pi) <r>^-2
                                                                // times contour

  std::atomic<long> maxTerms{0};
  const auto seriesJ = [&](Complex eff) {
    long terms = 0;
    const Complex value = detail::seriesJFromShift(shiftToV(eff, cfg.omega), cfg, &terms);
    long seen = maxTerms.load();
    while (terms > seen && !maxTerms.compare_exchange_weak(seen, terms)) {
    }
    return value;
  };

  const QuadratureOutcome seriesQuad = detail::contourIntegral(cfg, seriesJ, cfg.quadTol);
  const auto assemble = [&](const QuadratureOutcome& q) {
    // E2 = (3i/pi) beta^2 omega^2 * contour integral, contour oriented from
    // +i inf to -i inf, which folds to (6/pi) omega^2 * int_0^inf.
    const Complex e2nd = prefactor * q.value;
    if (std::abs(e2nd.imag()) > 1e-8 * std::abs(e2nd))
      throw NonRealResult("secondOrderEnergy: assembled E2 has a residual imaginary part");
    const double c6 = -e2nd.real();
    if (!(c6 > 0))
      throw NonRealResult("secondOrderEnergy: assembled E2 is not attractive");
    return c6;
  };

  C6Result out;
  out.c6 = assemble(seriesQuad);
  out.estimatedError = prefactor * seriesQuad.errorEstimate;
  out.seriesTermsUsed = maxTerms.load();
  out.quadNodesUsed = seriesQuad.nodesUsed;

  if (route == C6Route::Oracle) {
    const VdwOracle oracle(cfg);
    const auto oracleJ = [&](Complex eff) {
      const VShift shift = shiftToV(eff, cfg.omega);
      const auto f = exponentFactor(cfg.omega, shift.boundForm(), Branch::Bound);
      return Complex(0, -1) * oracle.ladder().resolvent(f, Complex(cfg.e2));
    };
    const QuadratureOutcome oracleQuad =
        detail::contourIntegral(cfg, oracleJ, cfg.quadTol);
    const double c6Series = out.c6;
    out.c6 = assemble(oracleQuad);
    out.estimatedError = prefactor * oracleQuad.errorEstimate;
    out.quadNodesUsed = oracleQuad.nodesUsed;
    out.oracleDelta = std::abs(out.c6 - c6Series) / c6Series;
  }
  return out;
}

}  // namespace cgf
