#pragma once

#include <vector>

#include "cgf/su11.hpp"

namespace cgf {

// ---------------------------------------------------------------------------
// Many-particle convolution plans
// ---------------------------------------------------------------------------

struct ParticleSpec {
  int index = 0;
  double charge = 1.0;       // Z_k > 0
  double energyShare = 0.0;  // E_k, with sum over particles = total E
};

// The N-particle Green operator factorizes into one single-particle operator
// per particle at shifted energy E_k - alpha_k, constrained by
// alpha_1 + ... + alpha_N = 0. The plan resolves the constraint by keeping
// N-1 free shifts and fixing the last one to minus their sum.
class ConvolutionPlan {
public:
  explicit ConvolutionPlan(std::vector<ParticleSpec> particles)
      : particles_(std::move(particles)) {}

  const std::vector<ParticleSpec>& particles() const { return particles_; }
  std::size_t freeShiftCount() const { return particles_.size() - 1; }

  double totalEnergy() const {
    double e = 0;
    for (const auto& p : particles_) e += p.energyShare;
    return e;
  }

  // Per-particle effective energies E_k - alpha_k for given free shifts;
  // the last shift is determined by the delta constraint.
  std::vector<Complex> effectiveEnergies(const std::vector<Complex>& shifts) const {
    if (shifts.size() != freeShiftCount())
      throw DomainError("ConvolutionPlan: wrong number of free shifts");
    Complex last{};
    for (const Complex& s : shifts) last -= s;
    std::vector<Complex> out;
    out.reserve(particles_.size());
    for (std::size_t k = 0; k < particles_.size(); ++k) {
      const Complex alpha = (k + 1 < particles_.size()) ? shifts[k] : last;
      out.push_back(Complex(particles_[k].energyShare) - alpha);
    }
    return out;
  }

private:
  std::vector<ParticleSpec> particles_;
};

inline ConvolutionPlan buildPlan(std::vector<ParticleSpec> particles) {
  if (particles.size() < 2)
    throw DomainError("buildPlan: need at least two particles (single-particle "
                      "Green operators do not convolve)");
  for (const auto& p : particles)
    if (!(p.charge > 0)) throw DomainError("buildPlan: charges must be positive");
  return ConvolutionPlan(std::move(particles));
}

// ---------------------------------------------------------------------------
// Energy-to-frequency map for the single-particle factors
// ---------------------------------------------------------------------------

struct VShift {
  Complex v{};
  Branch branch = Branch::Bound;
  bool atBranchPoint = false;

  // The Bound-branch parameter regardless of tag (Continuum stores u = -i v).
  Complex boundForm() const {
    return branch == Branch::Bound ? v : Complex(0, 1) * v;
  }
};

// Effective energy -> (v, branch) with v = sqrt(-2 E_eff) on the principal
// branch, Re(v) >= 0. Strictly positive real energies land on the Continuum
// tag with the real parameter u (the Bound-branch v would be i u). The
// branch point v = 0 is flagged, not thrown: quadrature contours route
// around it by construction.
inline VShift shiftToV(Complex effectiveEnergy, double omega) {
  if (omega <= 0) throw DomainError("shiftToV: omega must be positive");
  const Complex v2 = -2.0 * effectiveEnergy;
  VShift out;
  out.atBranchPoint = std::abs(v2) < 1e-24 * omega * omega;
  if (v2.imag() == 0 && v2.real() < 0) {
    out.branch = Branch::Continuum;
    out.v = Complex(std::sqrt(-v2.real()), 0);
    return out;
  }
  Complex v = std::sqrt(v2);
  if (v.real() < 0) v = -v;
  out.branch = Branch::Bound;
  out.v = v;
  return out;
}

// ---------------------------------------------------------------------------
// Two-particle product algebra
// ---------------------------------------------------------------------------

// Sum of tensor terms A (x) B over two independent copies of the 4-mode
// algebra. Brackets over the product vacuum factor exactly, so an 8-mode
// rewriter is never needed; this list-of-pairs form is all the application
// uses.
class TwoParticleExpr {
public:
  struct Term {
    OperatorExpr first;
    OperatorExpr second;
  };

  TwoParticleExpr() = default;

  static TwoParticleExpr tensorTerm(OperatorExpr a, OperatorExpr b) {
    TwoParticleExpr e;
    if (!a.isZero() && !b.isZero()) e.terms_.push_back({std::move(a), std::move(b)});
    return e;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }

  friend TwoParticleExpr operator+(TwoParticleExpr x, const TwoParticleExpr& y) {
    x.terms_.insert(x.terms_.end(), y.terms_.begin(), y.terms_.end());
    return x;
  }
  friend TwoParticleExpr operator*(const Coefficient& c, TwoParticleExpr x) {
    for (auto& t : x.terms_) t.first = c * t.first;
    return x;
  }
  friend TwoParticleExpr operator-(TwoParticleExpr x) {
    return Coefficient(-1) * std::move(x);
  }
  friend TwoParticleExpr operator-(TwoParticleExpr x, const TwoParticleExpr& y) {
    return std::move(x) + (-y);
  }

  friend TwoParticleExpr multiply(const TwoParticleExpr& x, const TwoParticleExpr& y) {
    TwoParticleExpr out;
    for (const auto& tx : x.terms_)
      for (const auto& ty : y.terms_)
        out.terms_.push_back(
            {cgf::multiply(tx.first, ty.first), cgf::multiply(tx.second, ty.second)});
    return out;
  }

  // <0 (x) 0| expr |0 (x) 0> — factorization over the product vacuum.
  Coefficient vacuumExpectation() const {
    Coefficient out;
    for (const auto& t : terms_)
      out += cgf::vacuumExpectation(t.first) * cgf::vacuumExpectation(t.second);
    return out;
  }

private:
  std::vector<Term> terms_;
};

}  // namespace cgf
