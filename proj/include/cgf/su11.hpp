#pragma once

#include <Eigen/Dense>
#include <complex>
#include <deque>
#include <vector>

#include "cgf/hydrogenic.hpp"
#include "cgf/wick.hpp"

namespace cgf {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Exponent factors
// ---------------------------------------------------------------------------

enum class Branch : std::uint8_t { Bound, Continuum };

// The Green-operator exponent is exp(-it(p(N+2) + q(M + Mdag))); p and q are
// set by the frequency and the energy parameter v.
struct ExponentFactor {
  Complex p{};
  Complex q{};
};

inline ExponentFactor exponentFactor(double omega, Complex v, Branch branch) {
  if (omega <= 0) throw DomainError("exponentFactor: omega must be positive");
  const Complex v2 = v * v;
  const double w2 = omega * omega;
  const double d = 4.0 * omega;
  if (branch == Branch::Bound) return {(w2 + v2) / d, (v2 - w2) / d};
  return {(w2 - v2) / d, (-v2 - w2) / d};
}

// ---------------------------------------------------------------------------
// Disentangling via the faithful 2x2 representation
// ---------------------------------------------------------------------------

// 2x2 image of the su(1,1) triple: K0 = (N+2)/2, K+ = Mdag, K- = M map to
// [[1/2,0],[0,-1/2]], [[0,1],[0,0]], [[0,0],[-1,0]].
struct Mat2 {
  Complex a11{}, a12{}, a21{}, a22{};

  Complex det() const { return a11 * a22 - a12 * a21; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
  }
};

// The normal-form triple: exp(cPlus Mdag) exp(cZero (N+2)) exp(cMinus M),
// together with the 2x2 group element it came from.
struct DisentangledExp {
  Complex cPlus{};
  Complex cZero{};
  Complex cMinus{};
  Mat2 group{Complex(1), Complex(0), Complex(0), Complex(1)};
};

// exp(-it(2p K0 + q(K+ + K-))) in the 2x2 representation. The generator
// matrix A = [[p, q], [-q, -p]] squares to (p^2 - q^2) I, so the exponential
// closes on cos/sinc without diagonalization (and stays finite at p = ±q).
inline Mat2 su11GroupElement(const ExponentFactor& f, Complex t) {
  const Complex lam2 = f.p * f.p - f.q * f.q;
  const Complex lam = std::sqrt(lam2);
  const Complex theta = lam * t;
  const Complex c = std::cos(theta);
  Complex s;  // sin(lam t)/lam, stable for small |theta|
  if (std::abs(theta) < 1e-6) {
    const Complex t2 = theta * theta;
    s = t * (Complex(1) - t2 / 6.0 + t2 * t2 / 120.0);
  } else {
    s = std::sin(theta) / lam;
  }
  const Complex is = Complex(0, 1) * s;
  return {c - is * f.p, -is * f.q, is * f.q, c + is * f.p};
}

namespace detail {

inline DisentangledExp extractTriple(const Mat2& g) {
  if (std::abs(g.a22) < 1e-14)
    throw Degenerate("disentangle: (2,2) entry of the group element vanishes; perturb t");
  DisentangledExp d;
  d.group = g;
  d.cPlus = g.a12 / g.a22;
  d.cMinus = -g.a21 / g.a22;
  d.cZero = -std::log(g.a22);  // e^{-cZero} = g22, principal branch
  return d;
}

}  // namespace detail

inline DisentangledExp disentangle(const ExponentFactor& f, Complex t) {
  return detail::extractTriple(su11GroupElement(f, t));
}

// Group composition by 2x2 multiplication and re-extraction.
inline DisentangledExp compose(const DisentangledExp& x, const DisentangledExp& y) {
  return detail::extractTriple(x.group * y.group);
}

// The product form rebuilt as a 2x2 element:
// [[e^{c0} - c+ c- e^{-c0}, c+ e^{-c0}], [-c- e^{-c0}, e^{-c0}]].
inline Mat2 reconstructGroup(const DisentangledExp& d) {
  const Complex em = std::exp(-d.cZero);
  const Complex ep = std::exp(d.cZero);
  return {ep - d.cPlus * d.cMinus * em, d.cPlus * em, -d.cMinus * em, em};
}

// ---------------------------------------------------------------------------
// Sandwich matrix elements
// ---------------------------------------------------------------------------

namespace detail {

inline unsigned minQuanta(const OperatorExpr& e) {
  unsigned q = ~0u;
  for (const auto& [m, c] : e.terms()) q = std::min(q, m.creationQuanta());
  return q;
}

}  // namespace detail

// <0| left exp(c+ Mdag) exp(c0 (N+2)) exp(c- M) right |0> as an exact
// polynomial in the formal symbols cp, cm, e0 = exp(c0) (and whatever w
// powers left/right carry). Both exponential tails truncate: exp(c- M)
// terminates on the finite-quanta right image, exp(c+ Mdag) against the
// finite-quanta bra.
inline Coefficient sandwichSymbolic(const OperatorExpr& left, const OperatorExpr& right) {
  const KetState rket = applyToVacuum(right);
  const KetState lket = applyToVacuum(adjoint(left));
  if (rket.isZero() || lket.isZero()) return Coefficient::zero();

  const OperatorExpr M = generator(GeneratorName::M);
  const OperatorExpr Mdag = generator(GeneratorName::Mdag);

  // exp(c- M) then the diagonal factor: each surviving monomial of quanta n
  // picks up cm^k/k! and e0^(n+2).
  OperatorExpr lowered;
  {
    OperatorExpr cur = rket.expr();
    BigRational invFact(1);
    for (unsigned k = 0; !cur.isZero(); ++k) {
      if (k > 0) invFact /= k;
      for (const auto& [m, c] : cur.terms())
        lowered.addTerm(m, c * Coefficient(invFact) * Coefficient::symbol(Symbol::cm, k) *
                               Coefficient::symbol(Symbol::e0, m.creationQuanta() + 2));
      cur = applyToVacuum(multiply(M, cur)).expr();
    }
  }

  // exp(c+ Mdag) against the bra.
  Coefficient acc;
  {
    OperatorExpr cur = lowered;
    BigRational invFact(1);
    const unsigned bragMax = lket.maxQuanta();
    for (unsigned k = 0; !cur.isZero() && detail::minQuanta(cur) <= bragMax; ++k) {
      if (k > 0) invFact /= k;
      acc += innerProductRaw(lket, KetState(cur)) * Coefficient(invFact) *
             Coefficient::symbol(Symbol::cp, k);
      cur = applyToVacuum(multiply(Mdag, cur)).expr();
    }
  }
  return acc;
}

// Numeric sandwich at a concrete disentangled triple and frequency. omega
// binds the formal w carried by left/right coefficients.
inline Complex sandwich(const OperatorExpr& left, const OperatorExpr& right,
                        const DisentangledExp& dis, double omega) {
  const Coefficient poly = sandwichSymbolic(left, right);
  SymbolValues vals{};
  vals[static_cast<std::size_t>(Symbol::w)] = Complex(omega, 0);
  vals[static_cast<std::size_t>(Symbol::cp)] = dis.cPlus;
  vals[static_cast<std::size_t>(Symbol::cm)] = dis.cMinus;
  vals[static_cast<std::size_t>(Symbol::e0)] = std::exp(dis.cZero);
  return poly.evalAt(vals);
}

// ---------------------------------------------------------------------------
// The printed closed form for the rx-G-rx bracket
// ---------------------------------------------------------------------------

// Direct evaluation of
//   2^11 v^4 w^2 [ (w+v)^2 e^{-2ivt} + (3v^2-2w^2) e^{-3ivt} + (w-v)^2 e^{-4ivt} ]
//     / ((w+v)^2 - (w-v)^2 e^{-ivt})^6.
// Exists to cross-check the sandwich pipeline and document deviations.
inline Complex closedFormRxGRx(double omega, Complex v, Complex t,
                               double denomFloor = 1e-9) {
  const Complex w(omega, 0);
  const Complex ph = std::exp(Complex(0, -1) * v * t);
  const Complex sp = (w + v) * (w + v);
  const Complex sm = (w - v) * (w - v);
  const Complex base = sp - sm * ph;
  if (std::abs(base) < denomFloor)
    throw PoleOnPath("closedFormRxGRx: denominator below floor");
  const Complex num = sp * ph * ph + (3.0 * v * v - 2.0 * w * w) * ph * ph * ph +
                      sm * ph * ph * ph * ph;
  Complex den = base;
  for (int k = 1; k < 6; ++k) den *= base;
  return 2048.0 * v * v * v * v * w * w * num / den;
}

// ---------------------------------------------------------------------------
// Truncated-Fock ladder oracle
// ---------------------------------------------------------------------------

struct FockTruncation {
  int maxQuanta = 160;
};

// Exact orthogonal basis of the invariant subspace generated from the right
// image under {M, Mdag} (graded, so (N+2) acts diagonally), truncated at
// maxQuanta. Construction, orthogonalization and matrix entries are exact;
// doubles only ever see ratios of the huge factorial norms.
class FockLadder {
public:
  FockLadder(const OperatorExpr& left, const OperatorExpr& right, double omega,
             FockTruncation trunc) {
    if (omega <= 0) throw DomainError("FockLadder: omega must be positive");
    if (trunc.maxQuanta < 2) throw DomainError("FockLadder: truncation too small");
    const BigRational omegaExact(omega);  // doubles are dyadic rationals: exact

    const OperatorExpr rightNum = substituteOmega(right, omegaExact);
    const OperatorExpr leftNum = substituteOmega(adjoint(left), omegaExact);
    const KetState rket = applyToVacuum(rightNum);
    const KetState lket = applyToVacuum(leftNum);
    if (static_cast<int>(rket.maxQuanta()) > trunc.maxQuanta)
      throw DomainError("FockLadder: right image exceeds the truncation");

    buildBasis(rket.expr(), trunc.maxQuanta);
    assembleMatrices();
    rhs_ = overlaps(rket.expr());
    leftOverlaps_ = overlaps(lket.expr());
  }

  std::size_t size() const { return basis_.size(); }

  // Entries of (N+2) and (M + Mdag) in the orthonormalized basis.
  const Eigen::MatrixXcd& matrixN() const { return nMat_; }
  const Eigen::MatrixXcd& matrixM() const { return mMat_; }
  const Eigen::VectorXcd& rhs() const { return rhs_; }
  const Eigen::VectorXcd& leftOverlaps() const { return leftOverlaps_; }

  // <0| left (A - e2)^{-1} right |0> with A = p(N+2) + q(M + Mdag).
  Complex resolvent(const ExponentFactor& f, Complex e2) const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXcd H = f.p * nMat_ + f.q * mMat_;
    H.diagonal().array() -= e2;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(H);
    if (!lu.isInvertible())
      throw SingularSystem("fockResolvent: probe energy hit a truncated eigenvalue");
    Eigen::VectorXcd c = lu.solve(rhs_);
    if ((H * c - rhs_).norm() > 1e-8 * (rhs_.norm() + 1e-300))
      throw SingularSystem("fockResolvent: linear solve residual too large");
    Complex out{};
    for (Eigen::Index i = 0; i < n; ++i) out += std::conj(leftOverlaps_(i)) * c(i);
    return out;
  }

private:
  static OperatorExpr substituteOmega(const OperatorExpr& e, const BigRational& omega) {
    OperatorExpr out;
    for (const auto& [m, c] : e.terms()) out.addTerm(m, c.substitute(Symbol::w, omega));
    return out;
  }

  static Coefficient exprInner(const OperatorExpr& x, const OperatorExpr& y) {
    return innerProductRaw(KetState(x), KetState(y));
  }

  void buildBasis(const OperatorExpr& seedState, int maxQuanta) {
    const OperatorExpr M = generator(GeneratorName::M);
    const OperatorExpr Mdag = generator(GeneratorName::Mdag);

    // Split the seed into graded components.
    std::map<unsigned, OperatorExpr> graded;
    for (const auto& [m, c] : seedState.terms()) graded[m.creationQuanta()].addTerm(m, c);
    std::deque<OperatorExpr> pending;
    for (auto& [q, e] : graded) pending.push_back(std::move(e));

    while (!pending.empty()) {
      OperatorExpr cand = std::move(pending.front());
      pending.pop_front();
      if (cand.isZero()) continue;
      const unsigned qn = cand.terms().begin()->first.creationQuanta();
      // Exact Gram-Schmidt against the same-quanta group.
      for (std::size_t idx : byQuanta_[qn]) {
        const Coefficient s = exprInner(basis_[idx], cand);
        if (s.isZero()) continue;
        cand -= (s / Coefficient(norm2_[idx])) * basis_[idx];
      }
      if (cand.isZero()) continue;
      const GaussianRational n2 = exprInner(cand, cand).numericValue();
      byQuanta_[qn].push_back(basis_.size());
      quanta_.push_back(qn);
      norm2_.push_back(n2.re);
      basis_.push_back(cand);
      if (static_cast<int>(qn) + 2 <= maxQuanta)
        pending.push_back(applyToVacuum(multiply(Mdag, cand)).expr());
      if (qn >= 2) pending.push_back(applyToVacuum(multiply(M, cand)).expr());
    }
  }

  // Normalized entry <g_i|X|g_j>/sqrt(N_i N_j) via exact ratios only.
  Complex normalizedEntry(const Coefficient& raw, std::size_t i, std::size_t j) const {
    if (raw.isZero()) return {};
    const GaussianRational s = raw.numericValue();
    const GaussianRational overNj{s.re / norm2_[j], s.im / norm2_[j]};
    const double scale = std::sqrt(toDouble(norm2_[j] / norm2_[i]));
    return overNj.toComplex() * scale;
  }

  void assembleMatrices() {
    const auto n = static_cast<Eigen::Index>(basis_.size());
    const OperatorExpr M = generator(GeneratorName::M);
    const OperatorExpr Mdag = generator(GeneratorName::Mdag);
    nMat_ = Eigen::MatrixXcd::Zero(n, n);
    mMat_ = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      // (N+2) is diagonal on graded vectors.
      nMat_(j, j) = static_cast<double>(quanta_[j] + 2);
      const OperatorExpr up = applyToVacuum(multiply(Mdag, basis_[j])).expr();
      const OperatorExpr down = applyToVacuum(multiply(M, basis_[j])).expr();
      for (Eigen::Index i = 0; i < n; ++i) {
        if (quanta_[i] == quanta_[j] + 2)
          mMat_(i, j) += normalizedEntry(exprInner(basis_[i], up), i, j);
        else if (quanta_[j] >= 2 && quanta_[i] == quanta_[j] - 2)
          mMat_(i, j) += normalizedEntry(exprInner(basis_[i], down), i, j);
      }
    }
  }

  Eigen::VectorXcd overlaps(const OperatorExpr& state) const {
    const auto n = static_cast<Eigen::Index>(basis_.size());
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Coefficient raw = exprInner(basis_[i], state);
      if (raw.isZero()) continue;
      const GaussianRational s = raw.numericValue();
      const GaussianRational overNi{s.re / norm2_[i], s.im / norm2_[i]};
      out(i) = overNi.toComplex() * std::sqrt(toDouble(norm2_[i]));
    }
    return out;
  }

  std::vector<OperatorExpr> basis_;
  std::vector<unsigned> quanta_;
  std::vector<BigRational> norm2_;
  std::map<unsigned, std::vector<std::size_t>> byQuanta_;
  Eigen::MatrixXcd nMat_, mMat_;
  Eigen::VectorXcd rhs_, leftOverlaps_;
};

// One-shot resolvent bracket <0| left (p(N+2)+q(M+Mdag) - e2)^{-1} right |0>
// at the Bound-branch factor for (omega, v).
inline Complex fockResolvent(const OperatorExpr& left, const OperatorExpr& right,
                             double omega, Complex v, Complex e2, FockTruncation trunc) {
  FockLadder ladder(left, right, omega, trunc);
  return ladder.resolvent(exponentFactor(omega, v, Branch::Bound), e2);
}

}  // namespace cgf
