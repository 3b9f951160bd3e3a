#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "cgf/coefficient.hpp"
#include "cgf/errors.hpp"
#include "cgf/rational.hpp"

namespace cgf {

// ---------------------------------------------------------------------------
// Modes and monomials
// ---------------------------------------------------------------------------

enum class Family : std::uint8_t { a = 0, b = 1 };

// One of the 8 elementary operators: a1, a2, b1, b2, daggered or not.
struct ModeOp {
  Family family = Family::a;
  int index = 1;  // 1 or 2
  bool dagger = false;

  // Mode slot in 0..3: a1, a2, b1, b2.
  int mode() const { return (family == Family::a ? 0 : 2) + (index - 1); }

  std::string str() const {
    std::string s = family == Family::a ? "a" : "b";
    s += std::to_string(index);
    if (dagger) s += "^";
    return s;
  }
};

// A normal-ordered power product. Slots 0..3 hold creation exponents for
// modes a1, a2, b1, b2; slots 4..7 hold the annihilation exponents in the
// same mode order. This fixed layout *is* the canonical ordering
// a1^+, a2^+, b1^+, b2^+, a1, a2, b1, b2.
struct NormalMonomial {
  std::array<std::uint32_t, 8> e{};

  static NormalMonomial identity() { return {}; }

  static NormalMonomial fromOp(const ModeOp& op) {
    NormalMonomial m;
    m.e[op.mode() + (op.dagger ? 0 : 4)] = 1;
    return m;
  }

  std::uint32_t creation(int mode) const { return e[mode]; }
  std::uint32_t annihilation(int mode) const { return e[mode + 4]; }

  unsigned degree() const {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
  }
  unsigned creationQuanta() const { return e[0] + e[1] + e[2] + e[3]; }
  unsigned annihilationQuanta() const { return e[4] + e[5] + e[6] + e[7]; }

  bool isIdentity() const { return degree() == 0; }
  bool creationOnly() const { return annihilationQuanta() == 0; }

  friend auto operator<=>(const NormalMonomial&, const NormalMonomial&) = default;
};

// ---------------------------------------------------------------------------
// OperatorExpr: the unique normal-form container
// ---------------------------------------------------------------------------

class OperatorExpr {
public:
  using TermMap = std::map<NormalMonomial, Coefficient>;

  OperatorExpr() = default;

  static OperatorExpr zero() { return {}; }

  static OperatorExpr scalar(Coefficient c) {
    OperatorExpr x;
    x.addTerm(NormalMonomial::identity(), std::move(c));
    return x;
  }
  static OperatorExpr one() { return scalar(Coefficient::one()); }

  static OperatorExpr mode(const ModeOp& op) {
    OperatorExpr x;
    x.addTerm(NormalMonomial::fromOp(op), Coefficient::one());
    return x;
  }
  static OperatorExpr mode(Family f, int index, bool dagger) {
    return mode(ModeOp{f, index, dagger});
  }

  static OperatorExpr term(const NormalMonomial& m, Coefficient c) {
    OperatorExpr x;
    x.addTerm(m, std::move(c));
    return x;
  }

  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t termCount() const { return terms_.size(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_)
      if (m.degree() > d) d = m.degree();
    return d;
  }

  void addTerm(const NormalMonomial& m, const Coefficient& c) {
    if (c.isZero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.isZero()) terms_.erase(it);
    }
  }

  friend OperatorExpr operator+(OperatorExpr x, const OperatorExpr& y) {
    for (const auto& [m, c] : y.terms_) x.addTerm(m, c);
    return x;
  }
  friend OperatorExpr operator-(OperatorExpr x, const OperatorExpr& y) {
    for (const auto& [m, c] : y.terms_) x.addTerm(m, -c);
    return x;
  }
  friend OperatorExpr operator-(const OperatorExpr& x) {
    OperatorExpr r;
    for (const auto& [m, c] : x.terms_) r.terms_.emplace(m, -c);
    return r;
  }
  OperatorExpr& operator+=(const OperatorExpr& y) { return *this = *this + y; }
  OperatorExpr& operator-=(const OperatorExpr& y) { return *this = *this - y; }

  friend OperatorExpr operator*(const Coefficient& c, const OperatorExpr& x) {
    OperatorExpr r;
    for (const auto& [m, t] : x.terms_) r.addTerm(m, c * t);
    return r;
  }

  friend bool operator==(const OperatorExpr& a, const OperatorExpr& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const OperatorExpr& a, const OperatorExpr& b) { return !(a == b); }

private:
  TermMap terms_;
};

// ---------------------------------------------------------------------------
// Normal-ordered multiplication
// ---------------------------------------------------------------------------

namespace detail {

// Per-mode crossing weight: moving a^m past adag^n produces
//   a^m adag^n = sum_i  i! C(m,i) C(n,i)  adag^(n-i) a^(m-i),
// the closed form of iterated [a, adag] = 1. Different modes commute, so the
// full crossing factorizes over the 4 modes.
inline BigInt crossingWeight(unsigned m, unsigned n, unsigned i) {
  return factorial(i) * binomial(m, i) * binomial(n, i);
}

}  // namespace detail

inline OperatorExpr multiply(const OperatorExpr& lhs, const OperatorExpr& rhs) {
  OperatorExpr out;
  for (const auto& [ma, ca] : lhs.terms()) {
    for (const auto& [mb, cb] : rhs.terms()) {
      const Coefficient cab = ca * cb;
      // Annihilators of ma cross the creators of mb, mode by mode.
      std::array<std::uint32_t, 4> m{}, n{}, cap{};
      for (int s = 0; s < 4; ++s) {
        m[s] = ma.annihilation(s);
        n[s] = mb.creation(s);
        cap[s] = std::min(m[s], n[s]);
      }
      for (std::uint32_t i0 = 0; i0 <= cap[0]; ++i0)
        for (std::uint32_t i1 = 0; i1 <= cap[1]; ++i1)
          for (std::uint32_t i2 = 0; i2 <= cap[2]; ++i2)
            for (std::uint32_t i3 = 0; i3 <= cap[3]; ++i3) {
              const std::array<std::uint32_t, 4> i{i0, i1, i2, i3};
              BigInt w = 1;
              for (int s = 0; s < 4; ++s)
                if (i[s] > 0) w *= detail::crossingWeight(m[s], n[s], i[s]);
              NormalMonomial r;
              for (int s = 0; s < 4; ++s) {
                r.e[s] = ma.creation(s) + mb.creation(s) - i[s];
                r.e[s + 4] = ma.annihilation(s) + mb.annihilation(s) - i[s];
              }
              out.addTerm(r, cab * Coefficient(BigRational(w)));
            }
    }
  }
  return out;
}

inline OperatorExpr commutator(const OperatorExpr& lhs, const OperatorExpr& rhs) {
  return multiply(lhs, rhs) - multiply(rhs, lhs);
}

inline OperatorExpr adjoint(const OperatorExpr& expr) {
  // (adag^p a^q)^+ = adag^q a^p per mode; swapping the creation and
  // annihilation blocks of a normal monomial is already normal ordered.
  OperatorExpr r;
  for (const auto& [m, c] : expr.terms()) {
    NormalMonomial t;
    for (int s = 0; s < 4; ++s) {
      t.e[s] = m.annihilation(s);
      t.e[s + 4] = m.creation(s);
    }
    r.addTerm(t, c.conj());
  }
  return r;
}

inline Coefficient vacuumExpectation(const OperatorExpr& expr) {
  // In normal form only the identity monomial survives <0|...|0>.
  auto it = expr.terms().find(NormalMonomial::identity());
  return it == expr.terms().end() ? Coefficient::zero() : it->second;
}

// ---------------------------------------------------------------------------
// Kets
// ---------------------------------------------------------------------------

// A creation-only expression applied to the vacuum. States may be stored
// unnormalized; normDivisor2 carries the exact squared norm of the intended
// unit state so that physical overlaps stay inside the rational field
// (square roots are never materialized).
class KetState {
public:
  KetState() : expr_(OperatorExpr::zero()) {}

  explicit KetState(OperatorExpr expr, BigRational normDivisor2 = BigRational(1))
      : expr_(std::move(expr)), normDivisor2_(std::move(normDivisor2)) {
    for (const auto& [m, c] : expr_.terms())
      if (!m.creationOnly())
        throw DomainError("KetState: expression contains annihilation operators");
    if (normDivisor2_ <= 0) throw DomainError("KetState: squared norm divisor must be positive");
  }

  const OperatorExpr& expr() const { return expr_; }
  const BigRational& normDivisor2() const { return normDivisor2_; }
  bool isZero() const { return expr_.isZero(); }

  unsigned maxQuanta() const { return expr_.degree(); }

  friend bool operator==(const KetState& x, const KetState& y) {
    return x.expr_ == y.expr_ && x.normDivisor2_ == y.normDivisor2_;
  }

private:
  OperatorExpr expr_;
  BigRational normDivisor2_;
};

inline KetState applyToVacuum(const OperatorExpr& expr) {
  OperatorExpr kept;
  for (const auto& [m, c] : expr.terms())
    if (m.creationOnly()) kept.addTerm(m, c);
  return KetState(std::move(kept));
}

// expr . (ket as operator) |0>, keeping the ket's norm divisor.
inline KetState applyToKet(const OperatorExpr& expr, const KetState& ket) {
  KetState raw = applyToVacuum(multiply(expr, ket.expr()));
  return KetState(raw.expr(), ket.normDivisor2());
}

// <l|r> of the *stored* (unnormalized) expressions. Matching creation
// monomials contribute conj(cl) * cr * prod(exponent!).
inline Coefficient innerProductRaw(const KetState& l, const KetState& r) {
  Coefficient acc;
  const auto& lt = l.expr().terms();
  const auto& rt = r.expr().terms();
  auto il = lt.begin();
  auto ir = rt.begin();
  while (il != lt.end() && ir != rt.end()) {
    if (il->first < ir->first) {
      ++il;
    } else if (ir->first < il->first) {
      ++ir;
    } else {
      BigInt weight = 1;
      for (int s = 0; s < 4; ++s) weight *= factorial(il->first.creation(s));
      acc += il->second.conj() * ir->second * Coefficient(BigRational(weight));
      ++il;
      ++ir;
    }
  }
  return acc;
}

inline Coefficient normSquaredRaw(const KetState& k) { return innerProductRaw(k, k); }

// Physical overlap <l|r> with both unit normalizations applied. Exact only
// when the two norm divisors agree (then sqrt(d*d) = d rationally) — which is
// every use in the pipeline; anything else would need a symbolic square root.
inline Coefficient innerProduct(const KetState& l, const KetState& r) {
  if (l.normDivisor2() != r.normDivisor2())
    throw DomainError("innerProduct: mismatched norm divisors need a symbolic sqrt; use innerProductRaw");
  return innerProductRaw(l, r) / Coefficient(l.normDivisor2());
}

}  // namespace cgf
