#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "cgf/rational.hpp"

namespace cgf {

// The fixed formal-symbol set of the coefficient ring.
//   w  — the oscillator frequency omega (kept symbolic through the algebra)
//   cp — the disentangling coefficient c+ of exp(c+ . Mdag)
//   cm — the disentangling coefficient c- of exp(c- . M)
//   e0 — exp(c0), the diagonal disentangling factor
// Everything numeric substitutes these at the evaluation boundary.
enum class Symbol : std::uint8_t { w = 0, cp = 1, cm = 2, e0 = 3 };
inline constexpr std::size_t kSymbolCount = 4;

inline const char* symbolName(Symbol s) {
  switch (s) {
    case Symbol::w: return "w";
    case Symbol::cp: return "cp";
    case Symbol::cm: return "cm";
    case Symbol::e0: return "e0";
  }
  return "?";
}

using SymbolExponents = std::array<int, kSymbolCount>;
using SymbolValues = std::array<std::complex<double>, kSymbolCount>;

// Exact scalar: a Laurent polynomial over Gaussian rationals in the fixed
// symbol set. The map representation is zero-pruned and key-ordered, so equal
// values have identical representations (canonical form = structural equality).
// Division is supported by single Laurent monomials, which covers every scalar
// the pipeline produces (1/(2w) prefactors, normalization ratios, and the
// sandwich polynomials in cp, cm, e0).
class Coefficient {
public:
  using TermMap = std::map<SymbolExponents, GaussianRational>;

  Coefficient() = default;
  Coefficient(long v) { add(SymbolExponents{}, GaussianRational(v)); }  // NOLINT
  Coefficient(GaussianRational v) { add(SymbolExponents{}, std::move(v)); }  // NOLINT
  Coefficient(BigRational v) { add(SymbolExponents{}, GaussianRational(std::move(v))); }  // NOLINT

  static Coefficient zero() { return Coefficient(); }
  static Coefficient one() { return Coefficient(1); }
  static Coefficient imaginaryUnit() { return Coefficient(GaussianRational::i()); }

  static Coefficient symbol(Symbol s, int power = 1) {
    Coefficient c;
    SymbolExponents e{};
    e[static_cast<std::size_t>(s)] = power;
    c.add(e, GaussianRational(1));
    return c;
  }

  static Coefficient monomial(const SymbolExponents& e, GaussianRational g) {
    Coefficient c;
    c.add(e, std::move(g));
    return c;
  }

  bool isZero() const { return terms_.empty(); }

  // True when the value is a plain element of Q(i) (no symbol content).
  bool isNumeric() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == SymbolExponents{};
  }

  bool isMonomial() const { return terms_.size() == 1; }

  // The Q(i) value of a numeric coefficient.
  GaussianRational numericValue() const {
    if (terms_.empty()) return GaussianRational(0);
    if (!isNumeric()) throw std::domain_error("Coefficient: not a pure scalar");
    return terms_.begin()->second;
  }

  const TermMap& terms() const { return terms_; }

  Coefficient conj() const {
    // Formal symbols are treated as real: only the Gaussian-rational parts
    // conjugate. Every adjoint/positivity statement in the algebra runs on
    // coefficients where this is the honest complex conjugation (w > 0).
    Coefficient r;
    for (const auto& [e, g] : terms_) r.add(e, g.conj());
    return r;
  }

  Coefficient& operator+=(const Coefficient& o) {
    for (const auto& [e, g] : o.terms_) add(e, g);
    return *this;
  }
  Coefficient& operator-=(const Coefficient& o) {
    for (const auto& [e, g] : o.terms_) add(e, -g);
    return *this;
  }
  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator-(const Coefficient& a) {
    Coefficient r;
    for (const auto& [e, g] : a.terms_) r.add(e, -g);
    return r;
  }

  friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    Coefficient r;
    for (const auto& [ea, ga] : a.terms_)
      for (const auto& [eb, gb] : b.terms_) {
        SymbolExponents e;
        for (std::size_t k = 0; k < kSymbolCount; ++k) e[k] = ea[k] + eb[k];
        r.add(e, ga * gb);
      }
    return r;
  }
  Coefficient& operator*=(const Coefficient& o) { return *this = *this * o; }

  // Division by a single Laurent monomial (the only divisor shape the ring
  // supports; anything else is a caller bug).
  friend Coefficient operator/(const Coefficient& a, const Coefficient& b) {
    if (b.isZero()) throw std::domain_error("Coefficient: division by zero");
    if (!b.isMonomial())
      throw std::domain_error("Coefficient: division only by a single monomial");
    const auto& [eb, gb] = *b.terms_.begin();
    Coefficient r;
    for (const auto& [ea, ga] : a.terms_) {
      SymbolExponents e;
      for (std::size_t k = 0; k < kSymbolCount; ++k) e[k] = ea[k] - eb[k];
      r.add(e, ga / gb);
    }
    return r;
  }
  Coefficient& operator/=(const Coefficient& o) { return *this = *this / o; }

  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const Coefficient& a, const Coefficient& b) { return !(a == b); }
  friend bool operator<(const Coefficient& a, const Coefficient& b) {
    return a.terms_ < b.terms_;
  }

  // Exact substitution of one symbol by a rational value.
  Coefficient substitute(Symbol s, const BigRational& value) const {
    const auto idx = static_cast<std::size_t>(s);
    Coefficient r;
    for (const auto& [e, g] : terms_) {
      GaussianRational scaled = g;
      int p = e[idx];
      if (p != 0) {
        if (value == 0) {
          if (p < 0) throw std::domain_error("Coefficient: substituting 0 into a pole");
          continue;  // monomial vanishes
        }
        BigRational f = 1;
        BigRational base = p > 0 ? value : BigRational(1) / value;
        for (int k = 0; k < (p > 0 ? p : -p); ++k) f *= base;
        scaled = scaled * GaussianRational(f);
      }
      SymbolExponents e2 = e;
      e2[idx] = 0;
      r.add(e2, scaled);
    }
    return r;
  }

  // Numeric evaluation with every symbol bound.
  std::complex<double> evalAt(const SymbolValues& vals) const {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [e, g] : terms_) {
      std::complex<double> t = g.toComplex();
      for (std::size_t k = 0; k < kSymbolCount; ++k) {
        if (e[k] == 0) continue;
        t *= std::pow(vals[k], e[k]);
      }
      acc += t;
    }
    return acc;
  }

  std::string str() const;  // debug rendering, defined below

private:
  void add(const SymbolExponents& e, GaussianRational g) {
    if (g.isZero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, std::move(g));
    } else {
      it->second += g;
      if (it->second.isZero()) terms_.erase(it);
    }
  }

  TermMap terms_;
};

inline std::string Coefficient::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, g] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += g.str();
    for (std::size_t k = 0; k < kSymbolCount; ++k) {
      if (e[k] == 0) continue;
      out += "*";
      out += symbolName(static_cast<Symbol>(k));
      if (e[k] != 1) out += "^" + std::to_string(e[k]);
    }
  }
  return out;
}

}  // namespace cgf
