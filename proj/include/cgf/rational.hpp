#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>

namespace cgf {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned j = 1; j <= k; ++j) {
    r *= n - k + j;
    r /= j;  // exact at every step
  }
  return r;
}

// cpp_rational's convert_to<double> scales numerator and denominator jointly,
// so ratios of astronomically large integers still convert correctly (the
// naive rational_cast would produce inf/inf).
inline double toDouble(const BigRational& q) { return q.convert_to<double>(); }

// Exact complex scalar a + b*i with rational a, b. Closed under +,-,*,/ and
// conjugation, which is all the symbolic layer ever needs.
struct GaussianRational {
  BigRational re{0};
  BigRational im{0};

  GaussianRational() = default;
  GaussianRational(long v) : re(v) {}  // NOLINT: implicit by design
  GaussianRational(BigRational r) : re(std::move(r)) {}
  GaussianRational(BigRational r, BigRational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return {BigRational(0), BigRational(1)}; }

  bool isZero() const { return re == 0 && im == 0; }
  bool isReal() const { return im == 0; }

  GaussianRational conj() const { return {re, -im}; }

  // Squared modulus; rational and >= 0.
  BigRational norm() const { return re * re + im * im; }

  std::complex<double> toComplex() const { return {toDouble(re), toDouble(im)}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    BigRational n = b.norm();
    if (n == 0) throw std::domain_error("GaussianRational: division by zero");
    GaussianRational c = a * b.conj();
    return {c.re / n, c.im / n};
  }
  GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
  GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
  GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
  GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
  // Arbitrary but strict total order so the type can key ordered containers.
  friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }

  // Debug-grade rendering; the canonical printer lives in parse.hpp.
  std::string str() const {
    std::ostringstream os;
    if (im == 0) {
      os << re;
    } else if (re == 0) {
      os << im << "i";
    } else {
      os << "(" << re << (im > 0 ? "+" : "") << im << "i)";
    }
    return os.str();
  }
};

}  // namespace cgf
