#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cgf/wick.hpp"

namespace cgf {

// ---------------------------------------------------------------------------
// Generator and physical-operator dictionaries
// ---------------------------------------------------------------------------

enum class GeneratorName : std::uint8_t {
  Nplus2,
  Na1, Na2, Na3,
  Nb1, Nb2, Nb3,
  M, Mdag,
  m1, m2, m3,
  mdag1, mdag2, mdag3,
};

inline constexpr std::array<GeneratorName, 15> allGenerators() {
  using G = GeneratorName;
  return {G::Nplus2, G::Na1, G::Na2, G::Na3, G::Nb1, G::Nb2, G::Nb3,
          G::M, G::Mdag, G::m1, G::m2, G::m3, G::mdag1, G::mdag2, G::mdag3};
}

inline const char* generatorString(GeneratorName g) {
  switch (g) {
    case GeneratorName::Nplus2: return "N2";
    case GeneratorName::Na1: return "n_a_1";
    case GeneratorName::Na2: return "n_a_2";
    case GeneratorName::Na3: return "n_a_3";
    case GeneratorName::Nb1: return "n_b_1";
    case GeneratorName::Nb2: return "n_b_2";
    case GeneratorName::Nb3: return "n_b_3";
    case GeneratorName::M: return "M";
    case GeneratorName::Mdag: return "Mdag";
    case GeneratorName::m1: return "m_1";
    case GeneratorName::m2: return "m_2";
    case GeneratorName::m3: return "m_3";
    case GeneratorName::mdag1: return "mdag_1";
    case GeneratorName::mdag2: return "mdag_2";
    case GeneratorName::mdag3: return "mdag_3";
  }
  return "?";
}

enum class PhysicalOpName : std::uint8_t {
  r,
  x1, x2, x3,
  rp1, rp2, rp3,   // the formal replacements r.p_lambda
  rpSquared,       // r p^2
  L2,
  l1, l2, l3,
};

inline const char* physicalOpString(PhysicalOpName p) {
  switch (p) {
    case PhysicalOpName::r: return "r";
    case PhysicalOpName::x1: return "x_1";
    case PhysicalOpName::x2: return "x_2";
    case PhysicalOpName::x3: return "x_3";
    case PhysicalOpName::rp1: return "rp_1";
    case PhysicalOpName::rp2: return "rp_2";
    case PhysicalOpName::rp3: return "rp_3";
    case PhysicalOpName::rpSquared: return "rp2";
    case PhysicalOpName::L2: return "L2";
    case PhysicalOpName::l1: return "l_1";
    case PhysicalOpName::l2: return "l_2";
    case PhysicalOpName::l3: return "l_3";
  }
  return "?";
}

// Pauli matrix entries, 0-indexed rows/columns.
inline GaussianRational pauli(int lambda, int s, int t) {
  switch (lambda) {
    case 1: return s != t ? GaussianRational(1) : GaussianRational(0);
    case 2:
      if (s == 0 && t == 1) return -GaussianRational::i();
      if (s == 1 && t == 0) return GaussianRational::i();
      return GaussianRational(0);
    case 3:
      if (s != t) return GaussianRational(0);
      return s == 0 ? GaussianRational(1) : GaussianRational(-1);
    default: throw DomainError("pauli: lambda must be 1, 2, or 3");
  }
}

namespace detail {

inline OperatorExpr elem(Family f, int index, bool dag) {
  return OperatorExpr::mode(f, index, dag);
}

}  // namespace detail

inline OperatorExpr generator(GeneratorName g) {
  using detail::elem;
  auto lam = [](GeneratorName x, GeneratorName base) {
    return 1 + static_cast<int>(x) - static_cast<int>(base);
  };
  switch (g) {
    case GeneratorName::Nplus2: {
      OperatorExpr n = OperatorExpr::scalar(Coefficient(2));
      for (int i = 1; i <= 2; ++i) {
        n += multiply(elem(Family::a, i, true), elem(Family::a, i, false));
        n += multiply(elem(Family::b, i, true), elem(Family::b, i, false));
      }
      return n;
    }
    case GeneratorName::M: {
      return multiply(elem(Family::a, 1, false), elem(Family::b, 1, false)) +
             multiply(elem(Family::a, 2, false), elem(Family::b, 2, false));
    }
    case GeneratorName::Mdag: {
      return multiply(elem(Family::a, 1, true), elem(Family::b, 1, true)) +
             multiply(elem(Family::a, 2, true), elem(Family::b, 2, true));
    }
    case GeneratorName::Na1:
    case GeneratorName::Na2:
    case GeneratorName::Na3: {
      // n_a(lambda) = (sigma_lambda)_{st} a_s^+ a_t
      const int L = lam(g, GeneratorName::Na1);
      OperatorExpr x;
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
          x += Coefficient(pauli(L, s, t)) *
               multiply(elem(Family::a, s + 1, true), elem(Family::a, t + 1, false));
      return x;
    }
    case GeneratorName::Nb1:
    case GeneratorName::Nb2:
    case GeneratorName::Nb3: {
      // n_b(lambda) = (sigma_lambda)_{st} b_t^+ b_s  (transposed placement)
      const int L = lam(g, GeneratorName::Nb1);
      OperatorExpr x;
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
          x += Coefficient(pauli(L, s, t)) *
               multiply(elem(Family::b, t + 1, true), elem(Family::b, s + 1, false));
      return x;
    }
    case GeneratorName::m1:
    case GeneratorName::m2:
    case GeneratorName::m3: {
      // m(lambda) = (sigma_lambda)_{st} a_t b_s
      const int L = lam(g, GeneratorName::m1);
      OperatorExpr x;
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
          x += Coefficient(pauli(L, s, t)) *
               multiply(elem(Family::a, t + 1, false), elem(Family::b, s + 1, false));
      return x;
    }
    case GeneratorName::mdag1:
    case GeneratorName::mdag2:
    case GeneratorName::mdag3: {
      // mdag(lambda) = (sigma_lambda)_{st} a_s^+ b_t^+
      const int L = lam(g, GeneratorName::mdag1);
      OperatorExpr x;
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
          x += Coefficient(pauli(L, s, t)) *
               multiply(elem(Family::a, s + 1, true), elem(Family::b, t + 1, true));
      return x;
    }
  }
  throw DomainError("generator: unknown name");
}

inline OperatorExpr generatorM(int lambda, bool dagger) {
  if (lambda < 1 || lambda > 3) throw DomainError("generatorM: lambda out of range");
  const int base = static_cast<int>(dagger ? GeneratorName::mdag1 : GeneratorName::m1);
  return generator(static_cast<GeneratorName>(base + lambda - 1));
}

inline OperatorExpr generatorN(int lambda, Family f) {
  if (lambda < 1 || lambda > 3) throw DomainError("generatorN: lambda out of range");
  const int base = static_cast<int>(f == Family::a ? GeneratorName::Na1 : GeneratorName::Nb1);
  return generator(static_cast<GeneratorName>(base + lambda - 1));
}

inline OperatorExpr physicalOperator(PhysicalOpName p) {
  const Coefficient halfOverW =
      Coefficient(BigRational(1, 2)) * Coefficient::symbol(Symbol::w, -1);
  switch (p) {
    case PhysicalOpName::r:
      return halfOverW * (generator(GeneratorName::M) + generator(GeneratorName::Mdag) +
                          generator(GeneratorName::Nplus2));
    case PhysicalOpName::x1:
    case PhysicalOpName::x2:
    case PhysicalOpName::x3: {
      const int L = 1 + static_cast<int>(p) - static_cast<int>(PhysicalOpName::x1);
      return halfOverW * (generatorM(L, false) + generatorM(L, true) +
                          generatorN(L, Family::a) + generatorN(L, Family::b));
    }
    case PhysicalOpName::rp1:
    case PhysicalOpName::rp2:
    case PhysicalOpName::rp3: {
      const int L = 1 + static_cast<int>(p) - static_cast<int>(PhysicalOpName::rp1);
      const Coefficient minusHalfI =
          Coefficient(GaussianRational(BigRational(0), BigRational(-1, 2)));
      return minusHalfI * (generatorM(L, false) - generatorM(L, true));
    }
    case PhysicalOpName::rpSquared:
      return Coefficient(BigRational(1, 2)) * Coefficient::symbol(Symbol::w) *
             (generator(GeneratorName::Nplus2) - generator(GeneratorName::M) -
              generator(GeneratorName::Mdag));
    case PhysicalOpName::L2: {
      const OperatorExpr nPlus2 = generator(GeneratorName::Nplus2);
      const OperatorExpr n = nPlus2 - OperatorExpr::scalar(Coefficient(2));
      return Coefficient(BigRational(1, 4)) * multiply(n, nPlus2) -
             multiply(generator(GeneratorName::Mdag), generator(GeneratorName::M));
    }
    case PhysicalOpName::l1:
    case PhysicalOpName::l2:
    case PhysicalOpName::l3: {
      const int L = 1 + static_cast<int>(p) - static_cast<int>(PhysicalOpName::l1);
      return generatorN(L, Family::a) - generatorN(L, Family::b);
    }
  }
  throw DomainError("physicalOperator: unknown name");
}

// ---------------------------------------------------------------------------
// State constructors
// ---------------------------------------------------------------------------

// |ns>: (Mdag)^n |0> stored unnormalized with the exact squared norm
// n!(n+1)! attached (ladder with Bargmann index 1).
inline KetState sState(int n) {
  if (n < 0) throw DomainError("sState: n must be >= 0");
  OperatorExpr acc = OperatorExpr::one();
  const OperatorExpr mdag = generator(GeneratorName::Mdag);
  for (int k = 0; k < n; ++k) acc = multiply(mdag, acc);
  return KetState(applyToVacuum(acc).expr(),
                  BigRational(factorial(static_cast<unsigned>(n)) *
                              factorial(static_cast<unsigned>(n + 1))));
}

// |np>, m = 1: (Mdag)^(n-1) a1^+ b2^+ |0> carrying the *printed*
// normalization divisor n!(n+1)!. That divisor does not make the state a
// unit vector — the exact squared norm is (n+2)/(6n), frozen in the tests —
// but silently renormalizing would hide the discrepancy, so it is kept.
inline KetState pState(int n) {
  if (n < 1) throw DomainError("pState: n must be >= 1");
  OperatorExpr acc = multiply(OperatorExpr::mode(Family::a, 1, true),
                              OperatorExpr::mode(Family::b, 2, true));
  const OperatorExpr mdag = generator(GeneratorName::Mdag);
  for (int k = 0; k < n - 1; ++k) acc = multiply(mdag, acc);
  return KetState(applyToVacuum(acc).expr(),
                  BigRational(factorial(static_cast<unsigned>(n)) *
                              factorial(static_cast<unsigned>(n + 1))));
}

// ---------------------------------------------------------------------------
// Algebra closure
// ---------------------------------------------------------------------------

struct ClosureEntry {
  GeneratorName left;
  GeneratorName right;
  std::map<GeneratorName, GaussianRational> coefficients;  // zero entries omitted
  OperatorExpr residual;                                   // zero iff the pair closes
};

struct ClosureReport {
  std::vector<ClosureEntry> entries;
  bool pass = false;
};

namespace detail {

// Exact dense solve of A x = rhs over the Gaussian rationals by forward
// elimination; A is (rows x cols) with rows >= cols and full column rank for
// our use. Returns nullopt when the system is inconsistent.
inline std::optional<std::vector<GaussianRational>> solveExact(
    std::vector<std::vector<GaussianRational>> A, std::vector<GaussianRational> rhs) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows == 0 ? 0 : A[0].size();
  std::vector<std::size_t> pivotRow(cols, SIZE_MAX);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pr = SIZE_MAX;
    for (std::size_t r = rank; r < rows; ++r)
      if (!A[r][c].isZero()) {
        pr = r;
        break;
      }
    if (pr == SIZE_MAX) continue;
    std::swap(A[pr], A[rank]);
    std::swap(rhs[pr], rhs[rank]);
    const GaussianRational inv = GaussianRational(1) / A[rank][c];
    for (std::size_t cc = c; cc < cols; ++cc) A[rank][cc] *= inv;
    rhs[rank] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || A[r][c].isZero()) continue;
      const GaussianRational f = A[r][c];
      for (std::size_t cc = c; cc < cols; ++cc) A[r][cc] -= f * A[rank][cc];
      rhs[r] -= f * rhs[rank];
    }
    pivotRow[c] = rank;
    ++rank;
  }
  // Inconsistent if any fully-eliminated row keeps a nonzero rhs.
  for (std::size_t r = rank; r < rows; ++r)
    if (!rhs[r].isZero()) return std::nullopt;
  std::vector<GaussianRational> x(cols, GaussianRational(0));
  for (std::size_t c = 0; c < cols; ++c)
    if (pivotRow[c] != SIZE_MAX) x[c] = rhs[pivotRow[c]];
  return x;
}

}  // namespace detail

// Expresses expr exactly in the span of the 15 generators. Returns the
// coefficient vector when the expansion exists.
inline std::optional<std::map<GeneratorName, GaussianRational>> expandInGenerators(
    const OperatorExpr& expr) {
  const auto gens = allGenerators();
  std::array<OperatorExpr, 15> gx;
  std::map<NormalMonomial, std::size_t> monomialIndex;
  auto touch = [&](const OperatorExpr& e) {
    for (const auto& [m, c] : e.terms()) monomialIndex.emplace(m, monomialIndex.size());
  };
  for (std::size_t k = 0; k < gens.size(); ++k) {
    gx[k] = generator(gens[k]);
    touch(gx[k]);
  }
  touch(expr);

  const std::size_t rows = monomialIndex.size();
  std::vector<std::vector<GaussianRational>> A(rows,
                                               std::vector<GaussianRational>(gens.size()));
  std::vector<GaussianRational> rhs(rows);
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (const auto& [m, c] : gx[k].terms()) A[monomialIndex.at(m)][k] = c.numericValue();
  for (const auto& [m, c] : expr.terms()) rhs[monomialIndex.at(m)] = c.numericValue();

  auto x = detail::solveExact(std::move(A), std::move(rhs));
  if (!x) return std::nullopt;
  std::map<GeneratorName, GaussianRational> out;
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (!(*x)[k].isZero()) out.emplace(gens[k], (*x)[k]);
  return out;
}

// All 105 unordered commutators, each resolved exactly against the
// 15-generator span. pass = every residual vanishes.
inline ClosureReport checkClosure() {
  ClosureReport report;
  const auto gens = allGenerators();
  std::array<OperatorExpr, 15> gx;
  for (std::size_t k = 0; k < gens.size(); ++k) gx[k] = generator(gens[k]);

  report.pass = true;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      ClosureEntry entry;
      entry.left = gens[i];
      entry.right = gens[j];
      OperatorExpr comm = commutator(gx[i], gx[j]);
      if (auto coeffs = expandInGenerators(comm)) {
        entry.coefficients = std::move(*coeffs);
        entry.residual = OperatorExpr::zero();
      } else {
        entry.residual = std::move(comm);
        report.pass = false;
      }
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

}  // namespace cgf
