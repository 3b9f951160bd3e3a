#pragma once

// Test-only oracle: the full 4-mode Fock lattice over the *unnormalized*
// occupation basis |n> with  adag|n> = |n+1>  and  a|n> = n|n-1>.
// Applying an OperatorExpr to a finite lattice vector is exact (Gaussian
// rational) and involves no normal ordering at all, so it independently
// referees the Wick engine: expressions act term by term, annihilators first
// as falling factorials, then creators as plain shifts.

#include <array>
#include <map>

#include "cgf/wick.hpp"

namespace cgf::testing {

using Occupation = std::array<std::uint32_t, 4>;
using LatticeVec = std::map<Occupation, GaussianRational>;

inline LatticeVec latticeVacuum() { return {{Occupation{}, GaussianRational(1)}}; }

inline void latticeAdd(LatticeVec& v, const Occupation& n, const GaussianRational& g) {
  if (g.isZero()) return;
  auto it = v.find(n);
  if (it == v.end()) {
    v.emplace(n, g);
  } else {
    it->second += g;
    if (it->second.isZero()) v.erase(it);
  }
}

// expr must carry pure Q(i) coefficients (no formal symbols).
inline LatticeVec latticeApply(const OperatorExpr& expr, const LatticeVec& vec) {
  LatticeVec out;
  for (const auto& [mono, coeff] : expr.terms()) {
    const GaussianRational c = coeff.numericValue();
    for (const auto& [occ, g] : vec) {
      // Annihilation block: a^k |n> = n(n-1)...(n-k+1) |n-k>.
      BigInt falling = 1;
      bool killed = false;
      Occupation cur = occ;
      for (int s = 0; s < 4 && !killed; ++s) {
        const std::uint32_t k = mono.annihilation(s);
        if (k > cur[s]) {
          killed = true;
          break;
        }
        for (std::uint32_t j = 0; j < k; ++j) falling *= cur[s] - j;
        cur[s] -= k;
      }
      if (killed) continue;
      for (int s = 0; s < 4; ++s) cur[s] += mono.creation(s);
      latticeAdd(out, cur, c * g * GaussianRational(BigRational(falling)));
    }
  }
  return out;
}

// <l|r> in the unnormalized basis: metric <n|n> = prod n_s!.
inline GaussianRational latticeInner(const LatticeVec& l, const LatticeVec& r) {
  GaussianRational acc;
  for (const auto& [occ, gl] : l) {
    auto it = r.find(occ);
    if (it == r.end()) continue;
    BigInt w = 1;
    for (int s = 0; s < 4; ++s) w *= factorial(occ[s]);
    acc += gl.conj() * it->second * GaussianRational(BigRational(w));
  }
  return acc;
}

inline GaussianRational latticeVacuumComponent(const LatticeVec& v) {
  auto it = v.find(Occupation{});
  return it == v.end() ? GaussianRational(0) : it->second;
}

}  // namespace cgf::testing
