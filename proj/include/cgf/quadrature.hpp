#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "cgf/errors.hpp"

namespace cgf {

// Deterministic adaptive Gauss(7)/Kronrod(15) quadrature. The refinement
// proceeds in waves — every leaf over its error share is split, all new
// leaves are evaluated, repeat — so the node set depends only on the
// integrand and tolerances, never on scheduling. Worker threads (CGF_THREADS)
// only spread the per-wave evaluations; the final sum runs in a fixed
// left-to-right interval order either way.

struct QuadratureOutcome {
  std::complex<double> value{};
  double errorEstimate = 0;
  int nodesUsed = 0;
  int intervals = 0;
};

namespace gk {

// Kronrod-15 abscissae (half interval, descending) and weights; the Gauss-7
// rule reuses abscissae 1, 3, 5, 7.
inline constexpr double xk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
  std::complex<double> value{};
  double error = 0;
};

template <typename F>
Panel evaluate(const F& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  std::complex<double> fv[15];
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(c - h * xk[j]);
    fv[14 - j] = f(c + h * xk[j]);
  }
  fv[7] = f(c);
  std::complex<double> kron{}, gauss{};
  for (int j = 0; j < 7; ++j) kron += wk[j] * (fv[j] + fv[14 - j]);
  kron += wk[7] * fv[7];
  for (int j = 0; j < 3; ++j) gauss += wg[j] * (fv[2 * j + 1] + fv[13 - 2 * j]);
  gauss += wg[3] * fv[7];
  return {kron * h, std::abs((kron - gauss) * h)};
}

inline unsigned threadCount() {
  if (const char* env = std::getenv("CGF_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n == 0) {
      const unsigned hw = std::thread::hardware_concurrency();
      return std::min(hw == 0 ? 1u : hw, 64u);
    }
    if (n >= 1) return static_cast<unsigned>(std::min(n, 64L));
  }
  return 1;
}

}  // namespace gk

template <typename F>
QuadratureOutcome adaptiveGK(const F& f, double a, double b, double relTol,
                             int maxIntervals = 4000) {
  if (!(relTol > 0) || !(b > a)) throw DomainError("adaptiveGK: bad interval or tolerance");

  struct Leaf {
    double a, b;
    gk::Panel panel;
    bool fresh = true;
  };
  std::map<double, Leaf> leaves;  // keyed by left endpoint: fixed summation order
  leaves.emplace(a, Leaf{a, b, {}, true});
  int nodes = 0;

  const auto evaluateFresh = [&] {
    std::vector<Leaf*> fresh;
    for (auto& [key, leaf] : leaves)
      if (leaf.fresh) fresh.push_back(&leaf);
    const unsigned nt = std::min<std::size_t>(gk::threadCount(), fresh.size());
    if (nt > 1) {
      std::vector<std::thread> pool;
      std::atomic<std::size_t> next{0};
      std::vector<std::exception_ptr> errors(nt);
      for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&, t] {
          try {
            for (std::size_t i = next++; i < fresh.size(); i = next++)
              fresh[i]->panel = gk::evaluate(f, fresh[i]->a, fresh[i]->b);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      for (auto& th : pool) th.join();
      for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    } else {
      for (Leaf* leaf : fresh) leaf->panel = gk::evaluate(f, leaf->a, leaf->b);
    }
    for (Leaf* leaf : fresh) leaf->fresh = false;
    nodes += static_cast<int>(fresh.size()) * 15;
  };

  while (true) {
    evaluateFresh();
    std::complex<double> total{};
    double err = 0;
    for (const auto& [key, leaf] : leaves) {
      total += leaf.panel.value;
      err += leaf.panel.error;
    }
    const double target = relTol * std::max(std::abs(total), 1e-300);
    if (err <= target)
      return {total, err, nodes, static_cast<int>(leaves.size())};

    // Split every leaf holding more than its width-proportional error share.
    std::vector<std::pair<double, double>> splits;
    for (const auto& [key, leaf] : leaves)
      if (leaf.panel.error > target * (leaf.b - leaf.a) / (b - a))
        splits.emplace_back(leaf.a, leaf.b);
    if (splits.empty())  // refinement cannot reduce the estimate further
      throw QuadratureStall("adaptiveGK: error estimate stagnated above tolerance");
    if (static_cast<int>(leaves.size() + splits.size()) > maxIntervals)
      throw QuadratureStall("adaptiveGK: interval budget exhausted");
    for (const auto& [la, lb] : splits) {
      const double mid = 0.5 * (la + lb);
      leaves[la] = Leaf{la, mid, {}, true};
      leaves[mid] = Leaf{mid, lb, {}, true};
    }
  }
}

}  // namespace cgf
