#pragma once

// Shared helpers for the test suites: deterministic random generators for
// exactly specified symbols, and independent numeric continuations used as
// oracles against the closed-form zeta machinery.

#include <cmath>
#include <random>

#include "pdolab/symbol.hpp"

namespace pdolab::testing {

inline double unit(std::mt19937_64& rng) {
  return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

inline TrigPoly random_trig(std::mt19937_64& rng, int rank, int k, int bw, int terms, double scale = 1.0) {
  TrigPoly p(rank, k);
  for (int t = 0; t < terms; ++t) {
    FreqVec f(rank);
    for (int i = 0; i < rank; ++i) f[i] = static_cast<int>(rng() % (2 * bw + 1)) - bw;
    Mat m(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) m(a, b) = cplx(unit(rng), unit(rng)) * scale;
    p.add_coeff(f, m);
  }
  return p;
}

// Exactly specified symbol of the given order: homogeneous components down
// to degree min(order, 0) - extra_depth, random zero mode, a few random
// low-mode corrections (smoothing perturbation).  For order >= 0 the symbol
// is branchwise polynomial iff extra_depth == 0.
inline PolyhomSymbol random_exact_symbol(std::mt19937_64& rng, int base_rank, int k, int order, int bw = 2, double scale = 0.5,
                                         bool with_corrections = true, int extra_depth = 0) {
  const int rank = base_rank + 1;
  PolyhomSymbol s(base_rank, k, order, kDeepWatermark);
  const int jmax = std::max(order, 0) - order + extra_depth;  // reach degree min(order,0) - extra_depth
  for (int j = 0; j <= jmax; ++j)
    s.set_component(j, random_trig(rng, rank, k, bw, 3, scale), random_trig(rng, rank, k, bw, 3, scale));
  std::map<int, TrigPoly> corr;
  if (with_corrections) {
    for (int n : {1, -1, 2}) corr[n] = random_trig(rng, rank, k, bw, 2, 0.25 * scale);
  }
  s.set_exact(random_trig(rng, rank, k, bw, 3, scale), std::move(corr), with_corrections ? 2 : 0, true);
  return s;
}

// Euler-Maclaurin continuation of zeta(s), s != 1; independent of the
// Bernoulli special-value path used by the library
inline double zeta_em(double s, int N = 60, int K = 8) {
  double sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::pow(n, -s);
  sum += 0.5 * std::pow(N, -s);
  sum += std::pow(N, 1.0 - s) / (s - 1.0);
  // Bernoulli numbers via the recursive identity, local to the oracle
  std::vector<double> B(2 * K + 2, 0.0);
  B[0] = 1.0;
  for (int m = 1; m < static_cast<int>(B.size()); ++m) {
    double acc = 0.0;
    double binom = 1.0;
    for (int j = 0; j < m; ++j) {
      acc += binom * B[j] / (m - j + 1.0);
      binom = binom * (m - j) / (j + 1.0);
    }
    B[m] = -acc;
  }
  B[1] = -0.5;
  double rising = s;  // (s)(s+1)...(s+2k-2), start k=1: just s
  double fact = 2.0;  // (2k)!
  for (int k = 1; k <= K; ++k) {
    sum += B[2 * k] / fact * rising * std::pow(N, -s - 2 * k + 1);
    rising *= (s + 2 * k - 1) * (s + 2 * k);
    fact *= (2 * k + 1) * (2 * k + 2);
  }
  return sum;
}

}  // namespace pdolab::testing
