#pragma once

// Exact special values feeding the zeta-function finite parts: Bernoulli
// numbers for zeta at nonpositive integers, Euler-Mascheroni at the pole,
// Richardson-accelerated direct sums for positive integer arguments.

namespace pdolab {

// B_0 = 1, B_1 = -1/2, B_2 = 1/6, ...; exact doubles up to B_30
double bernoulli_number(int n);

// zeta(-n) = -B_{n+1}/(n+1) for n >= 0 (zeta(0) = -1/2)
double zeta_nonpositive(int minus_s);

// zeta(m) for integer m >= 2, Richardson extrapolation of partial sums,
// absolute accuracy better than 1e-13
double zeta_positive(int m);

// H_n = 1 + 1/2 + ... + 1/n
double harmonic_number(int n);

}  // namespace pdolab
