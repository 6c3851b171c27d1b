#pragma once

#include <functional>

#include "pdolab/symbol.hpp"

// Brute-force ground truth.  Everything here works with explicit matrices of
// Op(a) compressed to Fourier modes |n| <= N and never touches the symbolic
// trace machinery, so formula-vs-oracle comparisons cross independent code
// paths.

namespace pdolab {

struct TruncatedOperator {
  int N = 0;  // modes -N..N
  int k = 1;
  Mat matrix;  // ((2N+1)k)^2, row/col index (n+N)*k + a

  int dim() const { return (2 * N + 1) * k; }
  int row(int mode, int comp = 0) const { return (mode + N) * k + comp; }
};

// exact matrix of Op(a) on |n| <= N; requires a exactly specified at those modes
TruncatedOperator truncate_op(const PolyhomSymbol& a, int N);

// 2x2-block idempotent e = G^{-1} p G from the invertible lifting
// G = (0 1; -1 P)(1 0; Q 1)(1 -P; 0 1); blocks exposed for property tests
struct IdempotentModel {
  int N = 0;       // interior trace radius
  int N_big = 0;   // carrier cutoff, N + buffer
  int k = 1;
  Mat e11, e12, e21, e22;
};

IdempotentModel build_index_idempotent(const PolyhomSymbol& q, int N, int j, const PolyhomSymbol* p_hint = nullptr);

// tr over interior modes |n| <= N of (e - p); block trace of e11 - 1 and e22
cplx interior_index_trace(const IdempotentModel& m);
// same for (e - p)^(2w+1); w = 0 reproduces interior_index_trace
cplx interior_index_trace_power(const IdempotentModel& m, int w);

struct IndexPairingResult {
  cplx e_trace;
  long rounded = 0;
  bool stable = false;  // within 1e-2 of an integer
};

IndexPairingResult index_idempotent_pairing(const PolyhomSymbol& q, int N, int j);

// discrete argument-principle winding of det f on a 4096-point grid
long winding_number(const TrigPoly& f);

// Lattice field-strength (Fukui-Hatsugai style) Chern number over a G x G
// grid of T^2.  `frame` returns an orthonormal frame of im e(b) at grid
// point (i, j), b = 2*pi*(i, j)/G.  Frames are evaluated in parallel row by
// row unless `serial`; the plaquette sum is ordered and deterministic.
long chern_number_frames(int G, int dim, int rank, const std::function<Mat(int, int)>& frame, bool serial = false);

// convenience wrapper taking explicit idempotent matrices; checks
// idempotency to 1e-8 and rank constancy, frames via column-pivoted QR
long chern_number(int G, const std::function<Mat(int, int)>& idempotent, bool serial = false);

// orthonormal frame of the column space of an (approximate) idempotent
Mat idempotent_frame(const Mat& e, int rank);

}  // namespace pdolab
