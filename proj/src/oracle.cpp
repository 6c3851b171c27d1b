#include "pdolab/oracle.hpp"

#include <cmath>
#include <vector>

#include "pdolab/constants.hpp"
#include "pdolab/parallel.hpp"

namespace pdolab {

TruncatedOperator truncate_op(const PolyhomSymbol& a, int N) {
  if (a.base_rank() != 0) throw std::invalid_argument("truncate_op: evaluate the base point first (base rank must be 0)");
  if (!a.has_exact()) throw std::domain_error("truncate_op: symbol is not exactly specified (missing zero mode)");
  const int k = a.matrix_size();
  TruncatedOperator op;
  op.N = N;
  op.k = k;
  op.matrix = Mat::Zero((2 * N + 1) * k, (2 * N + 1) * k);
  for (int n = -N; n <= N; ++n) {
    TrigPoly col = a.exact_value(n);  // rank 1 poly in x
    for (const auto& [f, m] : col.coeffs()) {
      const int mrow = n + f[0];
      if (mrow < -N || mrow > N) continue;
      op.matrix.block((mrow + N) * k, (n + N) * k, k, k) = m;
    }
  }
  return op;
}

IdempotentModel build_index_idempotent(const PolyhomSymbol& q, int N, int j, const PolyhomSymbol* p_hint) {
  const int buffer = 4 * (j + 2);
  const int N_big = N + buffer;
  PolyhomSymbol p = p_hint ? *p_hint : parametrix(q, j);
  TruncatedOperator Q = truncate_op(q, N_big);
  TruncatedOperator P = truncate_op(p, N_big);
  const int dim = Q.dim();
  const Mat I = Mat::Identity(dim, dim);

  // G = (0 1; -1 P)(1 0; Q 1)(1 -P; 0 1),  G^{-1} = (P + P(1-QP), PQ-1; 1-QP, Q)
  // e = G^{-1} p G has blocks (aQ, aC; cQ, cC) with a = 2P - PQP, c = 1 - QP.
  Mat QP = Q.matrix * P.matrix;
  Mat C = I - QP;
  Mat A = 2.0 * P.matrix - P.matrix * QP;

  IdempotentModel m;
  m.N = N;
  m.N_big = N_big;
  m.k = Q.k;
  m.e11 = A * Q.matrix;
  m.e12 = A * C;
  m.e21 = C * Q.matrix;
  m.e22 = C * C;
  return m;
}

cplx interior_index_trace(const IdempotentModel& m) {
  const int k = m.k;
  cplx tr = 0.0;
  for (int n = -m.N; n <= m.N; ++n) {
    const int i0 = (n + m.N_big) * k;
    for (int a = 0; a < k; ++a) tr += m.e11(i0 + a, i0 + a) - 1.0 + m.e22(i0 + a, i0 + a);
  }
  return tr;
}

cplx interior_index_trace_power(const IdempotentModel& m, int w) {
  if (w == 0) return interior_index_trace(m);
  const int dim = static_cast<int>(m.e11.rows());
  Mat d(2 * dim, 2 * dim);
  d.topLeftCorner(dim, dim) = m.e11 - Mat::Identity(dim, dim);
  d.topRightCorner(dim, dim) = m.e12;
  d.bottomLeftCorner(dim, dim) = m.e21;
  d.bottomRightCorner(dim, dim) = m.e22;
  Mat pw = d;
  for (int t = 0; t < 2 * w; ++t) pw = pw * d;
  const int k = m.k;
  cplx tr = 0.0;
  for (int n = -m.N; n <= m.N; ++n) {
    const int i0 = (n + m.N_big) * k;
    for (int a = 0; a < k; ++a) tr += pw(i0 + a, i0 + a) + pw(dim + i0 + a, dim + i0 + a);
  }
  return tr;
}

IndexPairingResult index_idempotent_pairing(const PolyhomSymbol& q, int N, int j) {
  IdempotentModel m = build_index_idempotent(q, N, j);
  IndexPairingResult r;
  r.e_trace = interior_index_trace(m);
  r.rounded = std::lround(r.e_trace.real());
  r.stable = std::abs(r.e_trace - cplx(static_cast<double>(r.rounded), 0.0)) <= 1e-2;
  return r;
}

long winding_number(const TrigPoly& f) {
  if (f.rank() != 1) throw std::invalid_argument("winding_number: expects a single-variable trig poly");
  constexpr int kSamples = 4096;
  double total = 0.0;
  double prev_arg = 0.0;
  bool first = true;
  double first_arg = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = kTwoPi * i / kSamples;
    Mat v = f.eval({x});
    cplx det;
    if (f.matrix_size() == 1)
      det = v(0, 0);
    else
      det = Eigen::PartialPivLU<Mat>(v).determinant();
    if (std::abs(det) < 1e-8) throw std::domain_error("winding_number: near-singular loop");
    const double a = std::arg(det);
    if (first) {
      first = false;
      first_arg = a;
    } else {
      double d = a - prev_arg;
      while (d > kPi) d -= kTwoPi;
      while (d < -kPi) d += kTwoPi;
      total += d;
    }
    prev_arg = a;
  }
  double d = first_arg - prev_arg;
  while (d > kPi) d -= kTwoPi;
  while (d < -kPi) d += kTwoPi;
  total += d;
  return std::lround(total / kTwoPi);
}

Mat idempotent_frame(const Mat& e, int rank) {
  Eigen::ColPivHouseholderQR<Mat> qr(e);
  Mat Qfull = qr.householderQ();
  return Qfull.leftCols(rank);
}

long chern_number_frames(int G, int dim, int rank, const std::function<Mat(int, int)>& frame, bool serial) {
  if (G < 2) throw std::invalid_argument("chern_number_frames: grid too small");
  std::vector<Mat> row0(G), rowj(G), rownext(G);
  parallel_for(G, [&](std::int64_t i) { row0[i] = frame(static_cast<int>(i), 0); }, serial);
  rowj = row0;

  // link phases stored row by row; plaquette sum kept in deterministic order
  std::vector<std::vector<cplx>> ux(G), uy(G);
  for (int j = 0; j < G; ++j) {
    ux[j].resize(G);
    uy[j].resize(G);
  }
  for (int j = 0; j < G; ++j) {
    if (j + 1 < G) {
      parallel_for(G, [&](std::int64_t i) { rownext[i] = frame(static_cast<int>(i), j + 1); }, serial);
    } else {
      rownext = row0;
    }
    std::vector<cplx> ux_row(G), uy_row(G);
    parallel_for(G, [&](std::int64_t i) {
      const Mat& a = rowj[i];
      const Mat& bx = rowj[(i + 1) % G];
      const Mat& by = rownext[i];
      Mat ox = a.adjoint() * bx;
      Mat oy = a.adjoint() * by;
      ux_row[i] = Eigen::PartialPivLU<Mat>(ox).determinant();
      uy_row[i] = Eigen::PartialPivLU<Mat>(oy).determinant();
    }, serial);
    for (int i = 0; i < G; ++i) {
      if (std::abs(ux_row[i]) < 1e-12 || std::abs(uy_row[i]) < 1e-12)
        throw std::runtime_error("chern_number_frames: singular link overlap, refine the grid");
      ux[j][i] = ux_row[i];
      uy[j][i] = uy_row[i];
    }
    rowj.swap(rownext);
  }
  (void)dim;
  (void)rank;

  double total = 0.0;
  for (int j = 0; j < G; ++j) {
    for (int i = 0; i < G; ++i) {
      const cplx hol = ux[j][i] * uy[j][(i + 1) % G] / (ux[(j + 1) % G][i] * uy[j][i]);
      total += std::arg(hol);
    }
  }
  return std::lround(total / kTwoPi);
}

long chern_number(int G, const std::function<Mat(int, int)>& idempotent, bool serial) {
  // probe rank and idempotency on a corner sample
  Mat e0 = idempotent(0, 0);
  const int rank = static_cast<int>(std::lround(e0.trace().real()));
  const double idem_err = (e0 * e0 - e0).cwiseAbs().maxCoeff();
  if (idem_err > 1e-8) throw std::domain_error("chern_number: input is not idempotent to 1e-8");
  const int dim = static_cast<int>(e0.rows());
  auto frame = [&](int i, int j) {
    Mat e = idempotent(i, j);
    const int r = static_cast<int>(std::lround(e.trace().real()));
    if (r != rank) throw std::domain_error("chern_number: rank jump across the grid (gap closing)");
    if ((e * e - e).cwiseAbs().maxCoeff() > 1e-8) throw std::domain_error("chern_number: input is not idempotent to 1e-8");
    return idempotent_frame(e, rank);
  };
  return chern_number_frames(G, dim, rank, frame, serial);
}

}  // namespace pdolab
