#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdolab/constants.hpp"
#include "pdolab/oracle.hpp"
#include "support.hpp"

using namespace pdolab;
using pdolab::testing::random_trig;

TEST_CASE("truncation of the identity and of the shift") {
  TruncatedOperator ti = truncate_op(identity_symbol(0, 1), 6);
  CHECK((ti.matrix - Mat::Identity(13, 13)).cwiseAbs().maxCoeff() == 0.0);

  PolyhomSymbol shift = multiplication_symbol(TrigPoly::harmonic(1, 0, 1));
  TruncatedOperator ts = truncate_op(shift, 6);
  for (int m = -6; m <= 6; ++m)
    for (int n = -6; n <= 6; ++n) {
      const double want = (m == n + 1) ? 1.0 : 0.0;
      CHECK(std::abs(ts.matrix(ts.row(m), ts.row(n)) - want) == 0.0);
    }
}

TEST_CASE("index pairing on the winding corpus") {
  IndexPairingResult r0 = index_idempotent_pairing(identity_symbol(0, 1), 48, 3);
  CHECK(r0.stable);
  CHECK(r0.rounded == 0);
  CHECK(std::abs(r0.e_trace) < 1e-8);

  IndexPairingResult r1 = index_idempotent_pairing(winding_symbol(0, 1, 0), 64, 4);
  CHECK(r1.stable);
  CHECK(r1.rounded == 1);

  IndexPairingResult r2 = index_idempotent_pairing(winding_symbol(0, 2, 0), 64, 4);
  CHECK(r2.stable);
  CHECK(r2.rounded == 2);

  IndexPairingResult rm = index_idempotent_pairing(winding_symbol(0, -1, 1), 64, 4);
  CHECK(rm.stable);
  CHECK(rm.rounded == -2);
}

TEST_CASE("pairing is stable under doubling the cutoff") {
  PolyhomSymbol q = winding_symbol(0, 2, -1);
  IndexPairingResult a = index_idempotent_pairing(q, 48, 4);
  IndexPairingResult b = index_idempotent_pairing(q, 96, 4);
  CHECK(a.stable);
  CHECK(b.stable);
  CHECK(a.rounded == b.rounded);
  CHECK(std::abs(a.e_trace - b.e_trace) < 1e-4);
}

TEST_CASE("higher odd powers of (e - p) give the same trace") {
  PolyhomSymbol q = winding_symbol(0, 1, 0);
  IdempotentModel m = build_index_idempotent(q, 32, 4);
  const cplx t0 = interior_index_trace_power(m, 0);
  const cplx t1 = interior_index_trace_power(m, 1);
  const cplx t2 = interior_index_trace_power(m, 2);
  CHECK(std::abs(t0 - t1) < 1e-6);
  CHECK(std::abs(t1 - t2) < 1e-6);
}

TEST_CASE("similarity invariance of the idempotent trace") {
  std::mt19937_64 rng(99);
  PolyhomSymbol q = winding_symbol(0, 1, 0);
  IdempotentModel m = build_index_idempotent(q, 24, 3);
  const int dim = static_cast<int>(m.e11.rows());
  Mat e(2 * dim, 2 * dim);
  e.topLeftCorner(dim, dim) = m.e11;
  e.topRightCorner(dim, dim) = m.e12;
  e.bottomLeftCorner(dim, dim) = m.e21;
  e.bottomRightCorner(dim, dim) = m.e22;
  Mat p = Mat::Zero(2 * dim, 2 * dim);
  p.topLeftCorner(dim, dim) = Mat::Identity(dim, dim);

  const cplx base = interior_index_trace(m);
  for (int trial = 0; trial < 5; ++trial) {
    // u = 1 + v with v supported on a trace-class-pattern block (decaying entries)
    Mat v = Mat::Zero(2 * dim, 2 * dim);
    for (int t = 0; t < 40; ++t) {
      const int i = static_cast<int>(rng() % (2 * dim));
      const int j = static_cast<int>(rng() % (2 * dim));
      const double di = std::abs((i % dim) - dim / 2.0), dj = std::abs((j % dim) - dim / 2.0);
      v(i, j) = 0.3 * pdolab::testing::unit(rng) / ((1.0 + di * di) * (1.0 + dj * dj));
    }
    Mat u = Mat::Identity(2 * dim, 2 * dim) + v;
    Mat ec = u.partialPivLu().solve(e * u);
    IdempotentModel mc = m;
    mc.e11 = ec.topLeftCorner(dim, dim);
    mc.e12 = ec.topRightCorner(dim, dim);
    mc.e21 = ec.bottomLeftCorner(dim, dim);
    mc.e22 = ec.bottomRightCorner(dim, dim);
    CHECK(std::abs(interior_index_trace(mc) - base) < 1e-6);
  }
}

TEST_CASE("block-diagonal additivity of the pairing") {
  // q1 (+) q2 as a 2x2 diagonal matrix symbol
  PolyhomSymbol q1 = winding_symbol(0, 1, 0);
  PolyhomSymbol q2 = winding_symbol(0, -1, 0);
  PolyhomSymbol qb(0, 2, 0, kDeepWatermark);
  auto embed = [&](const TrigPoly& s1, const TrigPoly& s2) {
    TrigPoly out(1, 2);
    for (const auto& [f, m] : s1.coeffs()) {
      Mat b = Mat::Zero(2, 2);
      b(0, 0) = m(0, 0);
      out.add_coeff(f, b);
    }
    for (const auto& [f, m] : s2.coeffs()) {
      Mat b = Mat::Zero(2, 2);
      b(1, 1) = m(0, 0);
      out.add_coeff(f, b);
    }
    return out;
  };
  qb.set_component(0, embed(q1.plus(0), q2.plus(0)), embed(q1.minus(0), q2.minus(0)));
  qb.set_exact(embed(q1.zero_mode(), q2.zero_mode()), {}, 0, true);

  IndexPairingResult rb = index_idempotent_pairing(qb, 48, 4);
  IndexPairingResult ra = index_idempotent_pairing(q1, 48, 4);
  IndexPairingResult rc = index_idempotent_pairing(q2, 48, 4);
  CHECK(rb.stable);
  CHECK(std::abs(rb.e_trace - ra.e_trace - rc.e_trace) < 1e-6);
  CHECK(rb.rounded == ra.rounded + rc.rounded);
}

TEST_CASE("winding numbers by the argument principle") {
  CHECK(winding_number(TrigPoly::harmonic(1, 0, 1)) == 1);
  CHECK(winding_number(TrigPoly::scalar_const(1, 2.0) + TrigPoly::cosine(1, 0)) == 0);
  TrigPoly f = TrigPoly::harmonic(1, 0, 2) * (TrigPoly::scalar_const(1, 1.0) + TrigPoly::cosine(1, 0, 0.3));
  CHECK(winding_number(f) == 2);
  CHECK_THROWS_AS(winding_number(TrigPoly::cosine(1, 0)), std::domain_error);
}

namespace {

// smooth two-band family over T^2: P = (1 - h.sigma/|h|)/2 with
// h = (sin b1, sin b2, m0 + cos b1 + cos b2); |c1| = 1 for 0 < |m0| < 2
Mat qwz_projector(double b1, double b2, double m0) {
  const double h1 = std::sin(b1), h2 = std::sin(b2), h3 = m0 + std::cos(b1) + std::cos(b2);
  const double norm = std::sqrt(h1 * h1 + h2 * h2 + h3 * h3);
  Mat s(2, 2);
  s(0, 0) = h3 / norm;
  s(0, 1) = cplx(h1, -h2) / norm;
  s(1, 0) = cplx(h1, h2) / norm;
  s(1, 1) = -h3 / norm;
  return 0.5 * (Mat::Identity(2, 2) - s);
}

}  // namespace

TEST_CASE("lattice chern number: constant projector and two-band model") {
  Mat c = Mat::Zero(3, 3);
  c(0, 0) = 1.0;
  CHECK(chern_number(8, [&](int, int) { return c; }) == 0);

  auto e = [&](int i, int j) { return qwz_projector(kTwoPi * i / 16, kTwoPi * j / 16, 1.0); };
  const long c1 = chern_number(16, e);
  CHECK(std::abs(c1) == 1);

  // complementary bundle cancels
  auto ec = [&](int i, int j) { return Mat((Mat::Identity(2, 2) - qwz_projector(kTwoPi * i / 16, kTwoPi * j / 16, 1.0)).eval()); };
  CHECK(chern_number(16, ec) == -c1);

  // grid refinement stability
  auto e2 = [&](int i, int j) { return qwz_projector(kTwoPi * i / 32, kTwoPi * j / 32, 1.0); };
  CHECK(chern_number(32, e2) == c1);

  // trivial phase
  auto et = [&](int i, int j) { return qwz_projector(kTwoPi * i / 16, kTwoPi * j / 16, 3.0); };
  CHECK(chern_number(16, et) == 0);

  // serial reference path gives bit-identical output
  CHECK(chern_number(16, e, /*serial=*/true) == c1);
}
