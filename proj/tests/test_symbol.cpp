#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdolab/oracle.hpp"
#include "pdolab/symbol.hpp"
#include "support.hpp"

using namespace pdolab;
using pdolab::testing::random_exact_symbol;
using pdolab::testing::random_trig;

namespace {

// l1 mass of the component difference over the commonly tracked range
double tracked_diff(const PolyhomSymbol& a, const PolyhomSymbol& b) {
  PolyhomSymbol d = sym_sub(a, b);
  const int wm = std::max(a.watermark(), b.watermark());
  double v = 0.0;
  for (int j = 0; j <= d.stored_j(); ++j) {
    if (d.order() - j <= wm) break;
    v += d.plus(j).coeff_l1() + d.minus(j).coeff_l1();
  }
  return v;
}

}  // namespace

TEST_CASE("arithmetic identities") {
  std::mt19937_64 rng(42);
  PolyhomSymbol a = random_exact_symbol(rng, 0, 1, 1);
  PolyhomSymbol zero(0, 1, a.order(), a.watermark());

  CHECK(tracked_diff(sym_add(a, zero), a) == 0.0);

  PolyhomSymbol s0 = sym_scale(a, 0.0);
  CHECK(s0.is_zero());
  CHECK(s0.order() == a.order());
  CHECK(s0.watermark() == a.watermark());

  // |xi| - |xi| keeps its recorded order with a vanishing leading component
  PolyhomSymbol d = d_spec_symbol(0, 1);
  PolyhomSymbol c = sym_sub(d, d);
  CHECK(c.order() == 1);
  CHECK(c.is_zero());
}

TEST_CASE("composition of multiplication symbols is the pointwise product") {
  TrigPoly f = TrigPoly::cosine(1, 0, 1.0) + TrigPoly::scalar_const(1, 2.0);
  TrigPoly g = TrigPoly::sine(1, 0, 0.7);
  PolyhomSymbol c = sym_compose(multiplication_symbol(f), multiplication_symbol(g), 4);
  CHECK(TrigPoly::max_abs_diff(c.plus(0), f * g) < 1e-14);
  CHECK(TrigPoly::max_abs_diff(c.minus(0), f * g) < 1e-14);
  for (int j = 1; j <= c.stored_j(); ++j) {
    CHECK(c.plus(j).is_zero());
    CHECK(c.minus(j).is_zero());
  }
  CHECK(c.exact_tail());
}

TEST_CASE("[D, shift] equals sign(xi) e^{ix} and the truncated-matrix commutator") {
  PolyhomSymbol D = d_spec_symbol(0, 1);
  PolyhomSymbol shift = multiplication_symbol(TrigPoly::harmonic(1, 0, 1));
  PolyhomSymbol comm = sym_sub(sym_compose(D, shift, 4), sym_compose(shift, D, 4));

  CHECK(comm.plus(0).is_zero());
  CHECK(comm.minus(0).is_zero());
  CHECK(TrigPoly::max_abs_diff(comm.plus(1), TrigPoly::harmonic(1, 0, 1)) < 1e-14);
  CHECK(TrigPoly::max_abs_diff(comm.minus(1), TrigPoly::harmonic(1, 0, 1).scaled(-1.0)) < 1e-14);

  // truncated-matrix oracle: interior entries of the symbol truncation match
  // the commutator of the operator truncations
  const int N = 12, Nb = 16;
  TruncatedOperator tc = truncate_op(comm, Nb);
  TruncatedOperator td = truncate_op(D, Nb);
  TruncatedOperator ts = truncate_op(shift, Nb);
  Mat mc = td.matrix * ts.matrix - ts.matrix * td.matrix;
  double err = 0.0;
  for (int m = -N; m <= N; ++m)
    for (int n = -N; n <= N; ++n) err = std::max(err, std::abs(tc.matrix(tc.row(m), tc.row(n)) - mc(td.row(m), td.row(n))));
  CHECK(err < 1e-12);
}

TEST_CASE("compose with zero yields zero") {
  std::mt19937_64 rng(5);
  PolyhomSymbol a = random_exact_symbol(rng, 0, 2, 1);
  PolyhomSymbol zero(0, 2, 0, kDeepWatermark);
  PolyhomSymbol c = sym_compose(a, zero, 3);
  CHECK(c.is_zero());
}

TEST_CASE("composition associativity on random symbols") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 12; ++trial) {
    const int k = trial % 2 ? 2 : 1;
    PolyhomSymbol a = random_exact_symbol(rng, 0, k, trial % 3 ? 1 : 0);
    PolyhomSymbol b = random_exact_symbol(rng, 0, k, 1);
    PolyhomSymbol c = random_exact_symbol(rng, 0, k, (trial + 1) % 3 ? 1 : 0);
    PolyhomSymbol ab_c = sym_compose(sym_compose(a, b, 5), c, 5);
    PolyhomSymbol a_bc = sym_compose(a, sym_compose(b, c, 5), 5);
    CHECK(tracked_diff(ab_c, a_bc) < 1e-10);
  }
}

TEST_CASE("leading symbol is multiplicative") {
  std::mt19937_64 rng(55);
  PolyhomSymbol a = random_exact_symbol(rng, 0, 2, 1);
  PolyhomSymbol b = random_exact_symbol(rng, 0, 2, 2);
  PolyhomSymbol c = sym_compose(a, b, 4);
  CHECK(TrigPoly::max_abs_diff(c.plus(0), a.plus(0) * b.plus(0)) < 1e-12);
  CHECK(TrigPoly::max_abs_diff(c.minus(0), a.minus(0) * b.minus(0)) < 1e-12);
}

TEST_CASE("oracle consistency: composed symbol matches product of truncations on interior modes") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 4; ++trial) {
    const int k = trial % 2 ? 2 : 1;
    PolyhomSymbol a = random_exact_symbol(rng, 0, k, 1);
    PolyhomSymbol b = random_exact_symbol(rng, 0, k, 1);
    const int J = 6;
    PolyhomSymbol c = sym_compose(a, b, J);
    REQUIRE(c.exact_tail());
    const int N = 10, Nb = N + J + 4;
    TruncatedOperator tc = truncate_op(c, Nb);
    TruncatedOperator ta = truncate_op(a, Nb);
    TruncatedOperator tb = truncate_op(b, Nb);
    Mat prod = ta.matrix * tb.matrix;
    double err = 0.0;
    for (int m = -N; m <= N; ++m)
      for (int n = -N; n <= N; ++n)
        for (int p = 0; p < k; ++p)
          for (int q = 0; q < k; ++q)
            err = std::max(err, std::abs(tc.matrix(tc.row(m, p), tc.row(n, q)) - prod(ta.row(m, p), ta.row(n, q))));
    CHECK(err < 1e-8);
  }
}

TEST_CASE("parametrix of the identity is the identity") {
  PolyhomSymbol id = identity_symbol(0, 1);
  PolyhomSymbol p = parametrix(id, 3);
  CHECK(TrigPoly::max_abs_diff(p.plus(0), TrigPoly::identity(1, 1)) < 1e-12);
  for (int j = 1; j <= p.stored_j(); ++j) CHECK(p.plus(j).is_zero());
}

TEST_CASE("parametrix of the shift symbol is the inverse shift, no corrections") {
  PolyhomSymbol q = winding_symbol(0, 1, 0);
  PolyhomSymbol p = parametrix(q, 3);
  CHECK(TrigPoly::max_abs_diff(p.plus(0), TrigPoly::harmonic(1, 0, -1)) < 1e-12);
  CHECK(TrigPoly::max_abs_diff(p.minus(0), TrigPoly::identity(1, 1)) < 1e-12);
  for (int j = 1; j <= p.stored_j(); ++j) {
    CHECK(p.plus(j).is_zero());
    CHECK(p.minus(j).is_zero());
  }
}

TEST_CASE("parametrix residual drops below 1e-10 for J = 4") {
  PolyhomSymbol q(0, 1, 0, kDeepWatermark);
  TrigPoly lead = TrigPoly::scalar_const(1, 1.0) + TrigPoly::cosine(1, 0, 0.5);
  q.set_component(0, lead, lead);
  q.set_component(1, TrigPoly::identity(1, 1), TrigPoly::identity(1, 1));

  PolyhomSymbol p = parametrix(q, 4);
  PolyhomSymbol residual = sym_sub(sym_compose(q, p, 4), identity_symbol(0, 1));
  CHECK(residual.order() == 0);
  double mass = 0.0;
  for (int j = 0; j <= residual.stored_j(); ++j) {
    if (residual.order() - j <= -(4 + 1)) break;  // contract: zero down to order -(J_out+1)
    mass += residual.plus(j).coeff_l1() + residual.minus(j).coeff_l1();
  }
  CHECK(mass < 1e-10);

  PolyhomSymbol residual2 = sym_sub(sym_compose(p, q, 4), identity_symbol(0, 1));
  double mass2 = 0.0;
  for (int j = 0; j <= residual2.stored_j(); ++j) {
    if (residual2.order() - j <= -(4 + 1)) break;
    mass2 += residual2.plus(j).coeff_l1() + residual2.minus(j).coeff_l1();
  }
  CHECK(mass2 < 1e-10);
}

TEST_CASE("parametrix rejects non-elliptic leading symbols") {
  PolyhomSymbol q(0, 1, 0, kDeepWatermark);
  TrigPoly lead = TrigPoly::cosine(1, 0, 1.0);  // vanishes at x = pi/2
  q.set_component(0, lead, lead);
  CHECK_THROWS_AS(parametrix(q, 2), std::domain_error);
}

TEST_CASE("log commutator of a constant vanishes") {
  PolyhomSymbol c = multiplication_symbol(TrigPoly::identity(1, 2).scaled(cplx(0.3, 0.1)));
  PolyhomSymbol lc = log_commutator(c, 5);
  CHECK(lc.is_zero());
  CHECK(lc.order() == -1);
}

TEST_CASE("log commutator of the shift matches ln(1+1/n), matrix oracle") {
  PolyhomSymbol shift = multiplication_symbol(TrigPoly::harmonic(1, 0, 1));
  PolyhomSymbol lc = log_commutator(shift, 8, 64);
  CHECK(lc.order() == -1);
  // homogeneous value at mode n is e^{ix} (sum_m (-1)^{m+1}/m sign^m n^{-m})
  for (int n : {16, 24, 48}) {
    const cplx hom = lc.homog_value(n).coeff(FreqVec{1})(0, 0);
    const double exact = std::log((n + 1.0) / n);
    CHECK(std::abs(hom - exact) < 1e-8);
    const cplx hom_m = lc.homog_value(-n).coeff(FreqVec{1})(0, 0);
    const double exact_m = std::log(static_cast<double>(n - 1) / n);  // ln max(|-n+1|,1) - ln |n|
    CHECK(std::abs(hom_m - exact_m) < 1e-8);
  }
  // exact corrections reproduce the matrix entries at low modes
  for (int n : {0, 1, -1, 3}) {
    const cplx entry = lc.exact_value(n).coeff(FreqVec{1})(0, 0);
    const double exact = std::log(std::max(std::abs(n + 1), 1)) - std::log(std::max(std::abs(n), 1));
    CHECK(std::abs(entry - exact) < 1e-13);
  }
}

TEST_CASE("log commutator is linear") {
  std::mt19937_64 rng(9);
  PolyhomSymbol a = random_exact_symbol(rng, 0, 1, 0);
  PolyhomSymbol b = random_exact_symbol(rng, 0, 1, 0);
  PolyhomSymbol lhs = log_commutator(sym_add(a, b), 4);
  PolyhomSymbol rhs = sym_add(log_commutator(a, 4), log_commutator(b, 4));
  CHECK(tracked_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("diagonal symbol values") {
  PolyhomSymbol shift = multiplication_symbol(TrigPoly::harmonic(1, 0, 1));
  for (int n : {-3, 0, 2, 7}) CHECK(diag_symbol_value(shift, n).is_zero());

  PolyhomSymbol D = d_spec_symbol(0, 1);
  CHECK(std::abs(diag_symbol_value(D, 5).coeff(FreqVec{})(0, 0) - 5.0) < 1e-14);
  CHECK(std::abs(diag_symbol_value(D, 0).coeff(FreqVec{})(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(diag_symbol_value(D, -4).coeff(FreqVec{})(0, 0) - 4.0) < 1e-14);

  PolyhomSymbol a = d_power_symbol(0, 1, -1);
  std::map<int, TrigPoly> corr;
  corr[1] = TrigPoly::scalar_const(1, 0.25);
  a.set_exact(TrigPoly::identity(1, 1), std::move(corr), 1, true);
  CHECK(std::abs(diag_symbol_value(a, 1).coeff(FreqVec{})(0, 0) - 1.25) < 1e-14);
}

TEST_CASE("untracked mode requests fail") {
  PolyhomSymbol a(0, 1, 0, -3);
  a.set_component(0, TrigPoly::identity(1, 1), TrigPoly::identity(1, 1));
  CHECK_THROWS_AS(diag_symbol_value(a, 3), std::domain_error);
}

TEST_CASE("compose reports the achievable watermark on exhaustion") {
  PolyhomSymbol a(0, 1, 0, -2);  // only two components' worth of information
  a.set_component(0, TrigPoly::identity(1, 1), TrigPoly::identity(1, 1));
  PolyhomSymbol b = d_spec_symbol(0, 1);
  try {
    sym_compose(a, b, 8);
    FAIL("expected WatermarkError");
  } catch (const WatermarkError& e) {
    CHECK(e.achievable_watermark == -1);  // w_a + ord(b) = -2 + 1
  }
}
