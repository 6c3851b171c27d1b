#include "pdolab/zeta.hpp"

#include <cmath>

#include "pdolab/constants.hpp"
#include "pdolab/special_functions.hpp"

namespace pdolab {

namespace {

// x-average and matrix trace: the coefficient entering the mode sums
TrigPoly traced_average(const TrigPoly& c, int fiber_var) {
  return c.slice_var(fiber_var, 0).drop_var(fiber_var).matrix_trace();
}

}  // namespace

cplx trig_scalar(const TrigPoly& p) {
  if (p.rank() != 0 || p.matrix_size() != 1) throw std::invalid_argument("trig_scalar: not a rank-0 scalar");
  return p.coeff(FreqVec{})(0, 0);
}

cplx ZetaResult::finite_scalar() const { return trig_scalar(finite_part); }
cplx ZetaResult::residue_scalar() const { return trig_scalar(residue); }

TrigPoly wodzicki_residue(const PolyhomSymbol& a) {
  if (a.watermark() > -2)
    throw WatermarkError("wodzicki_residue: watermark " + std::to_string(a.watermark()) + " does not certify the -1 component",
                         a.watermark());
  const int jstar = a.order() + 1;
  TrigPoly out(a.base_rank(), 1);
  if (jstar < 0) return out;  // order below -1, no residue
  out += traced_average(a.plus(jstar), a.fiber_var());
  out += traced_average(a.minus(jstar), a.fiber_var());
  return out;
}

ZetaResult zeta_finite_part(const PolyhomSymbol& a) {
  if (!a.has_exact()) throw std::domain_error("zeta_finite_part: symbol is not exactly specified (missing zero mode)");
  // without an exact tail the homogeneous expansion stands in beyond the
  // correction radius; legitimate only when the untracked discrepancy decays
  // summably, i.e. watermark <= -2
  if (!a.exact_tail() && a.watermark() > -2)
    throw std::domain_error("zeta_finite_part: untracked components of order >= -1, finite part not determined");

  const int xv = a.fiber_var();
  const int R = a.exact_radius();
  ZetaResult res;
  res.finite_part = TrigPoly(a.base_rank(), 1);
  res.residue = TrigPoly(a.base_rank(), 1);
  res.convergent_tail = TrigPoly(a.base_rank(), 1);

  // explicitly known modes, verbatim at z = 0
  res.finite_part += traced_average(a.zero_mode(), xv);
  for (int n = 1; n <= R; ++n) {
    res.finite_part += traced_average(a.exact_value(n), xv);
    res.finite_part += traced_average(a.exact_value(-n), xv);
  }

  // homogeneous sums from R+1 on, branch-summed, continued in closed form
  for (int j = 0; j <= a.stored_j(); ++j) {
    TrigPoly coeff = traced_average(a.plus(j), xv) + traced_average(a.minus(j), xv);
    if (coeff.is_zero()) continue;
    const int s = j - a.order();
    double z_tail;
    bool pole = false;
    if (s == 1) {
      z_tail = kEulerGamma - harmonic_number(R);
      pole = true;
      res.residue += coeff;
    } else if (s <= 0) {
      double partial = 0.0;
      for (int n = 1; n <= R; ++n) partial += std::pow(static_cast<double>(n), static_cast<double>(-s));
      z_tail = zeta_nonpositive(-s) - partial;
    } else {
      double partial = 0.0;
      for (int n = 1; n <= R; ++n) partial += std::pow(static_cast<double>(n), static_cast<double>(-s));
      z_tail = zeta_positive(s) - partial;
      res.convergent_tail += coeff.scaled(z_tail);
    }
    res.finite_part += coeff.scaled(z_tail);
    ZetaBreakdownEntry e;
    e.degree = a.order() - j;
    e.coefficient = coeff.coeff(FreqVec(a.base_rank(), 0))(0, 0);
    e.contribution = e.coefficient * z_tail;
    e.pole = pole;
    res.breakdown.push_back(e);
  }
  return res;
}

cplx radul_pairing(const PolyhomSymbol& p, const PolyhomSymbol& q, int j) {
  PolyhomSymbol lc = log_commutator(q, j);
  PolyhomSymbol prod = sym_compose(p, lc, j);
  TrigPoly r = wodzicki_residue(prod);
  if (p.base_rank() != 0) throw std::invalid_argument("radul_pairing: point-fiber version expects base rank 0");
  return trig_scalar(r);
}

std::pair<cplx, cplx> trace_defect_identity(const PolyhomSymbol& a, const PolyhomSymbol& b, int j) {
  if (a.base_rank() != 0 || b.base_rank() != 0) throw std::invalid_argument("trace_defect_identity: expects base rank 0");
  PolyhomSymbol comm = sym_sub(sym_compose(a, b, j), sym_compose(b, a, j));
  const cplx lhs = zeta_finite_part(comm).finite_scalar();
  PolyhomSymbol prod = sym_compose(a, log_commutator(b, j), j);
  const cplx rhs = trig_scalar(wodzicki_residue(prod));
  return {lhs, rhs};
}

}  // namespace pdolab
