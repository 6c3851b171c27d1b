#pragma once

#include <utility>
#include <vector>

#include "pdolab/symbol.hpp"

// Operator traces of exactly specified symbols through the zeta function
// Tr(Op(a) D^{-z}) = sum_n tr a(., n) max(|n|,1)^{-z}: finite part and
// residue at z = 0 in closed form, plus the Wodzicki residue and the Radul
// cocycle built from it.  Everything returns base-variable trig polys; rank
// zero collapses to a number via ZetaResult::*_scalar / trig_scalar.

namespace pdolab {

struct ZetaBreakdownEntry {
  int degree;         // homogeneity degree d - j
  cplx coefficient;   // branch-summed, x-averaged, matrix-traced coefficient (freq-0 part)
  cplx contribution;  // its share of the finite part (freq-0 part)
  bool pole;          // degree -1, contributes the residue
};

struct ZetaResult {
  TrigPoly finite_part;      // scalar trig poly over the base torus
  TrigPoly residue;          // only the degree -1 components contribute
  TrigPoly convergent_tail;  // share of the finite part from degrees <= -2
  std::vector<ZetaBreakdownEntry> breakdown;

  cplx finite_scalar() const;
  cplx residue_scalar() const;
};

cplx trig_scalar(const TrigPoly& p);  // value of a rank-0 scalar poly

// (1/2pi) \oint tr(c^+_{-1} + c^-_{-1}) dx == Res_{z=0} Tr(Op(a) D^{-z});
// requires the -1 component to be tracked (watermark <= -2)
TrigPoly wodzicki_residue(const PolyhomSymbol& a);

// finite part of Tr(Op(a) D^{-z}) at z = 0; requires an exactly specified
// symbol (zero mode, corrections, exact tail)
ZetaResult zeta_finite_part(const PolyhomSymbol& a);

// res(p o [ln D, q]); bilinear, the Radul cocycle
cplx radul_pairing(const PolyhomSymbol& p, const PolyhomSymbol& q, int j);

// lhs = Pf Tr([a,b] D^{-z}), rhs = Res Tr(a [ln D, b] D^{-z});
// the trace-defect identity asserts lhs == rhs
std::pair<cplx, cplx> trace_defect_identity(const PolyhomSymbol& a, const PolyhomSymbol& b, int j);

}  // namespace pdolab
