#pragma once

#include "pdolab/fedosov.hpp"

// The connecting morphism realized as computable pairings: the quantization
// splitting sigma, Fedosov inverses of lifted invertibles, the boundary
// cocycle tau_R d on sigma-word chains (residue formulas vs the direct
// Fedosov-commutator path), and the Chern-Simons form of the superconnection
// nabla + eps ln D whose cycle residues produce the index pairings.

namespace pdolab {

// epsilon-graded pair body + eps * soul with eps^2 = 0; eps is odd, so the
// product picks up the body's degree sign
struct EpsilonPair {
  FormSymbol body;
  FormSymbol soul;
};

struct QuantizeStyle {
  enum ZeroMode { kBranchAverage, kPlusBranch, kIdentity } zero_mode = kBranchAverage;
  std::map<int, TrigPoly> corrections;  // optional finite low-mode table added to the lift
};

// linear splitting sigma: leading pair -> degree-0 element of M
PolyhomSymbol quantize_symbol(const TrigPoly& plus, const TrigPoly& minus, const QuantizeStyle& style = {});
VElement quantize(FedosovCtx ctx, const TrigPoly& plus, const TrigPoly& minus, const QuantizeStyle& style = {});

// Fedosov inverse of Q = unit + sigma(g)-pattern: the terminating series
// sum_{n <= [dim B/2]} P (dQ dP)^n built on the parametrix P
UnitalVElement fedosov_inverse(const UnitalVElement& q, int j);

// lift a full invertible symbol g into the unital v-algebra: 1 + (g - 1)
UnitalVElement lift_invertible(FedosovCtx ctx, const PolyhomSymbol& g);

// fiberwise-residue functional integrated over the cycle, plain de Rham
cplx residue_over_cycle(const FormSymbol& x, const Cycle& c);

// sigma-word chains sigma_0 d sigma_1 ... d sigma_{2n} \bf{d} sigma_{2n+1}
// (with_sigma0) or d sigma_1 ... d sigma_{2n} \bf{d} sigma_{2n+1}
struct SigmaWord {
  std::vector<PolyhomSymbol> sigmas;
  bool with_sigma0 = true;
};

// residue formulas of the boundary of the renormalized trace
cplx boundary_cocycle_formula(FedosovCtx ctx, const SigmaWord& word, const Cycle& c);
// direct path: tau_R of the Fedosov commutator of the same chain
cplx boundary_cocycle_direct(FedosovCtx ctx, const SigmaWord& word, const Cycle& c);
// generic pair path tau_R(a (.) b - b (.) a)
cplx boundary_pairing_direct(const UnitalVElement& a, const UnitalVElement& b, const Cycle& c);

// K-theory normalization of a cycle pairing (kappa at a point, the frozen
// Chern normalization over [T^2])
cplx pairing_normalization(const Cycle& c);

// index pairing via the boundary cocycle on the Q^{-1} \bf{d} Q chain
cplx boundary_index_pairing(FedosovCtx ctx, const PolyhomSymbol& g, int j, const Cycle& c);

// index pairing via the Chern-Simons form cs(nabla_D^eps, P nabla_D^eps Q)
cplx chern_simons_pairing(FedosovCtx ctx, const PolyhomSymbol& g, int j, const Cycle& c);

// the expanded dim-2 residue formula, implemented independently of the
// Chern-Simons path:
//   1/2 res_C( P dQ dP [lnD,Q] + P(dQ dlnD - dlnD dQ) + (theta P + P theta)[lnD,Q] )
cplx dim2_index_pairing(FedosovCtx ctx, const PolyhomSymbol& g, int j);

// Radul path at a point cycle: res(p [ln D, g]) at the base point
cplx radul_index_pairing(FedosovCtx ctx, const PolyhomSymbol& g, int j, const std::vector<double>& base_point);

}  // namespace pdolab
