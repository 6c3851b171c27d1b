#include "pdolab/connecting.hpp"

#include "pdolab/constants.hpp"
#include "pdolab/zeta.hpp"

namespace pdolab {

PolyhomSymbol quantize_symbol(const TrigPoly& plus, const TrigPoly& minus, const QuantizeStyle& style) {
  if (plus.rank() != minus.rank() || plus.matrix_size() != minus.matrix_size())
    throw std::invalid_argument("quantize_symbol: branch shape mismatch");
  TrigPoly zm(plus.rank(), plus.matrix_size());
  switch (style.zero_mode) {
    case QuantizeStyle::kBranchAverage: zm = (plus + minus).scaled(0.5); break;
    case QuantizeStyle::kPlusBranch: zm = plus; break;
    case QuantizeStyle::kIdentity: zm = TrigPoly::identity(plus.rank(), plus.matrix_size()); break;
  }
  PolyhomSymbol s(plus.rank() - 1, plus.matrix_size(), 0, kDeepWatermark);
  s.set_component(0, plus, minus);
  std::map<int, TrigPoly> corr = style.corrections;
  int radius = 0;
  for (const auto& [n, c] : corr) {
    (void)c;
    radius = std::max(radius, std::abs(n));
  }
  s.set_exact(std::move(zm), std::move(corr), radius, true);
  return s;
}

VElement quantize(FedosovCtx ctx, const TrigPoly& plus, const TrigPoly& minus, const QuantizeStyle& style) {
  return VElement::from_symbol(std::move(ctx), quantize_symbol(plus, minus, style));
}

UnitalVElement lift_invertible(FedosovCtx ctx, const PolyhomSymbol& g) {
  UnitalVElement q = UnitalVElement::one(ctx);
  q.body = VElement::from_symbol(ctx, sym_sub(g, identity_symbol(g.base_rank(), g.matrix_size())));
  return q;
}

UnitalVElement fedosov_inverse(const UnitalVElement& q, int j) {
  const auto& ctx = q.body.ctx();
  const int base_rank = ctx->connection.base_rank();
  const int k = ctx->k;
  // full degree-0 symbol of Q
  PolyhomSymbol q_sym = sym_add(sym_scale(identity_symbol(base_rank, k), q.unit), q.body.w11().comp(0u));
  PolyhomSymbol p_sym = parametrix(q_sym, j);

  UnitalVElement p = UnitalVElement::one(ctx);
  p.body = VElement::from_symbol(ctx, sym_sub(p_sym, identity_symbol(base_rank, k)));

  UnitalVElement dq = v_differential(q);
  UnitalVElement dp = v_differential(p);
  UnitalVElement out = p;
  UnitalVElement tail = p;
  for (int n = 1; n <= base_rank / 2; ++n) {
    tail = v_product(tail, v_product(dq, dp));
    out = out + tail;
  }
  return out;
}

cplx residue_over_cycle(const FormSymbol& x, const Cycle& c) {
  if (c.kind == Cycle::kPoint) {
    if (static_cast<int>(c.point.size()) != x.base_rank()) throw std::invalid_argument("residue_over_cycle: point rank mismatch");
    return trig_scalar(wodzicki_residue(x.comp(0u).at_base_point(c.point)));
  }
  if (x.base_rank() != 2) throw std::invalid_argument("residue_over_cycle: [T^2] needs a rank-2 base");
  TrigPoly r = wodzicki_residue(x.comp(0b11u));
  return kTorus2Volume * r.coeff(FreqVec(2, 0))(0, 0);
}

cplx pairing_normalization(const Cycle& c) {
  if (c.kind == Cycle::kPoint) return cplx(kKappa, 0.0);
  return kKappa * kPairingTorus2Scale;
}

namespace {

// word alpha = sigma_0 d sigma_1 ... d sigma_{2n} (or without sigma_0)
VElement word_element(const FedosovCtx& ctx, const std::vector<PolyhomSymbol>& sigmas, bool with_sigma0, std::size_t upto) {
  std::size_t i = 0;
  VElement acc;
  if (with_sigma0) {
    acc = VElement::from_symbol(ctx, sigmas[0]);
    i = 1;
  } else {
    acc = v_differential(VElement::from_symbol(ctx, sigmas[0]));
    i = 1;
    if (upto == 1) return acc;
    // fall through multiplying the remaining differentials
  }
  for (; i < upto; ++i) acc = v_product(acc, v_differential(VElement::from_symbol(ctx, sigmas[i])));
  return acc;
}

double falling_ratio(int n) {
  // n! / (2n)!
  double v = 1.0;
  for (int t = n + 1; t <= 2 * n; ++t) v /= static_cast<double>(t);
  return v;
}

}  // namespace

cplx boundary_cocycle_formula(FedosovCtx ctx, const SigmaWord& word, const Cycle& c) {
  const auto& sig = word.sigmas;
  if (sig.empty()) throw std::invalid_argument("boundary_cocycle_formula: empty word");
  const int len = static_cast<int>(sig.size());
  const int n = word.with_sigma0 ? (len - 2) / 2 : (len - 1) / 2;
  if ((word.with_sigma0 && len != 2 * n + 2) || (!word.with_sigma0 && len != 2 * n + 1))
    throw std::invalid_argument("boundary_cocycle_formula: word length does not match sigma_0 d sigma_1 ... d sigma_{2n} d sigma_{2n+1}");
  const int j = ctx->j;
  const PolyhomSymbol& last = sig.back();

  // (n!/(2n)!) res_C (word)_11 [ln D, sigma_{2n+1}]
  VElement alpha = word_element(ctx, sig, word.with_sigma0, sig.size() - 1);
  FormSymbol lc = FormSymbol::from_symbol(log_commutator(last, j));
  cplx value = falling_ratio(n) * residue_over_cycle(wedge(alpha.w11(), lc, j, ctx->copts), c);

  if (word.with_sigma0) {
    // ((n+1)!/(2n+2)!) res_C (sigma_0 d...d sigma_{2n+1} - sigma_{2n+1} d sigma_0 ... d sigma_{2n})_11 dlnD
    VElement left = v_product(alpha, v_differential(VElement::from_symbol(ctx, last)));
    std::vector<PolyhomSymbol> rot;
    rot.push_back(last);
    for (int i = 0; i + 1 < len; ++i) rot.push_back(sig[i]);
    VElement right = word_element(ctx, rot, true, rot.size());
    FormSymbol dlnd = delta_log_d(ctx->connection, ctx->k, j);
    if (!dlnd.is_zero()) {
      FormSymbol diff = left.w11() - right.w11();
      value += falling_ratio(n + 1) * residue_over_cycle(wedge(diff, dlnd, j, ctx->copts), c);
    }
  }
  return value;
}

cplx boundary_cocycle_direct(FedosovCtx ctx, const SigmaWord& word, const Cycle& c) {
  const auto& sig = word.sigmas;
  if (sig.empty()) throw std::invalid_argument("boundary_cocycle_direct: empty word");
  VElement alpha = word_element(ctx, sig, word.with_sigma0, sig.size() - 1);
  VElement beta = VElement::from_symbol(ctx, sig.back());
  VElement comm = fedosov_product(alpha, beta) - fedosov_product(beta, alpha);
  return trace_tau_r(comm, c);
}

cplx boundary_pairing_direct(const UnitalVElement& a, const UnitalVElement& b, const Cycle& c) {
  UnitalVElement comm = fedosov_product(a, b) - fedosov_product(b, a);
  return trace_tau_r(comm, c);
}

cplx boundary_index_pairing(FedosovCtx ctx, const PolyhomSymbol& g, int j, const Cycle& c) {
  UnitalVElement q = lift_invertible(ctx, g);
  UnitalVElement w = fedosov_inverse(q, j);
  return pairing_normalization(c) * boundary_pairing_direct(w, q, c);
}

cplx chern_simons_pairing(FedosovCtx ctx, const PolyhomSymbol& g, int j, const Cycle& c) {
  const ConnectionSpec& conn = ctx->connection;
  const int k = g.matrix_size();
  if (k != ctx->k) throw std::invalid_argument("chern_simons_pairing: matrix size differs from the context");
  const ComposeOptions& o = ctx->copts;

  PolyhomSymbol p = parametrix(g, j);
  FormSymbol pf = FormSymbol::from_symbol(p);
  FormSymbol qf = FormSymbol::from_symbol(g);

  // superconnection difference P nabla_D^eps Q - nabla_D^eps = P delta(Q) + eps P [lnD, Q]
  EpsilonPair delta_sc;
  delta_sc.body = wedge(pf, delta_derivation(qf, conn, j, o), j, o);
  delta_sc.soul = wedge(pf, FormSymbol::from_symbol(log_commutator(g, j)), j, o);

  // t-integrated curvature of the interpolation
  FormSymbol theta = conn.curvature(k);
  FormSymbol fb = theta + delta_derivation(delta_sc.body, conn, j, o).scaled(0.5) + wedge(delta_sc.body, delta_sc.body, j, o).scaled(1.0 / 3.0);
  FormSymbol fs = delta_log_d(conn, k, j).scaled(-1.0) +
                  (form_log_commutator(delta_sc.body, j) - delta_derivation(delta_sc.soul, conn, j, o)).scaled(0.5) +
                  (wedge(delta_sc.soul, delta_sc.body, j, o) - wedge(delta_sc.body, delta_sc.soul, j, o)).scaled(1.0 / 3.0);

  FormSymbol cs = delta_sc.soul + wedge(delta_sc.soul, fb, j, o) - wedge(delta_sc.body, fs, j, o);
  return pairing_normalization(c) * residue_over_cycle(cs, c);
}

cplx dim2_index_pairing(FedosovCtx ctx, const PolyhomSymbol& g, int j) {
  const ConnectionSpec& conn = ctx->connection;
  const int k = g.matrix_size();
  const ComposeOptions& o = ctx->copts;

  PolyhomSymbol p = parametrix(g, j);
  FormSymbol pf = FormSymbol::from_symbol(p);
  FormSymbol qf = FormSymbol::from_symbol(g);
  FormSymbol dq = delta_derivation(qf, conn, j, o);
  FormSymbol dp = delta_derivation(pf, conn, j, o);
  FormSymbol lc = FormSymbol::from_symbol(log_commutator(g, j));
  FormSymbol dlnd = delta_log_d(conn, k, j);
  FormSymbol theta = conn.curvature(k);

  FormSymbol t1 = wedge(wedge(wedge(pf, dq, j, o), dp, j, o), lc, j, o);
  FormSymbol t2 = wedge(pf, wedge(dq, dlnd, j, o) - wedge(dlnd, dq, j, o), j, o);
  FormSymbol t3 = wedge(wedge(theta, pf, j, o) + wedge(pf, theta, j, o), lc, j, o);

  const Cycle c = Cycle::torus2();
  return pairing_normalization(c) * 0.5 * residue_over_cycle(t1 + t2 + t3, c);
}

cplx radul_index_pairing(FedosovCtx ctx, const PolyhomSymbol& g, int j, const std::vector<double>& base_point) {
  (void)ctx;
  PolyhomSymbol g0 = g.base_rank() > 0 ? g.at_base_point(base_point) : g;
  PolyhomSymbol p = parametrix(g0, j);
  return kKappa * radul_pairing(p, g0, j);
}

}  // namespace pdolab
