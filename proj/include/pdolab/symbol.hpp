#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pdolab/trig_poly.hpp"

// Classical (polyhomogeneous) pseudodifferential symbols on the circle
// fiber over a torus base, quantized Kohn-Nirenberg on the Fourier side:
//
//   Op(a) u(x) = sum_n a(., n) u_hat(n) e^{inx}.
//
// A symbol of order d carries branch pairs (c_j^+, c_j^-), j = 0..J, with
// full symbol  sum_j c_j^{sign xi}(b, x) |xi|^{d-j}  modulo O(|xi|^w) where
// w = watermark.  Components below the watermark are untracked and every
// operation refuses to report them.  A symbol may additionally be *exactly
// specified*: an explicit zero mode a(., 0), a finite correction table
// a(., n) - homog(n) for 1 <= |n| <= exact_radius, and optionally the claim
// (exact_tail) that the homogeneous expansion is the exact value beyond the
// table.  Exactly specified symbols are genuine operators, which is what the
// truncation oracles and zeta traces consume.

namespace pdolab {

inline constexpr int kDeepWatermark = -(1 << 20);

class WatermarkError : public std::runtime_error {
 public:
  WatermarkError(const std::string& what, int achievable) : std::runtime_error(what), achievable_watermark(achievable) {}
  int achievable_watermark;
};

struct BranchPair {
  TrigPoly plus;
  TrigPoly minus;
};

class PolyhomSymbol {
 public:
  PolyhomSymbol() = default;
  // zero symbol of the given order; watermark defaults to order - 1 (nothing tracked beyond construction)
  PolyhomSymbol(int base_rank, int k, int order, int watermark);

  int base_rank() const { return base_rank_; }
  int matrix_size() const { return k_; }
  int order() const { return order_; }
  int watermark() const { return watermark_; }
  int fiber_var() const { return base_rank_; }
  int rank() const { return base_rank_ + 1; }
  int stored_j() const { return static_cast<int>(comps_.size()) - 1; }

  // branch components; zero beyond the stored range
  const TrigPoly& plus(int j) const;
  const TrigPoly& minus(int j) const;
  void set_component(int j, TrigPoly plus, TrigPoly minus);

  bool exact_tail() const { return exact_tail_; }
  int exact_radius() const { return exact_radius_; }
  bool has_exact() const { return has_exact_; }
  const TrigPoly& zero_mode() const;
  const std::map<int, TrigPoly>& corrections() const { return corrections_; }
  // largest |n| carrying a stored correction
  int correction_surface() const;

  void set_exact(TrigPoly zero_mode, std::map<int, TrigPoly> corrections, int radius, bool tail);
  void clear_exact();

  // sum_j c_j^{sign n} |n|^{order-j}, n != 0
  TrigPoly homog_value(int n) const;
  bool is_exact_at(int n) const;
  // exact value of a(., n) as a trig poly in (base, x); throws if unavailable
  TrigPoly exact_value(int n) const;

  // max |freq_x| over homogeneous components
  int comp_bandwidth_x() const;
  // all stored nonzero components have homogeneity degree >= 0
  // (branchwise polynomial in xi, so Kohn-Nirenberg expansions terminate)
  bool branchwise_polynomial() const;

  PolyhomSymbol base_derivative(int var) const;
  PolyhomSymbol at_base_point(const std::vector<double>& b) const;  // partial-evaluate the base torus
  PolyhomSymbol scalar_extend(int k) const;
  double comp_l1() const;  // coefficient mass of tracked components

  bool is_zero() const;

 private:
  int base_rank_ = 0;
  int k_ = 1;
  int order_ = 0;
  int watermark_ = -1;
  std::vector<BranchPair> comps_;
  bool has_exact_ = false;
  bool exact_tail_ = false;
  int exact_radius_ = 0;
  TrigPoly zero_mode_;
  std::map<int, TrigPoly> corrections_;
};

struct ComposeOptions {
  // Largest stored correction radius.  Products consumed by traces need a
  // few dozen exact modes so the homogeneous continuation error stays below
  // the tolerance ledger; residue-only flows can run with 0.
  int correction_cap = 32;
};

// --- constructors -----------------------------------------------------------

// |xi|^m with D-convention zero mode 1 (eigenvalue of D^m on e_0); exact.
PolyhomSymbol d_power_symbol(int base_rank, int k, int m);
// the reference operator D: e_n -> max(|n|,1) e_n
inline PolyhomSymbol d_spec_symbol(int base_rank, int k) { return d_power_symbol(base_rank, k, 1); }
inline PolyhomSymbol identity_symbol(int base_rank, int k) { return d_power_symbol(base_rank, k, 0); }
// pointwise multiplication operator by f(b, x); exact, order 0
PolyhomSymbol multiplication_symbol(const TrigPoly& f);
// order-0 symbol with branch values e^{i w_plus x}, e^{i w_minus x} (k = 1);
// zero mode defaults to the branch average
PolyhomSymbol winding_symbol(int base_rank, int w_plus, int w_minus);
// single-component symbol of the given order; optionally exact with the
// declared zero mode and empty correction table
PolyhomSymbol branch_symbol(int order, const TrigPoly& plus, const TrigPoly& minus,
                            std::optional<TrigPoly> zero_mode = std::nullopt);

// --- arithmetic --------------------------------------------------------------

PolyhomSymbol sym_add(const PolyhomSymbol& a, const PolyhomSymbol& b);
PolyhomSymbol sym_sub(const PolyhomSymbol& a, const PolyhomSymbol& b);
PolyhomSymbol sym_scale(const PolyhomSymbol& a, cplx factor);
// pointwise products f(b,x) a and a f(b,x); order and watermark unchanged
PolyhomSymbol mul_left(const TrigPoly& f, const PolyhomSymbol& a);
PolyhomSymbol mul_right(const PolyhomSymbol& a, const TrigPoly& f);

// Kohn-Nirenberg product with J_out tracked components.
PolyhomSymbol sym_compose(const PolyhomSymbol& a, const PolyhomSymbol& b, int j_out, const ComposeOptions& opt = {});

// Neumann-series parametrix: p with q o p = 1 + O(|xi|^{-(j_out+1)}) and
// p o q likewise; exact completion declared (homogeneous expansion is the
// definition of Op(p) away from mode zero).
PolyhomSymbol parametrix(const PolyhomSymbol& q, int j_out);

// [ln D, a] via the alternating expansion
//   [D,a] D^{-1} - 1/2 [D,[D,a]] D^{-2} + 1/3 [D,[D,[D,a]]] D^{-3} - ...
// Classical of order ord(a) - 1; exact corrections from the matrix formula
// (ln max(|n+nu|,1) - ln max(|n|,1)) up to the given radius cap.
PolyhomSymbol log_commutator(const PolyhomSymbol& a, int j_out, int correction_cap = 64);

// x-Fourier zero coefficient of a(., n); base-variable trig poly (k x k)
TrigPoly diag_symbol_value(const PolyhomSymbol& a, int n);

// smallest singular value of both leading branches sampled on a dense grid
double leading_min_singular(const PolyhomSymbol& q, int points_per_var = 64);

}  // namespace pdolab
