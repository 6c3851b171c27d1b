#pragma once

#include <memory>

#include "pdolab/forms.hpp"

// The v-extension of the form-valued symbol algebra: elements
// w11 + w12 v + v w21 + v w22 v with the relations v^2 = theta and
// w v w' = 0 for w, w' in M_0.  The even subspace with the Fedosov product
// a (.) b = ab - da db is the associative algebra M carrying the
// (renormalized) traces tau and tau_R of a base cycle.

namespace pdolab {

struct FedosovContext {
  ConnectionSpec connection;
  int k = 1;
  int j = 4;  // tracked depth for symbol compositions
  ComposeOptions copts;
  FormSymbol theta;

  static std::shared_ptr<const FedosovContext> make(ConnectionSpec conn, int k, int j, int correction_cap = 24);
};

using FedosovCtx = std::shared_ptr<const FedosovContext>;

class VElement {
 public:
  VElement() = default;
  explicit VElement(FedosovCtx ctx);
  VElement(FedosovCtx ctx, FormSymbol w11, FormSymbol w12, FormSymbol w21, FormSymbol w22);

  static VElement from_w11(FedosovCtx ctx, FormSymbol w11);
  static VElement from_symbol(FedosovCtx ctx, const PolyhomSymbol& s);  // degree-0 element

  const FedosovCtx& ctx() const { return ctx_; }
  const FormSymbol& w11() const { return w11_; }
  const FormSymbol& w12() const { return w12_; }
  const FormSymbol& w21() const { return w21_; }
  const FormSymbol& w22() const { return w22_; }

  bool is_zero() const;
  double comp_l1() const;
  bool is_even() const;  // total (form + v) degree even in every component
  bool is_odd() const;

  // pattern predicates of the filtered ideals
  bool in_m_pattern() const;  // components in M_0 (order <= degree)
  bool in_r_pattern() const;  // components in R_0 (order <= degree - 1)
  bool in_n_pattern() const;  // N: even, M_0 orders, w11 without degree-0 part

  VElement operator+(const VElement& rhs) const;
  VElement operator-(const VElement& rhs) const;
  VElement scaled(cplx f) const;

 private:
  void check_ctx(const VElement& rhs) const;
  friend VElement v_product(const VElement& a, const VElement& b);
  friend VElement v_differential(const VElement& a);

  FedosovCtx ctx_;
  FormSymbol w11_, w12_, w21_, w22_;
};

// multiplier action of v itself: v * a and a * v
VElement v_times(const VElement& a);
VElement times_v(const VElement& a);

// ordinary product in M_0[v] with the two rewriting relations applied
VElement v_product(const VElement& a, const VElement& b);
// d(w) = delta(w) + v w + (-1)^n w v on M_0, dv = 0; d^2 = 0
VElement v_differential(const VElement& a);
// Fedosov product a (.) b = ab - da db on even elements
VElement fedosov_product(const VElement& a, const VElement& b);

// tau over a cycle: (m!/(2m)!) int_C Tr(w11 - w22 theta); requires every
// contributing component trace-class on the fiber (sharp order < -1)
cplx trace_tau(const VElement& a, const Cycle& c);
// zeta renormalization: the same with Pf_{z=0} Tr(. D^{-z})
cplx trace_tau_r(const VElement& a, const Cycle& c);

// Unitalization with an explicit scalar multiple of v: u + w v + body.
// The external unit is d-closed, unlike the identity symbol inside M_0.
struct UnitalVElement {
  cplx unit{0.0, 0.0};
  cplx v_coef{0.0, 0.0};
  VElement body;

  static UnitalVElement one(FedosovCtx ctx);
  static UnitalVElement v(FedosovCtx ctx);
  static UnitalVElement from_body(VElement b);

  bool is_zero() const;
  UnitalVElement operator+(const UnitalVElement& rhs) const;
  UnitalVElement operator-(const UnitalVElement& rhs) const;
  UnitalVElement scaled(cplx f) const;
};

UnitalVElement v_product(const UnitalVElement& a, const UnitalVElement& b);
UnitalVElement v_differential(const UnitalVElement& a);
UnitalVElement fedosov_product(const UnitalVElement& a, const UnitalVElement& b);
// tau_R of the body; the unital and v parts have vanishing trace over every cycle
cplx trace_tau_r(const UnitalVElement& a, const Cycle& c);

}  // namespace pdolab
