#pragma once

#include <map>

#include "pdolab/symbol.hpp"

// Differential forms on the base torus T^b (b = 0, 1, 2) with
// pseudodifferential-symbol coefficients: the graded algebra Omega(B, CL).
// Components are indexed by antisymmetric multi-indices as bitmasks over the
// base directions; products compose coefficients with graded signs.

namespace pdolab {

struct Cycle {
  enum Kind { kPoint, kTorus2 } kind = kPoint;
  std::vector<double> point;  // base point for kPoint

  static Cycle at_point(std::vector<double> b) { return Cycle{kPoint, std::move(b)}; }
  static Cycle torus2() { return Cycle{kTorus2, {}}; }
  int dim() const { return kind == kTorus2 ? 2 : 0; }
};

class FormSymbol {
 public:
  FormSymbol() = default;
  FormSymbol(int base_rank, int k) : base_rank_(base_rank), k_(k) {}

  static FormSymbol from_symbol(const PolyhomSymbol& s) {
    FormSymbol f(s.base_rank(), s.matrix_size());
    f.set_comp(0u, s);
    return f;
  }

  int base_rank() const { return base_rank_; }
  int matrix_size() const { return k_; }
  const std::map<unsigned, PolyhomSymbol>& comps() const { return comps_; }

  bool has_comp(unsigned mask) const { return comps_.count(mask) != 0; }
  const PolyhomSymbol& comp(unsigned mask) const;
  void set_comp(unsigned mask, PolyhomSymbol s);
  void add_comp(unsigned mask, const PolyhomSymbol& s);

  bool is_zero() const;
  double comp_l1() const;
  // single form degree if homogeneous, -1 otherwise
  int pure_degree() const;

  FormSymbol operator+(const FormSymbol& rhs) const;
  FormSymbol operator-(const FormSymbol& rhs) const;
  FormSymbol scaled(cplx factor) const;
  // componentwise (-1)^degree, the grading sign
  FormSymbol degree_sign() const;

  // membership predicates of the filtered algebras: order <= degree + shift
  // on every component (M_0: shift 0; R_0: shift -1)
  bool orders_within(int shift) const;

 private:
  int base_rank_ = 0;
  int k_ = 1;
  std::map<unsigned, PolyhomSymbol> comps_;
};

// wedge product: symbol composition on coefficients, graded signs from the
// multi-index merge
FormSymbol wedge(const FormSymbol& x, const FormSymbol& y, int j, const ComposeOptions& opt = {});

// base exterior derivative; d_B^2 = 0 exactly
FormSymbol d_base(const FormSymbol& x);

// [ln D, .] applied to every coefficient
FormSymbol form_log_commutator(const FormSymbol& x, int j);

// plain de Rham integration over a cycle: the matching-degree component,
// evaluated at the point or averaged against the fundamental class of T^2
// ((2pi)^2 times the mean coefficient); returns a base-rank-0 symbol
PolyhomSymbol integrate_over_cycle(const FormSymbol& x, const Cycle& c);

// A horizontal distribution on the trivial fibration T^b x S^1: a base
// 1-form with vertical-field coefficients A_i(b, x) d/dx, quantized as the
// order-one symbols A_i (i xi).  Curvature is computed on construction.
class ConnectionSpec {
 public:
  ConnectionSpec(int base_rank, std::vector<TrigPoly> coefficients);  // scalar trig polys in (b, x)
  static ConnectionSpec flat(int base_rank);

  int base_rank() const { return base_rank_; }
  const std::vector<TrigPoly>& coefficients() const { return a_; }
  bool is_flat() const;

  // the connection 1-form and curvature 2-form acting on k x k symbols
  FormSymbol one_form(int k) const;
  FormSymbol curvature(int k) const;

 private:
  int base_rank_ = 0;
  std::vector<TrigPoly> a_;     // scalar coefficients A_i(b, x)
  std::vector<TrigPoly> theta_; // curvature coefficient(s), vertical fields
};

// quantize a vertical field g(b,x) d/dx into the order-one symbol g (i xi)
PolyhomSymbol vertical_field_symbol(const TrigPoly& g, int k);

// delta = [nabla, .] = d_B + [A, .] (graded); raises form degree by one
FormSymbol delta_derivation(const FormSymbol& x, const ConnectionSpec& a, int j, const ComposeOptions& opt = {});

// delta ln D via delta(D) D^{-1} - 1/2 [D, delta(D)] D^{-2} + ...
FormSymbol delta_log_d(const ConnectionSpec& a, int k, int j);

}  // namespace pdolab
