#include "pdolab/fedosov.hpp"

#include <bit>

#include "pdolab/constants.hpp"
#include "pdolab/zeta.hpp"

namespace pdolab {

std::shared_ptr<const FedosovContext> FedosovContext::make(ConnectionSpec conn, int k, int j, int correction_cap) {
  ComposeOptions copts;
  copts.correction_cap = correction_cap;
  auto ctx = std::make_shared<FedosovContext>(FedosovContext{conn, k, j, copts, conn.curvature(k)});
  return ctx;
}

VElement::VElement(FedosovCtx ctx)
    : ctx_(std::move(ctx)),
      w11_(ctx_->connection.base_rank(), ctx_->k),
      w12_(ctx_->connection.base_rank(), ctx_->k),
      w21_(ctx_->connection.base_rank(), ctx_->k),
      w22_(ctx_->connection.base_rank(), ctx_->k) {}

VElement::VElement(FedosovCtx ctx, FormSymbol w11, FormSymbol w12, FormSymbol w21, FormSymbol w22)
    : ctx_(std::move(ctx)), w11_(std::move(w11)), w12_(std::move(w12)), w21_(std::move(w21)), w22_(std::move(w22)) {}

VElement VElement::from_w11(FedosovCtx ctx, FormSymbol w11) {
  VElement e(ctx);
  e.w11_ = std::move(w11);
  return e;
}

VElement VElement::from_symbol(FedosovCtx ctx, const PolyhomSymbol& s) { return from_w11(std::move(ctx), FormSymbol::from_symbol(s)); }

bool VElement::is_zero() const { return w11_.is_zero() && w12_.is_zero() && w21_.is_zero() && w22_.is_zero(); }

double VElement::comp_l1() const { return w11_.comp_l1() + w12_.comp_l1() + w21_.comp_l1() + w22_.comp_l1(); }

namespace {
bool degrees_have_parity(const FormSymbol& f, int parity) {
  for (const auto& [mask, s] : f.comps()) {
    if (s.is_zero()) continue;
    if (std::popcount(mask) % 2 != parity) return false;
  }
  return true;
}
}  // namespace

bool VElement::is_even() const {
  return degrees_have_parity(w11_, 0) && degrees_have_parity(w12_, 1) && degrees_have_parity(w21_, 1) && degrees_have_parity(w22_, 0);
}

bool VElement::is_odd() const {
  return degrees_have_parity(w11_, 1) && degrees_have_parity(w12_, 0) && degrees_have_parity(w21_, 0) && degrees_have_parity(w22_, 1);
}

bool VElement::in_m_pattern() const {
  return is_even() && w11_.orders_within(0) && w12_.orders_within(0) && w21_.orders_within(0) && w22_.orders_within(0);
}

bool VElement::in_r_pattern() const {
  return is_even() && w11_.orders_within(-1) && w12_.orders_within(-1) && w21_.orders_within(-1) && w22_.orders_within(-1);
}

bool VElement::in_n_pattern() const {
  if (!in_m_pattern()) return false;
  return !w11_.has_comp(0u) || w11_.comp(0u).is_zero();
}

void VElement::check_ctx(const VElement& rhs) const {
  if (ctx_ != rhs.ctx_) throw std::invalid_argument("VElement: mixing elements over different connections (theta mismatch)");
}

VElement VElement::operator+(const VElement& rhs) const {
  check_ctx(rhs);
  return VElement(ctx_, w11_ + rhs.w11_, w12_ + rhs.w12_, w21_ + rhs.w21_, w22_ + rhs.w22_);
}

VElement VElement::operator-(const VElement& rhs) const {
  check_ctx(rhs);
  return VElement(ctx_, w11_ - rhs.w11_, w12_ - rhs.w12_, w21_ - rhs.w21_, w22_ - rhs.w22_);
}

VElement VElement::scaled(cplx f) const { return VElement(ctx_, w11_.scaled(f), w12_.scaled(f), w21_.scaled(f), w22_.scaled(f)); }

VElement v_times(const VElement& a) {
  // v (a11 + a12 v + v a21 + v a22 v) = v a11 + v a12 v + theta a21 + theta a22 v
  const auto& th = a.ctx()->theta;
  const int j = a.ctx()->j;
  const auto& o = a.ctx()->copts;
  return VElement(a.ctx(), wedge(th, a.w21(), j, o), wedge(th, a.w22(), j, o), a.w11(), a.w12());
}

VElement times_v(const VElement& a) {
  // (a11 + a12 v + v a21 + v a22 v) v = a11 v + a12 theta + v a21 v + v a22 theta
  const auto& th = a.ctx()->theta;
  const int j = a.ctx()->j;
  const auto& o = a.ctx()->copts;
  return VElement(a.ctx(), wedge(a.w12(), th, j, o), a.w11(), wedge(a.w22(), th, j, o), a.w21());
}

VElement v_product(const VElement& a, const VElement& b) {
  if (a.ctx() != b.ctx()) throw std::invalid_argument("VElement: mixing elements over different connections (theta mismatch)");
  const auto& th = a.ctx()->theta;
  const int j = a.ctx()->j;
  const auto& o = a.ctx()->copts;
  auto mul = [&](const FormSymbol& x, const FormSymbol& y) { return wedge(x, y, j, o); };
  auto mul3 = [&](const FormSymbol& x, const FormSymbol& y) { return wedge(wedge(x, th, j, o), y, j, o); };
  FormSymbol c11 = mul(a.w11(), b.w11()) + mul3(a.w12(), b.w21());
  FormSymbol c12 = mul(a.w11(), b.w12()) + mul3(a.w12(), b.w22());
  FormSymbol c21 = mul(a.w21(), b.w11()) + mul3(a.w22(), b.w21());
  FormSymbol c22 = mul(a.w21(), b.w12()) + mul3(a.w22(), b.w22());
  return VElement(a.ctx(), std::move(c11), std::move(c12), std::move(c21), std::move(c22));
}

VElement v_differential(const VElement& a) {
  const auto& ctx = a.ctx();
  const auto& th = ctx->theta;
  const int j = ctx->j;
  const auto& o = ctx->copts;
  auto delta = [&](const FormSymbol& f) { return delta_derivation(f, ctx->connection, j, o); };
  // d(w11): delta w11 into 11, w11 into 21, (-1)^n w11 into 12
  // d(w12 v): delta w12 into 12, w12 into 22, (-1)^{n12} w12 theta into 11
  // d(v w21): -delta w21 into 21, -theta w21 into 11, -(-1)^{n21} w21 into 22
  // d(v w22 v): -delta w22 into 22, -theta w22 into 12, -(-1)^{n22} w22 theta into 21
  FormSymbol c11 = delta(a.w11()) + wedge(a.w12().degree_sign(), th, j, o) - wedge(th, a.w21(), j, o);
  FormSymbol c12 = a.w11().degree_sign() + delta(a.w12()) - wedge(th, a.w22(), j, o);
  FormSymbol c21 = a.w11() - delta(a.w21()) - wedge(a.w22().degree_sign(), th, j, o);
  FormSymbol c22 = a.w12() - a.w21().degree_sign() - delta(a.w22());
  return VElement(ctx, std::move(c11), std::move(c12), std::move(c21), std::move(c22));
}

VElement fedosov_product(const VElement& a, const VElement& b) {
  if (!a.is_even() || !b.is_even()) throw std::invalid_argument("fedosov_product: parity violation, factors must be even");
  return v_product(a, b) - v_product(v_differential(a), v_differential(b));
}

namespace {

// sharp order of the contributing component: skips structurally zero leading terms
bool trace_class(const PolyhomSymbol& s) {
  int lead = 0;
  while (lead <= s.stored_j() && s.plus(lead).is_zero() && s.minus(lead).is_zero()) ++lead;
  if (lead > s.stored_j()) return true;  // no homogeneous part at all
  return s.order() - lead <= -2;
}

cplx trace_over_cycle(const FormSymbol& integrand, const Cycle& c, bool require_trace_class) {
  const double factor = c.kind == Cycle::kTorus2 ? 0.5 : 1.0;  // m!/(2m)!
  PolyhomSymbol top;
  if (c.kind == Cycle::kPoint) {
    top = integrand.comp(0u).at_base_point(c.point);
  } else {
    top = integrand.comp(0b11u);
  }
  if (require_trace_class && !trace_class(top))
    throw std::domain_error("trace_tau: contributing component has order >= -1, not trace-class on the fiber");
  ZetaResult z = zeta_finite_part(top);
  if (c.kind == Cycle::kPoint) return factor * z.finite_scalar();
  // integrate the 2-form coefficient of the fiberwise trace over [T^2]
  const cplx mean = z.finite_part.coeff(FreqVec(2, 0))(0, 0);
  return factor * kTorus2Volume * mean;
}

FormSymbol tau_integrand(const VElement& a) {
  const int j = a.ctx()->j;
  return a.w11() - wedge(a.w22(), a.ctx()->theta, j, a.ctx()->copts);
}

}  // namespace

cplx trace_tau(const VElement& a, const Cycle& c) { return trace_over_cycle(tau_integrand(a), c, true); }

cplx trace_tau_r(const VElement& a, const Cycle& c) { return trace_over_cycle(tau_integrand(a), c, false); }

UnitalVElement UnitalVElement::one(FedosovCtx ctx) { return UnitalVElement{cplx(1.0, 0.0), cplx(0.0, 0.0), VElement(std::move(ctx))}; }

UnitalVElement UnitalVElement::v(FedosovCtx ctx) { return UnitalVElement{cplx(0.0, 0.0), cplx(1.0, 0.0), VElement(std::move(ctx))}; }

UnitalVElement UnitalVElement::from_body(VElement b) { return UnitalVElement{cplx(0.0, 0.0), cplx(0.0, 0.0), std::move(b)}; }

bool UnitalVElement::is_zero() const { return unit == cplx(0.0, 0.0) && v_coef == cplx(0.0, 0.0) && body.is_zero(); }

UnitalVElement UnitalVElement::operator+(const UnitalVElement& rhs) const {
  return UnitalVElement{unit + rhs.unit, v_coef + rhs.v_coef, body + rhs.body};
}

UnitalVElement UnitalVElement::operator-(const UnitalVElement& rhs) const {
  return UnitalVElement{unit - rhs.unit, v_coef - rhs.v_coef, body - rhs.body};
}

UnitalVElement UnitalVElement::scaled(cplx f) const { return UnitalVElement{unit * f, v_coef * f, body.scaled(f)}; }

UnitalVElement v_product(const UnitalVElement& a, const UnitalVElement& b) {
  const auto& ctx = a.body.ctx();
  UnitalVElement out;
  out.unit = a.unit * b.unit;
  out.v_coef = a.unit * b.v_coef + a.v_coef * b.unit;
  VElement cross = v_product(a.body, b.body);
  cross = cross + b.body.scaled(a.unit) + a.body.scaled(b.unit);
  if (a.v_coef != cplx(0.0, 0.0)) cross = cross + v_times(b.body).scaled(a.v_coef);
  if (b.v_coef != cplx(0.0, 0.0)) cross = cross + times_v(a.body).scaled(b.v_coef);
  const cplx vv = a.v_coef * b.v_coef;
  if (vv != cplx(0.0, 0.0)) cross = cross + VElement::from_w11(ctx, ctx->theta.scaled(vv));
  out.body = cross;
  return out;
}

UnitalVElement v_differential(const UnitalVElement& a) {
  // the external unit and v are d-closed
  UnitalVElement out;
  out.unit = cplx(0.0, 0.0);
  out.v_coef = cplx(0.0, 0.0);
  out.body = v_differential(a.body);
  return out;
}

UnitalVElement fedosov_product(const UnitalVElement& a, const UnitalVElement& b) {
  UnitalVElement da = v_differential(a);
  UnitalVElement db = v_differential(b);
  return v_product(a, b) - v_product(da, db);
}

cplx trace_tau_r(const UnitalVElement& a, const Cycle& c) {
  // Pf Tr(1 D^{-z}) = 1 + 2 zeta(0) = 0 on a point, and the unit carries no
  // 2-form; v alone has no 11/22 slots: only the body contributes
  return trace_tau_r(a.body, c);
}

}  // namespace pdolab
