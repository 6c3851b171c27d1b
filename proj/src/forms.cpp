#include "pdolab/forms.hpp"

#include <bit>

#include "pdolab/constants.hpp"

namespace pdolab {

namespace {

int degree_of(unsigned mask) { return std::popcount(mask); }

// sign of db_I ^ db_J as a reordering of db_{I union J}: (-1)^{#{(i,j): i in I, j in J, i > j}}
int merge_sign(unsigned i_mask, unsigned j_mask) {
  int inversions = 0;
  for (int i = 0; i < 8; ++i) {
    if (!(i_mask & (1u << i))) continue;
    for (int j = 0; j < i; ++j)
      if (j_mask & (1u << j)) ++inversions;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

const PolyhomSymbol& FormSymbol::comp(unsigned mask) const {
  auto it = comps_.find(mask);
  if (it == comps_.end()) {
    static thread_local PolyhomSymbol zero;
    zero = PolyhomSymbol(base_rank_, k_, 0, kDeepWatermark);
    zero.set_exact(TrigPoly(base_rank_ + 1, k_), {}, 0, true);  // the zero symbol is exactly specified
    return zero;
  }
  return it->second;
}

void FormSymbol::set_comp(unsigned mask, PolyhomSymbol s) {
  if (s.base_rank() != base_rank_ || s.matrix_size() != k_) throw std::invalid_argument("FormSymbol: component shape mismatch");
  if (mask >= (1u << base_rank_)) throw std::invalid_argument("FormSymbol: multi-index outside the base");
  if (s.is_zero())
    comps_.erase(mask);
  else
    comps_[mask] = std::move(s);
}

void FormSymbol::add_comp(unsigned mask, const PolyhomSymbol& s) {
  if (!has_comp(mask)) {
    set_comp(mask, s);
    return;
  }
  set_comp(mask, sym_add(comps_.at(mask), s));
}

bool FormSymbol::is_zero() const {
  for (const auto& [m, s] : comps_)
    if (!s.is_zero()) return false;
  return true;
}

double FormSymbol::comp_l1() const {
  double v = 0.0;
  for (const auto& [m, s] : comps_) {
    (void)m;
    v += s.comp_l1();
  }
  return v;
}

int FormSymbol::pure_degree() const {
  int deg = -1;
  for (const auto& [m, s] : comps_) {
    if (s.is_zero()) continue;
    if (deg < 0)
      deg = degree_of(m);
    else if (deg != degree_of(m))
      return -1;
  }
  return deg < 0 ? 0 : deg;
}

FormSymbol FormSymbol::operator+(const FormSymbol& rhs) const {
  FormSymbol out = *this;
  for (const auto& [m, s] : rhs.comps_) out.add_comp(m, s);
  return out;
}

FormSymbol FormSymbol::operator-(const FormSymbol& rhs) const { return *this + rhs.scaled(cplx(-1.0, 0.0)); }

FormSymbol FormSymbol::scaled(cplx factor) const {
  FormSymbol out(base_rank_, k_);
  for (const auto& [m, s] : comps_) out.set_comp(m, sym_scale(s, factor));
  return out;
}

FormSymbol FormSymbol::degree_sign() const {
  FormSymbol out(base_rank_, k_);
  for (const auto& [m, s] : comps_) out.set_comp(m, degree_of(m) % 2 == 0 ? s : sym_scale(s, cplx(-1.0, 0.0)));
  return out;
}

bool FormSymbol::orders_within(int shift) const {
  for (const auto& [m, s] : comps_) {
    if (s.is_zero()) continue;
    // recorded orders may be non-sharp; skip leading zero components
    int lead = 0;
    while (lead <= s.stored_j() && s.plus(lead).is_zero() && s.minus(lead).is_zero()) ++lead;
    if (lead > s.stored_j()) continue;
    if (s.order() - lead > degree_of(m) + shift) return false;
  }
  return true;
}

FormSymbol wedge(const FormSymbol& x, const FormSymbol& y, int j, const ComposeOptions& opt) {
  if (x.base_rank() != y.base_rank()) throw std::invalid_argument("wedge: base rank mismatch");
  if (x.matrix_size() != y.matrix_size()) throw std::invalid_argument("wedge: matrix size mismatch");
  FormSymbol out(x.base_rank(), x.matrix_size());
  for (const auto& [mi, si] : x.comps()) {
    for (const auto& [mj, sj] : y.comps()) {
      if (mi & mj) continue;  // repeated db kills the term
      PolyhomSymbol prod = sym_compose(si, sj, j, opt);
      if (merge_sign(mi, mj) < 0) prod = sym_scale(prod, cplx(-1.0, 0.0));
      out.add_comp(mi | mj, prod);
    }
  }
  return out;
}

FormSymbol d_base(const FormSymbol& x) {
  FormSymbol out(x.base_rank(), x.matrix_size());
  for (const auto& [mask, s] : x.comps()) {
    for (int t = 0; t < x.base_rank(); ++t) {
      if (mask & (1u << t)) continue;
      PolyhomSymbol ds = s.base_derivative(t);
      if (ds.is_zero()) continue;
      // move db_t through the lower directions of db_mask
      int below = 0;
      for (int i = 0; i < t; ++i)
        if (mask & (1u << i)) ++below;
      if (below % 2 == 1) ds = sym_scale(ds, cplx(-1.0, 0.0));
      out.add_comp(mask | (1u << t), ds);
    }
  }
  return out;
}

FormSymbol form_log_commutator(const FormSymbol& x, int j) {
  FormSymbol out(x.base_rank(), x.matrix_size());
  for (const auto& [mask, s] : x.comps()) out.add_comp(mask, log_commutator(s, j));
  return out;
}

PolyhomSymbol integrate_over_cycle(const FormSymbol& x, const Cycle& c) {
  if (c.kind == Cycle::kPoint) {
    if (static_cast<int>(c.point.size()) != x.base_rank()) throw std::invalid_argument("integrate_over_cycle: point rank mismatch");
    return x.comp(0u).at_base_point(c.point);
  }
  if (x.base_rank() != 2) throw std::invalid_argument("integrate_over_cycle: [T^2] needs a rank-2 base");
  // (2pi)^2 times the mean coefficient of db1 ^ db2
  PolyhomSymbol top = x.comp(0b11u);
  PolyhomSymbol out(0, x.matrix_size(), top.order(), top.watermark());
  auto base_avg = [](const TrigPoly& p) {
    return p.slice_var(0, 0).slice_var(1, 0).drop_var(0).drop_var(0);
  };
  for (int j2 = 0; j2 <= top.stored_j(); ++j2) out.set_component(j2, base_avg(top.plus(j2)), base_avg(top.minus(j2)));
  if (top.has_exact()) {
    std::map<int, TrigPoly> corr;
    for (const auto& [n, cc] : top.corrections()) {
      TrigPoly c = base_avg(cc);
      if (!c.is_zero()) corr[n] = std::move(c);
    }
    out.set_exact(base_avg(top.zero_mode()), std::move(corr), top.exact_radius(), top.exact_tail());
  }
  return sym_scale(out, kTorus2Volume);
}

ConnectionSpec::ConnectionSpec(int base_rank, std::vector<TrigPoly> coefficients) : base_rank_(base_rank), a_(std::move(coefficients)) {
  if (static_cast<int>(a_.size()) != base_rank_) throw std::invalid_argument("ConnectionSpec: one coefficient per base direction");
  for (const auto& c : a_) {
    if (c.rank() != base_rank_ + 1 || c.matrix_size() != 1)
      throw std::invalid_argument("ConnectionSpec: coefficients must be scalar trig polys in (base, x)");
  }
  // curvature of the horizontal distribution: theta_{st} = d_s A_t - d_t A_s + [A_s, A_t]
  // with the bracket of vertical fields [f d/dx, g d/dx] = (f g' - g f') d/dx
  if (base_rank_ == 2) {
    const int xv = base_rank_;
    TrigPoly t01 = a_[1].derivative(0) - a_[0].derivative(1) + a_[0] * a_[1].derivative(xv) - a_[1] * a_[0].derivative(xv);
    theta_.push_back(std::move(t01));
  }
}

ConnectionSpec ConnectionSpec::flat(int base_rank) {
  std::vector<TrigPoly> a(base_rank, TrigPoly(base_rank + 1, 1));
  return ConnectionSpec(base_rank, std::move(a));
}

bool ConnectionSpec::is_flat() const {
  for (const auto& c : a_)
    if (!c.is_zero()) return false;
  return true;
}

PolyhomSymbol vertical_field_symbol(const TrigPoly& g, int k) {
  // g(b,x) d/dx quantizes to g * (i xi): value at mode n is i n g
  TrigPoly gk = k == 1 ? g : g.scalar_extend(k);
  PolyhomSymbol s(g.rank() - 1, k, 1, kDeepWatermark);
  s.set_component(0, gk.scaled(cplx(0.0, 1.0)), gk.scaled(cplx(0.0, -1.0)));
  s.set_exact(TrigPoly(g.rank(), k), {}, 0, true);
  return s;
}

FormSymbol ConnectionSpec::one_form(int k) const {
  FormSymbol out(base_rank_, k);
  for (int t = 0; t < base_rank_; ++t) {
    if (a_[t].is_zero()) continue;
    out.set_comp(1u << t, vertical_field_symbol(a_[t], k));
  }
  return out;
}

FormSymbol ConnectionSpec::curvature(int k) const {
  FormSymbol out(base_rank_, k);
  if (base_rank_ == 2 && !theta_.empty() && !theta_[0].is_zero()) out.set_comp(0b11u, vertical_field_symbol(theta_[0], k));
  return out;
}

FormSymbol delta_derivation(const FormSymbol& x, const ConnectionSpec& a, int j, const ComposeOptions& opt) {
  FormSymbol out = d_base(x);
  if (!a.is_flat()) {
    FormSymbol af = a.one_form(x.matrix_size());
    out = out + wedge(af, x, j, opt) - wedge(x.degree_sign(), af, j, opt);
  }
  return out;
}

FormSymbol delta_log_d(const ConnectionSpec& a, int k, int j) {
  FormSymbol out(a.base_rank(), k);
  if (a.is_flat()) return out;
  FormSymbol d_form = FormSymbol::from_symbol(d_spec_symbol(a.base_rank(), k));
  FormSymbol delta_d = delta_derivation(d_form, a, j + 2);
  FormSymbol term = delta_d;
  for (int m = 1; m <= j; ++m) {
    FormSymbol dinv = FormSymbol::from_symbol(d_power_symbol(a.base_rank(), k, -m));
    const double c = ((m % 2 == 1) ? 1.0 : -1.0) / static_cast<double>(m);
    out = out + wedge(term, dinv, j + 2).scaled(c);
    if (m < j) term = wedge(d_form, term, j + 2) - wedge(term, d_form, j + 2);
  }
  return out;
}

}  // namespace pdolab
