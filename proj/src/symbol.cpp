#include "pdolab/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pdolab {

namespace {
constexpr int kInfRadius = std::numeric_limits<int>::max() / 2;

int clamp_deep(long w) { return static_cast<int>(std::max<long>(w, kDeepWatermark)); }

double ipow(int n, int e) { return std::pow(static_cast<double>(std::abs(n)), static_cast<double>(e)); }

cplx minus_i_pow(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}
}  // namespace

PolyhomSymbol::PolyhomSymbol(int base_rank, int k, int order, int watermark)
    : base_rank_(base_rank), k_(k), order_(order), watermark_(watermark) {}

const TrigPoly& PolyhomSymbol::plus(int j) const {
  if (j < 0 || j >= static_cast<int>(comps_.size())) {
    static thread_local TrigPoly zero;
    zero = TrigPoly(rank(), k_);
    return zero;
  }
  return comps_[j].plus;
}

const TrigPoly& PolyhomSymbol::minus(int j) const {
  if (j < 0 || j >= static_cast<int>(comps_.size())) {
    static thread_local TrigPoly zero;
    zero = TrigPoly(rank(), k_);
    return zero;
  }
  return comps_[j].minus;
}

void PolyhomSymbol::set_component(int j, TrigPoly plus, TrigPoly minus) {
  if (j < 0) throw std::invalid_argument("PolyhomSymbol: negative component index");
  if (plus.rank() != rank() || minus.rank() != rank()) throw std::invalid_argument("PolyhomSymbol: component rank mismatch");
  if (plus.matrix_size() != k_ || minus.matrix_size() != k_) throw std::invalid_argument("PolyhomSymbol: component matrix size mismatch");
  if (j >= static_cast<int>(comps_.size())) comps_.resize(j + 1, BranchPair{TrigPoly(rank(), k_), TrigPoly(rank(), k_)});
  comps_[j] = BranchPair{std::move(plus), std::move(minus)};
}

const TrigPoly& PolyhomSymbol::zero_mode() const {
  if (!has_exact_) throw std::domain_error("PolyhomSymbol: zero mode requested on a symbol without exact data");
  return zero_mode_;
}

int PolyhomSymbol::correction_surface() const {
  int s = 0;
  for (const auto& [n, c] : corrections_) {
    (void)c;
    s = std::max(s, std::abs(n));
  }
  return s;
}

void PolyhomSymbol::set_exact(TrigPoly zero_mode, std::map<int, TrigPoly> corrections, int radius, bool tail) {
  if (zero_mode.rank() != rank() || zero_mode.matrix_size() != k_)
    throw std::invalid_argument("PolyhomSymbol: zero mode shape mismatch");
  has_exact_ = true;
  exact_tail_ = tail;
  exact_radius_ = radius;
  zero_mode_ = std::move(zero_mode);
  corrections_.clear();
  for (auto& [n, c] : corrections) {
    if (n == 0) throw std::invalid_argument("PolyhomSymbol: correction at mode 0 belongs in the zero mode");
    if (!c.is_zero()) corrections_[n] = std::move(c);
  }
}

void PolyhomSymbol::clear_exact() {
  has_exact_ = false;
  exact_tail_ = false;
  exact_radius_ = 0;
  zero_mode_ = TrigPoly();
  corrections_.clear();
}

TrigPoly PolyhomSymbol::homog_value(int n) const {
  if (n == 0) throw std::invalid_argument("PolyhomSymbol: homogeneous value undefined at mode 0");
  TrigPoly out(rank(), k_);
  for (int j = 0; j < static_cast<int>(comps_.size()); ++j) {
    const TrigPoly& c = n > 0 ? comps_[j].plus : comps_[j].minus;
    if (c.is_zero()) continue;
    out += c.scaled(ipow(n, order_ - j));
  }
  return out;
}

bool PolyhomSymbol::is_exact_at(int n) const {
  if (!has_exact_) return false;
  if (n == 0) return true;
  return std::abs(n) <= exact_radius_ || exact_tail_;
}

TrigPoly PolyhomSymbol::exact_value(int n) const {
  if (!is_exact_at(n)) throw std::domain_error("PolyhomSymbol: mode " + std::to_string(n) + " lies in the untracked gap");
  if (n == 0) return zero_mode_;
  TrigPoly v = homog_value(n);
  auto it = corrections_.find(n);
  if (it != corrections_.end()) v += it->second;
  return v;
}

int PolyhomSymbol::comp_bandwidth_x() const {
  int w = 0;
  for (const auto& bp : comps_) {
    w = std::max(w, bp.plus.bandwidth(fiber_var()));
    w = std::max(w, bp.minus.bandwidth(fiber_var()));
  }
  return w;
}

bool PolyhomSymbol::branchwise_polynomial() const {
  for (int j = 0; j < static_cast<int>(comps_.size()); ++j) {
    if (order_ - j >= 0) continue;
    if (!comps_[j].plus.is_zero() || !comps_[j].minus.is_zero()) return false;
  }
  return true;
}

PolyhomSymbol PolyhomSymbol::base_derivative(int var) const {
  if (var < 0 || var >= base_rank_) throw std::invalid_argument("PolyhomSymbol: base variable out of range");
  PolyhomSymbol out(base_rank_, k_, order_, watermark_);
  for (int j = 0; j < static_cast<int>(comps_.size()); ++j)
    out.set_component(j, comps_[j].plus.derivative(var), comps_[j].minus.derivative(var));
  if (has_exact_) {
    std::map<int, TrigPoly> corr;
    for (const auto& [n, c] : corrections_) corr[n] = c.derivative(var);
    out.set_exact(zero_mode_.derivative(var), std::move(corr), exact_radius_, exact_tail_);
  }
  return out;
}

PolyhomSymbol PolyhomSymbol::at_base_point(const std::vector<double>& b) const {
  if (static_cast<int>(b.size()) != base_rank_) throw std::invalid_argument("PolyhomSymbol: base point rank mismatch");
  PolyhomSymbol out(0, k_, order_, watermark_);
  for (int j = 0; j < static_cast<int>(comps_.size()); ++j)
    out.set_component(j, comps_[j].plus.partial_eval(0, b), comps_[j].minus.partial_eval(0, b));
  if (has_exact_) {
    std::map<int, TrigPoly> corr;
    for (const auto& [n, c] : corrections_) corr[n] = c.partial_eval(0, b);
    out.set_exact(zero_mode_.partial_eval(0, b), std::move(corr), exact_radius_, exact_tail_);
  }
  return out;
}

PolyhomSymbol PolyhomSymbol::scalar_extend(int k) const {
  if (k_ != 1) throw std::invalid_argument("PolyhomSymbol: scalar_extend requires k = 1");
  PolyhomSymbol out(base_rank_, k, order_, watermark_);
  for (int j = 0; j < static_cast<int>(comps_.size()); ++j)
    out.set_component(j, comps_[j].plus.scalar_extend(k), comps_[j].minus.scalar_extend(k));
  if (has_exact_) {
    std::map<int, TrigPoly> corr;
    for (const auto& [n, c] : corrections_) corr[n] = c.scalar_extend(k);
    out.set_exact(zero_mode_.scalar_extend(k), std::move(corr), exact_radius_, exact_tail_);
  }
  return out;
}

double PolyhomSymbol::comp_l1() const {
  double v = 0.0;
  for (const auto& bp : comps_) v += bp.plus.coeff_l1() + bp.minus.coeff_l1();
  return v;
}

bool PolyhomSymbol::is_zero() const {
  for (const auto& bp : comps_)
    if (!bp.plus.is_zero() || !bp.minus.is_zero()) return false;
  if (has_exact_) {
    if (!zero_mode_.is_zero()) return false;
    for (const auto& [n, c] : corrections_) {
      (void)n;
      if (!c.is_zero()) return false;
    }
  }
  return true;
}

// --- constructors -----------------------------------------------------------

PolyhomSymbol d_power_symbol(int base_rank, int k, int m) {
  PolyhomSymbol s(base_rank, k, m, kDeepWatermark);
  TrigPoly one = TrigPoly::identity(base_rank + 1, k);
  s.set_component(0, one, one);
  s.set_exact(one, {}, 0, true);
  return s;
}

PolyhomSymbol multiplication_symbol(const TrigPoly& f) {
  const int rank = f.rank();
  if (rank < 1) throw std::invalid_argument("multiplication_symbol: needs at least the fiber variable");
  PolyhomSymbol s(rank - 1, f.matrix_size(), 0, kDeepWatermark);
  s.set_component(0, f, f);
  s.set_exact(f, {}, 0, true);
  return s;
}

PolyhomSymbol winding_symbol(int base_rank, int w_plus, int w_minus) {
  const int rank = base_rank + 1;
  TrigPoly plus = TrigPoly::harmonic(rank, base_rank, w_plus);
  TrigPoly minus = TrigPoly::harmonic(rank, base_rank, w_minus);
  PolyhomSymbol s(base_rank, 1, 0, kDeepWatermark);
  s.set_component(0, plus, minus);
  s.set_exact((plus + minus).scaled(0.5), {}, 0, true);
  return s;
}

PolyhomSymbol branch_symbol(int order, const TrigPoly& plus, const TrigPoly& minus, std::optional<TrigPoly> zero_mode) {
  if (plus.rank() != minus.rank() || plus.matrix_size() != minus.matrix_size())
    throw std::invalid_argument("branch_symbol: branch shape mismatch");
  const int base_rank = plus.rank() - 1;
  PolyhomSymbol s(base_rank, plus.matrix_size(), order, zero_mode ? kDeepWatermark : order - 2);
  s.set_component(0, plus, minus);
  if (zero_mode) s.set_exact(*zero_mode, {}, 0, true);
  return s;
}

// --- arithmetic --------------------------------------------------------------

namespace {
void check_shapes(const PolyhomSymbol& a, const PolyhomSymbol& b, const char* who) {
  if (a.base_rank() != b.base_rank()) throw std::invalid_argument(std::string(who) + ": torus rank mismatch");
  if (a.matrix_size() != b.matrix_size()) throw std::invalid_argument(std::string(who) + ": matrix size mismatch");
}
}  // namespace

PolyhomSymbol sym_add(const PolyhomSymbol& a, const PolyhomSymbol& b) {
  check_shapes(a, b, "sym_add");
  const int order = std::max(a.order(), b.order());
  const int watermark = std::max(a.watermark(), b.watermark());
  // deepest stored homogeneity degree on either side
  int deg_min = order;
  if (a.stored_j() >= 0) deg_min = std::min(deg_min, a.order() - a.stored_j());
  if (b.stored_j() >= 0) deg_min = std::min(deg_min, b.order() - b.stored_j());
  // the result refuses to report components at or below its watermark; a
  // deeper input may lose stored content here
  const int floor_deg = std::max(deg_min, watermark + 1);
  bool dropped = false;
  for (const PolyhomSymbol* s : {&a, &b}) {
    for (int j = std::max(0, s->order() - floor_deg + 1); j <= s->stored_j(); ++j)
      if (!s->plus(j).is_zero() || !s->minus(j).is_zero()) dropped = true;
  }
  PolyhomSymbol out(a.base_rank(), a.matrix_size(), order, watermark);
  for (int j = 0; j <= order - floor_deg; ++j) {
    const int deg = order - j;
    TrigPoly p(a.rank(), a.matrix_size());
    TrigPoly m(a.rank(), a.matrix_size());
    const int ja = a.order() - deg, jb = b.order() - deg;
    if (ja >= 0 && ja <= a.stored_j()) {
      p += a.plus(ja);
      m += a.minus(ja);
    }
    if (jb >= 0 && jb <= b.stored_j()) {
      p += b.plus(jb);
      m += b.minus(jb);
    }
    out.set_component(j, std::move(p), std::move(m));
  }
  if (a.has_exact() && b.has_exact()) {
    const int avail = std::min(a.exact_tail() ? kInfRadius : a.exact_radius(), b.exact_tail() ? kInfRadius : b.exact_radius());
    const bool tail = a.exact_tail() && b.exact_tail() && !dropped;
    const int surface = std::max(a.correction_surface(), b.correction_surface());
    std::map<int, TrigPoly> corr;
    int radius;
    if (!dropped) {
      // homogeneous parts align componentwise, corrections just merge
      radius = tail ? surface : avail;
      for (const auto& [n, c] : a.corrections())
        if (std::abs(n) <= radius) corr[n] = c;
      for (const auto& [n, c] : b.corrections()) {
        if (std::abs(n) > radius) continue;
        auto it = corr.find(n);
        if (it == corr.end())
          corr[n] = c;
        else
          it->second += c;
      }
    } else {
      // exact values stay authoritative over the truncated expansion
      radius = std::min(avail, 32);
      for (int n = 1; n <= radius; ++n) {
        for (int s : {n, -n}) {
          TrigPoly c = a.exact_value(s) + b.exact_value(s) - out.homog_value(s);
          if (!c.is_zero()) corr[s] = std::move(c);
        }
      }
    }
    out.set_exact(a.zero_mode() + b.zero_mode(), std::move(corr), radius, tail);
  }
  return out;
}

PolyhomSymbol sym_sub(const PolyhomSymbol& a, const PolyhomSymbol& b) { return sym_add(a, sym_scale(b, cplx(-1.0, 0.0))); }

PolyhomSymbol sym_scale(const PolyhomSymbol& a, cplx factor) {
  PolyhomSymbol out(a.base_rank(), a.matrix_size(), a.order(), a.watermark());
  for (int j = 0; j <= a.stored_j(); ++j) out.set_component(j, a.plus(j).scaled(factor), a.minus(j).scaled(factor));
  if (a.has_exact()) {
    std::map<int, TrigPoly> corr;
    for (const auto& [n, c] : a.corrections()) corr[n] = c.scaled(factor);
    out.set_exact(a.zero_mode().scaled(factor), std::move(corr), a.exact_radius(), a.exact_tail());
  }
  return out;
}

namespace {
PolyhomSymbol mul_pointwise(const PolyhomSymbol& a, const TrigPoly& f, bool left) {
  if (f.rank() != a.rank()) throw std::invalid_argument("mul_trig: rank mismatch");
  if (f.matrix_size() != a.matrix_size()) throw std::invalid_argument("mul_trig: matrix size mismatch");
  auto prod = [&](const TrigPoly& c) { return left ? f * c : c * f; };
  PolyhomSymbol out(a.base_rank(), a.matrix_size(), a.order(), a.watermark());
  for (int j = 0; j <= a.stored_j(); ++j) out.set_component(j, prod(a.plus(j)), prod(a.minus(j)));
  if (a.has_exact()) {
    std::map<int, TrigPoly> corr;
    for (const auto& [n, c] : a.corrections()) corr[n] = prod(c);
    out.set_exact(prod(a.zero_mode()), std::move(corr), a.exact_radius(), a.exact_tail());
  }
  return out;
}
}  // namespace

PolyhomSymbol mul_left(const TrigPoly& f, const PolyhomSymbol& a) { return mul_pointwise(a, f, true); }
PolyhomSymbol mul_right(const PolyhomSymbol& a, const TrigPoly& f) { return mul_pointwise(a, f, false); }

// --- composition --------------------------------------------------------------

namespace {

// exact value of the operator product at mode n:
//   c(x, n) = sum_nu a(x, n+nu) b_nu(n) e^{i nu x}
TrigPoly exact_product_value(const PolyhomSymbol& a, const PolyhomSymbol& b, int n) {
  const int xv = b.fiber_var();
  TrigPoly bval = b.exact_value(n);
  TrigPoly out(a.rank(), a.matrix_size());
  for (int nu : bval.var_freqs(xv)) {
    TrigPoly slice = bval.slice_var(xv, nu);
    TrigPoly term = a.exact_value(n + nu) * slice;
    out += term.shifted(xv, nu);
  }
  return out;
}

}  // namespace

PolyhomSymbol sym_compose(const PolyhomSymbol& a, const PolyhomSymbol& b, int j_out, const ComposeOptions& opt) {
  check_shapes(a, b, "sym_compose");
  if (j_out < 0) throw std::invalid_argument("sym_compose: J_out must be nonnegative");
  const int da = a.order(), db = b.order();
  // unknown-from-a enters at order <= w_a + d_b and unknown-from-b at
  // d_a + w_b; the result is certified only above the shallower of the two
  const long supported = std::max<long>(static_cast<long>(a.watermark()) + db, static_cast<long>(da) + b.watermark());
  const int requested = da + db - j_out - 1;
  if (requested < clamp_deep(supported))
    throw WatermarkError(
        "sym_compose: requested J_out=" + std::to_string(j_out) + " needs components below the supported watermark " +
            std::to_string(clamp_deep(supported)) + " (achievable J_out=" + std::to_string(da + db - clamp_deep(supported) - 1) + ")",
        clamp_deep(supported));

  const int xv = a.fiber_var();
  PolyhomSymbol out(a.base_rank(), a.matrix_size(), da + db, requested);

  // c_j^s = sum_{k+j1+j2=j} s^k ff(da-j1,k)/k! c^{a,s}_{j1} (-i d/dx)^k c^{b,s}_{j2}
  for (int j = 0; j <= j_out; ++j) {
    TrigPoly cp(a.rank(), a.matrix_size());
    TrigPoly cm(a.rank(), a.matrix_size());
    for (int j1 = 0; j1 <= std::min(j, a.stored_j()); ++j1) {
      for (int j2 = 0; j2 <= std::min(j - j1, b.stored_j()); ++j2) {
        const int k = j - j1 - j2;
        double ff = 1.0;
        for (int t = 0; t < k; ++t) ff *= static_cast<double>(da - j1 - t);
        if (ff == 0.0) continue;
        double kfact = 1.0;
        for (int t = 2; t <= k; ++t) kfact *= t;
        const cplx coeff = (ff / kfact) * minus_i_pow(k);
        if (!a.plus(j1).is_zero() && !b.plus(j2).is_zero()) {
          TrigPoly dxb = b.plus(j2);
          for (int t = 0; t < k; ++t) dxb = dxb.derivative(xv);
          cp += (a.plus(j1) * dxb).scaled(coeff);
        }
        if (!a.minus(j1).is_zero() && !b.minus(j2).is_zero()) {
          TrigPoly dxb = b.minus(j2);
          for (int t = 0; t < k; ++t) dxb = dxb.derivative(xv);
          const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
          cm += (a.minus(j1) * dxb).scaled(coeff * sgn);
        }
      }
    }
    out.set_component(j, std::move(cp), std::move(cm));
  }

  // exact completion
  if (a.has_exact() && b.has_exact()) {
    bool ok = true;
    TrigPoly zm(a.rank(), a.matrix_size());
    try {
      zm = exact_product_value(a, b, 0);
    } catch (const std::domain_error&) {
      ok = false;
    }
    if (ok) {
      // does the truncated expansion capture every nonzero term of the product?
      const int wbx = b.comp_bandwidth_x();
      bool tail = a.exact_tail() && b.exact_tail();
      if (tail) {
        for (int j1 = 0; j1 <= a.stored_j() && tail; ++j1) {
          if (a.plus(j1).is_zero() && a.minus(j1).is_zero()) continue;
          int kmax;
          if (wbx == 0)
            kmax = 0;
          else if (da - j1 >= 0)
            kmax = da - j1;
          else {
            tail = false;
            break;
          }
          for (int j2 = 0; j2 <= b.stored_j(); ++j2) {
            if (b.plus(j2).is_zero() && b.minus(j2).is_zero()) continue;
            if (j1 + j2 + kmax > j_out) {
              tail = false;
              break;
            }
          }
        }
      }
      const int avail_b = b.exact_tail() ? kInfRadius : b.exact_radius();
      int target;
      if (tail)
        target = std::max({wbx + a.correction_surface(), b.correction_surface(), wbx});
      else
        target = std::min(avail_b, opt.correction_cap);
      target = std::min(target, opt.correction_cap);

      std::map<int, TrigPoly> corr;
      int radius = 0;
      for (int n = 1; n <= target; ++n) {
        TrigPoly cpos, cneg;
        try {
          cpos = exact_product_value(a, b, n) - out.homog_value(n);
          cneg = exact_product_value(a, b, -n) - out.homog_value(-n);
        } catch (const std::domain_error&) {
          break;
        }
        radius = n;
        if (!cpos.is_zero()) corr[n] = std::move(cpos);
        if (!cneg.is_zero()) corr[-n] = std::move(cneg);
      }
      if (tail && radius < target) tail = false;  // could not certify the whole crossover zone
      out.set_exact(std::move(zm), std::move(corr), radius, tail);
    }
  }
  if (out.exact_tail()) {
    PolyhomSymbol deep(out.base_rank(), out.matrix_size(), out.order(), kDeepWatermark);
    for (int j = 0; j <= out.stored_j(); ++j) deep.set_component(j, out.plus(j), out.minus(j));
    std::map<int, TrigPoly> corr(out.corrections().begin(), out.corrections().end());
    deep.set_exact(out.zero_mode(), std::move(corr), out.exact_radius(), true);
    return deep;
  }
  return out;
}

// --- parametrix ---------------------------------------------------------------

double leading_min_singular(const PolyhomSymbol& q, int points_per_var) {
  const int r = q.rank();
  double min_sv = std::numeric_limits<double>::infinity();
  std::vector<double> pt(r, 0.0);
  std::vector<int> idx(r, 0);
  while (true) {
    for (int i = 0; i < r; ++i) pt[i] = kTwoPi * idx[i] / points_per_var;
    for (const TrigPoly* c : {&q.plus(0), &q.minus(0)}) {
      Mat v = c->eval(pt);
      if (q.matrix_size() == 1) {
        min_sv = std::min(min_sv, std::abs(v(0, 0)));
      } else {
        Eigen::JacobiSVD<Mat> svd(v);
        min_sv = std::min(min_sv, svd.singularValues().minCoeff());
      }
    }
    int ax = r - 1;
    for (; ax >= 0; --ax) {
      if (++idx[ax] < points_per_var) break;
      idx[ax] = 0;
    }
    if (ax < 0) break;
  }
  return min_sv;
}

PolyhomSymbol parametrix(const PolyhomSymbol& q, int j_out) {
  if (q.stored_j() < 0) throw std::domain_error("parametrix: symbol has no leading component");
  const double sv = leading_min_singular(q);
  if (sv < 1e-8)
    throw std::domain_error("parametrix: leading symbol is singular on the sampling grid (min sv " + std::to_string(sv) + ")");

  const int d = q.order();
  TrigPoly ip = q.plus(0).grid_inverse();
  TrigPoly im = q.minus(0).grid_inverse();
  PolyhomSymbol p0(q.base_rank(), q.matrix_size(), -d, -d - j_out - 2);
  p0.set_component(0, std::move(ip), std::move(im));

  PolyhomSymbol work_q(q.base_rank(), q.matrix_size(), q.order(), q.watermark());
  for (int j = 0; j <= q.stored_j(); ++j) work_q.set_component(j, q.plus(j), q.minus(j));

  PolyhomSymbol id = identity_symbol(q.base_rank(), q.matrix_size());
  id.clear_exact();
  PolyhomSymbol r = sym_sub(id, sym_compose(p0, work_q, j_out));
  PolyhomSymbol acc = sym_add(id, r);
  PolyhomSymbol pw = r;
  for (int k = 2; k <= j_out; ++k) {
    pw = sym_compose(pw, r, j_out);
    acc = sym_add(acc, pw);
  }
  PolyhomSymbol p = sym_compose(acc, p0, j_out);

  // exact completion: the expansion is the definition of Op(p) away from
  // mode zero; the zero mode inverts q's when possible
  PolyhomSymbol out(q.base_rank(), q.matrix_size(), -d, kDeepWatermark);
  for (int j = 0; j <= p.stored_j(); ++j) out.set_component(j, p.plus(j), p.minus(j));
  TrigPoly zm = TrigPoly::identity(q.rank(), q.matrix_size());
  if (q.has_exact() && !q.zero_mode().is_zero()) {
    try {
      zm = q.zero_mode().grid_inverse();
    } catch (const std::exception&) {
      // keep the identity fallback; any finite-rank choice is a smoothing perturbation
    }
  }
  out.set_exact(std::move(zm), {}, 0, true);
  return out;
}

// --- logarithmic commutator ----------------------------------------------------

PolyhomSymbol log_commutator(const PolyhomSymbol& a, int j_out, int correction_cap) {
  if (j_out < 0) throw std::invalid_argument("log_commutator: J_out must be nonnegative");
  const int target_w = a.order() - 1 - j_out - 1;
  if (target_w < a.watermark())
    throw WatermarkError("log_commutator: watermark exhaustion, achievable " + std::to_string(a.watermark()), a.watermark());

  const PolyhomSymbol d1 = d_power_symbol(a.base_rank(), a.matrix_size(), 1);
  PolyhomSymbol acc(a.base_rank(), a.matrix_size(), a.order() - 1, target_w);
  PolyhomSymbol com = a;
  for (int m = 1; m <= j_out; ++m) {
    const int jc = j_out + m;
    com = sym_sub(sym_compose(d1, com, jc), sym_compose(com, d1, jc));
    PolyhomSymbol term = sym_compose(com, d_power_symbol(a.base_rank(), a.matrix_size(), -m), jc);
    const double c = ((m % 2 == 1) ? 1.0 : -1.0) / static_cast<double>(m);
    acc = sym_add(acc, sym_scale(term, c));
  }

  // trim the structurally cancelled leading components so the recorded order
  // is ord(a) - 1
  int lead = 0;
  while (acc.order() - lead > a.order() - 1 && lead <= acc.stored_j()) {
    if (!acc.plus(lead).is_zero() || !acc.minus(lead).is_zero()) break;
    ++lead;
  }
  PolyhomSymbol out(a.base_rank(), a.matrix_size(), acc.order() - lead, target_w);
  for (int j = lead; j <= acc.stored_j(); ++j) {
    if (acc.order() - j <= target_w) break;
    out.set_component(j - lead, acc.plus(j), acc.minus(j));
  }

  // exact corrections from (ln max(|n+nu|,1) - ln max(|n|,1)) A_nu(n)
  if (a.has_exact()) {
    const int xv = a.fiber_var();
    auto exact_at = [&](int n) {
      TrigPoly av = a.exact_value(n);
      TrigPoly val(a.rank(), a.matrix_size());
      const double ln_n = std::log(std::max(std::abs(n), 1));
      for (int nu : av.var_freqs(xv)) {
        const double w = std::log(std::max(std::abs(n + nu), 1)) - ln_n;
        if (w == 0.0) continue;
        val += av.slice_var(xv, nu).scaled(w).shifted(xv, nu);
      }
      return val;
    };
    const int radius = std::min(a.exact_tail() ? kInfRadius : a.exact_radius(), correction_cap);
    std::map<int, TrigPoly> corr;
    for (int n = 1; n <= radius; ++n) {
      for (int s : {n, -n}) {
        TrigPoly c = exact_at(s) - out.homog_value(s);
        if (!c.is_zero()) corr[s] = std::move(c);
      }
    }
    out.set_exact(exact_at(0), std::move(corr), radius, false);
  }
  return out;
}

TrigPoly diag_symbol_value(const PolyhomSymbol& a, int n) {
  TrigPoly v = a.exact_value(n);
  return v.slice_var(a.fiber_var(), 0).drop_var(a.fiber_var());
}

}  // namespace pdolab
