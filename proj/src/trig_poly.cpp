#include "pdolab/trig_poly.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "pdolab/fft.hpp"
#include "pdolab/parallel.hpp"

namespace pdolab {

namespace {
bool negligible(const Mat& m) { return m.cwiseAbs().maxCoeff() == 0.0; }
}  // namespace

TrigPoly TrigPoly::constant(int rank, const Mat& value) {
  if (value.rows() != value.cols()) throw std::invalid_argument("TrigPoly: coefficient must be square");
  TrigPoly p(rank, static_cast<int>(value.rows()));
  p.set_coeff(FreqVec(rank, 0), value);
  return p;
}

TrigPoly TrigPoly::scalar_const(int rank, cplx value) {
  Mat m(1, 1);
  m(0, 0) = value;
  return constant(rank, m);
}

TrigPoly TrigPoly::identity(int rank, int k) { return constant(rank, Mat::Identity(k, k)); }

TrigPoly TrigPoly::monomial(int rank, const FreqVec& freq, const Mat& value) {
  if (static_cast<int>(freq.size()) != rank) throw std::invalid_argument("TrigPoly: frequency rank mismatch");
  TrigPoly p(rank, static_cast<int>(value.rows()));
  p.set_coeff(freq, value);
  return p;
}

TrigPoly TrigPoly::harmonic(int rank, int var, int freq, cplx amplitude) {
  FreqVec f(rank, 0);
  f[var] = freq;
  Mat m(1, 1);
  m(0, 0) = amplitude;
  return monomial(rank, f, m);
}

TrigPoly TrigPoly::cosine(int rank, int var, double amplitude) {
  return harmonic(rank, var, 1, 0.5 * amplitude) + harmonic(rank, var, -1, 0.5 * amplitude);
}

TrigPoly TrigPoly::sine(int rank, int var, double amplitude) {
  return harmonic(rank, var, 1, cplx(0.0, -0.5) * amplitude) + harmonic(rank, var, -1, cplx(0.0, 0.5) * amplitude);
}

Mat TrigPoly::coeff(const FreqVec& freq) const {
  auto it = coeffs_.find(freq);
  if (it == coeffs_.end()) return Mat::Zero(k_, k_);
  return it->second;
}

void TrigPoly::set_coeff(const FreqVec& freq, const Mat& value) {
  if (static_cast<int>(freq.size()) != rank_) throw std::invalid_argument("TrigPoly: frequency rank mismatch");
  if (value.rows() != k_ || value.cols() != k_) throw std::invalid_argument("TrigPoly: matrix size mismatch");
  if (negligible(value))
    coeffs_.erase(freq);
  else
    coeffs_[freq] = value;
}

void TrigPoly::add_coeff(const FreqVec& freq, const Mat& value) {
  if (static_cast<int>(freq.size()) != rank_) throw std::invalid_argument("TrigPoly: frequency rank mismatch");
  if (value.rows() != k_ || value.cols() != k_) throw std::invalid_argument("TrigPoly: matrix size mismatch");
  auto it = coeffs_.find(freq);
  if (it == coeffs_.end()) {
    if (!negligible(value)) coeffs_[freq] = value;
  } else {
    it->second += value;
    if (negligible(it->second)) coeffs_.erase(it);
  }
}

void TrigPoly::check_compatible(const TrigPoly& rhs) const {
  if (rank_ != rhs.rank_) throw std::invalid_argument("TrigPoly: torus rank mismatch");
  if (k_ != rhs.k_) throw std::invalid_argument("TrigPoly: matrix size mismatch");
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& rhs) {
  check_compatible(rhs);
  for (const auto& [f, m] : rhs.coeffs_) add_coeff(f, m);
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& rhs) {
  check_compatible(rhs);
  for (const auto& [f, m] : rhs.coeffs_) add_coeff(f, -m);
  return *this;
}

TrigPoly TrigPoly::operator+(const TrigPoly& rhs) const {
  TrigPoly out = *this;
  out += rhs;
  return out;
}

TrigPoly TrigPoly::operator-(const TrigPoly& rhs) const {
  TrigPoly out = *this;
  out -= rhs;
  return out;
}

TrigPoly TrigPoly::operator-() const { return scaled(-1.0); }

TrigPoly TrigPoly::scaled(cplx factor) const {
  TrigPoly out(rank_, k_);
  if (factor == cplx(0.0, 0.0)) return out;
  for (const auto& [f, m] : coeffs_) out.coeffs_[f] = factor * m;
  return out;
}

TrigPoly TrigPoly::mul_direct(const TrigPoly& rhs) const {
  TrigPoly out(rank_, k_);
  FreqVec f(rank_);
  for (const auto& [fa, ma] : coeffs_) {
    for (const auto& [fb, mb] : rhs.coeffs_) {
      for (int i = 0; i < rank_; ++i) f[i] = fa[i] + fb[i];
      out.add_coeff(f, ma * mb);
    }
  }
  return out;
}

TrigPoly TrigPoly::mul_fft(const TrigPoly& rhs) const {
  const int r = rank_;
  std::vector<int> lo(r), hi(r);
  auto box = [&](const TrigPoly& p, std::vector<int>& plo, std::vector<int>& phi) {
    plo.assign(r, 0);
    phi.assign(r, 0);
    bool first = true;
    for (const auto& [f, m] : p.coeffs_) {
      (void)m;
      for (int i = 0; i < r; ++i) {
        if (first || f[i] < plo[i]) plo[i] = f[i];
        if (first || f[i] > phi[i]) phi[i] = f[i];
      }
      first = false;
    }
  };
  std::vector<int> la, ha, lb, hb;
  box(*this, la, ha);
  box(rhs, lb, hb);
  std::vector<std::size_t> ext(r);
  std::size_t total = 1;
  for (int i = 0; i < r; ++i) {
    lo[i] = la[i] + lb[i];
    hi[i] = ha[i] + hb[i];
    ext[i] = next_pow2(static_cast<std::size_t>(hi[i] - lo[i] + 1));
    total *= ext[i];
  }
  if (total > (std::size_t{1} << 26)) return mul_direct(rhs);  // grid too large, fall back

  const int k = k_;
  auto flatten = [&](const FreqVec& f, const std::vector<int>& base) {
    std::size_t idx = 0;
    for (int i = 0; i < r; ++i) idx = idx * ext[i] + static_cast<std::size_t>(f[i] - base[i]);
    return idx;
  };

  std::vector<std::vector<cplx>> ga(k * k, std::vector<cplx>(total, cplx(0, 0)));
  std::vector<std::vector<cplx>> gb(k * k, std::vector<cplx>(total, cplx(0, 0)));
  for (const auto& [f, m] : coeffs_) {
    const std::size_t idx = flatten(f, la);
    for (int p = 0; p < k; ++p)
      for (int q = 0; q < k; ++q) ga[p * k + q][idx] = m(p, q);
  }
  for (const auto& [f, m] : rhs.coeffs_) {
    const std::size_t idx = flatten(f, lb);
    for (int p = 0; p < k; ++p)
      for (int q = 0; q < k; ++q) gb[p * k + q][idx] = m(p, q);
  }
  parallel_for(2 * k * k, [&](std::int64_t e) {
    if (e < k * k)
      fft_nd(ga[e], ext, -1);
    else
      fft_nd(gb[e - k * k], ext, -1);
  });
  std::vector<std::vector<cplx>> gc(k * k, std::vector<cplx>(total, cplx(0, 0)));
  parallel_for(k * k, [&](std::int64_t e) {
    const int p = static_cast<int>(e) / k, q2 = static_cast<int>(e) % k;
    auto& dst = gc[e];
    for (int s = 0; s < k; ++s) {
      const auto& xs = ga[p * k + s];
      const auto& yb = gb[s * k + q2];
      for (std::size_t i = 0; i < total; ++i) dst[i] += xs[i] * yb[i];
    }
  });
  parallel_for(k * k, [&](std::int64_t e) { fft_nd(gc[e], ext, +1); });

  double peak = 0.0;
  for (const auto& g : gc)
    for (const auto& v : g) peak = std::max(peak, std::abs(v));
  const double floor = peak * kCoeffFloor;

  TrigPoly out(r, k);
  std::vector<std::size_t> extent(r);
  for (int i = 0; i < r; ++i) extent[i] = static_cast<std::size_t>(hi[i] - lo[i] + 1);
  FreqVec f(r);
  std::vector<std::size_t> idx(r, 0);
  while (true) {
    std::size_t flat = 0;
    for (int i = 0; i < r; ++i) flat = flat * ext[i] + idx[i];
    Mat m(k, k);
    double big = 0.0;
    for (int p = 0; p < k; ++p)
      for (int q = 0; q < k; ++q) {
        m(p, q) = gc[p * k + q][flat];
        big = std::max(big, std::abs(m(p, q)));
      }
    if (big > floor) {
      for (int i = 0; i < r; ++i) f[i] = lo[i] + static_cast<int>(idx[i]);
      out.coeffs_[f] = m;
    }
    int ax = r - 1;
    for (; ax >= 0; --ax) {
      if (++idx[ax] < extent[ax]) break;
      idx[ax] = 0;
    }
    if (ax < 0) break;
  }
  return out;
}

TrigPoly TrigPoly::operator*(const TrigPoly& rhs) const {
  check_compatible(rhs);
  if (coeffs_.empty() || rhs.coeffs_.empty()) return TrigPoly(rank_, k_);
  if (rank_ == 0 || term_count() * rhs.term_count() <= 16384) return mul_direct(rhs);
  return mul_fft(rhs);
}

TrigPoly TrigPoly::derivative(int var) const {
  if (var < 0 || var >= rank_) throw std::invalid_argument("TrigPoly: derivative variable out of range");
  TrigPoly out(rank_, k_);
  for (const auto& [f, m] : coeffs_) {
    if (f[var] == 0) continue;
    out.coeffs_[f] = cplx(0.0, static_cast<double>(f[var])) * m;
  }
  return out;
}

TrigPoly TrigPoly::adjoint() const {
  TrigPoly out(rank_, k_);
  FreqVec f(rank_);
  for (const auto& [fa, m] : coeffs_) {
    for (int i = 0; i < rank_; ++i) f[i] = -fa[i];
    out.coeffs_[f] = m.adjoint();
  }
  return out;
}

TrigPoly TrigPoly::matrix_trace() const {
  TrigPoly out(rank_, 1);
  for (const auto& [f, m] : coeffs_) {
    Mat t(1, 1);
    t(0, 0) = m.trace();
    if (!negligible(t)) out.coeffs_[f] = t;
  }
  return out;
}

TrigPoly TrigPoly::scalar_extend(int k) const {
  if (k_ != 1) throw std::invalid_argument("TrigPoly: scalar_extend requires k = 1");
  TrigPoly out(rank_, k);
  for (const auto& [f, m] : coeffs_) out.coeffs_[f] = m(0, 0) * Mat::Identity(k, k);
  return out;
}

TrigPoly TrigPoly::slice_var(int var, int value) const {
  TrigPoly out(rank_, k_);
  FreqVec f(rank_);
  for (const auto& [fa, m] : coeffs_) {
    if (fa[var] != value) continue;
    f = fa;
    f[var] = 0;
    out.coeffs_[f] = m;
  }
  return out;
}

std::vector<int> TrigPoly::var_freqs(int var) const {
  std::set<int> s;
  for (const auto& [f, m] : coeffs_) {
    (void)m;
    s.insert(f[var]);
  }
  return std::vector<int>(s.begin(), s.end());
}

TrigPoly TrigPoly::shifted(int var, int freq) const {
  TrigPoly out(rank_, k_);
  FreqVec f(rank_);
  for (const auto& [fa, m] : coeffs_) {
    f = fa;
    f[var] += freq;
    out.coeffs_[f] = m;
  }
  return out;
}

TrigPoly TrigPoly::drop_var(int var) const {
  TrigPoly out(rank_ - 1, k_);
  FreqVec f(rank_ - 1);
  for (const auto& [fa, m] : coeffs_) {
    if (fa[var] != 0) throw std::invalid_argument("TrigPoly: drop_var with nonzero frequency");
    f.assign(fa.begin(), fa.begin() + var);
    f.insert(f.end(), fa.begin() + var + 1, fa.end());
    out.add_coeff(f, m);
  }
  return out;
}

TrigPoly TrigPoly::insert_var(int var) const {
  TrigPoly out(rank_ + 1, k_);
  FreqVec f(rank_ + 1);
  for (const auto& [fa, m] : coeffs_) {
    f.assign(fa.begin(), fa.begin() + var);
    f.push_back(0);
    f.insert(f.end(), fa.begin() + var, fa.end());
    out.coeffs_[f] = m;
  }
  return out;
}

Mat TrigPoly::eval(const std::vector<double>& point) const {
  if (static_cast<int>(point.size()) != rank_) throw std::invalid_argument("TrigPoly: eval point rank mismatch");
  Mat out = Mat::Zero(k_, k_);
  for (const auto& [f, m] : coeffs_) {
    double phase = 0.0;
    for (int i = 0; i < rank_; ++i) phase += f[i] * point[i];
    out += std::polar(1.0, phase) * m;
  }
  return out;
}

TrigPoly TrigPoly::partial_eval(int var0, const std::vector<double>& angles) const {
  const int n = static_cast<int>(angles.size());
  if (var0 < 0 || var0 + n > rank_) throw std::invalid_argument("TrigPoly: partial_eval range");
  TrigPoly out(rank_ - n, k_);
  FreqVec f(rank_ - n);
  for (const auto& [fa, m] : coeffs_) {
    double phase = 0.0;
    for (int i = 0; i < n; ++i) phase += fa[var0 + i] * angles[i];
    f.assign(fa.begin(), fa.begin() + var0);
    f.insert(f.end(), fa.begin() + var0 + n, fa.end());
    out.add_coeff(f, std::polar(1.0, phase) * m);
  }
  return out;
}

double TrigPoly::max_abs() const {
  double v = 0.0;
  for (const auto& [f, m] : coeffs_) {
    (void)f;
    v = std::max(v, m.cwiseAbs().maxCoeff());
  }
  return v;
}

double TrigPoly::coeff_l1() const {
  double v = 0.0;
  for (const auto& [f, m] : coeffs_) {
    (void)f;
    v += m.cwiseAbs().maxCoeff();
  }
  return v;
}

int TrigPoly::bandwidth(int var) const {
  int b = 0;
  for (const auto& [f, m] : coeffs_) {
    (void)m;
    b = std::max(b, std::abs(f[var]));
  }
  return b;
}

TrigPoly TrigPoly::pruned(double rel_floor) const {
  const double floor = max_abs() * rel_floor;
  TrigPoly out(rank_, k_);
  for (const auto& [f, m] : coeffs_) {
    if (m.cwiseAbs().maxCoeff() > floor) out.coeffs_[f] = m;
  }
  return out;
}

TrigPoly TrigPoly::grid_inverse(double tol) const {
  if (coeffs_.empty()) throw std::domain_error("TrigPoly: inverse of zero");
  std::vector<std::size_t> ext(rank_);
  for (int i = 0; i < rank_; ++i) ext[i] = next_pow2(std::max<std::size_t>(4 * bandwidth(i) + 4, 16));

  for (int attempt = 0; attempt < 6; ++attempt) {
    std::size_t total = 1;
    for (auto e : ext) total *= e;
    if (total > (std::size_t{1} << 26)) break;

    // sample, invert pointwise, transform back
    std::vector<std::vector<cplx>> grid(k_ * k_, std::vector<cplx>(total, cplx(0, 0)));
    {
      std::vector<std::size_t> idx(rank_, 0);
      std::vector<double> point(rank_);
      Mat inv(k_, k_);
      for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (int i = rank_ - 1; i >= 0; --i) {
          idx[i] = rem % ext[i];
          rem /= ext[i];
        }
        for (int i = 0; i < rank_; ++i) point[i] = kTwoPi * static_cast<double>(idx[i]) / static_cast<double>(ext[i]);
        Mat v = eval(point);
        if (k_ == 1) {
          if (std::abs(v(0, 0)) < 1e-13) throw std::domain_error("TrigPoly: singular value on inversion grid");
          inv(0, 0) = 1.0 / v(0, 0);
        } else {
          Eigen::PartialPivLU<Mat> lu(v);
          inv = lu.inverse();
          if (!inv.allFinite()) throw std::domain_error("TrigPoly: singular matrix on inversion grid");
        }
        for (int p = 0; p < k_; ++p)
          for (int q = 0; q < k_; ++q) grid[p * k_ + q][flat] = inv(p, q);
      }
    }
    // samples are the synthesis sum f(x_j) = sum_m c_m e^{+i m x_j}; the
    // analysis transform e^{-i..}/L recovers c_m at index m mod ext
    const double inv_total = 1.0 / static_cast<double>(total);
    parallel_for(k_ * k_, [&](std::int64_t e) {
      fft_nd(grid[e], ext, -1);
      for (auto& v : grid[e]) v *= inv_total;
    });
    double peak = 0.0;
    for (const auto& g : grid)
      for (const auto& v : g) peak = std::max(peak, std::abs(v));
    const double floor = peak * kCoeffFloor;

    TrigPoly out(rank_, k_);
    std::vector<std::size_t> idx(rank_, 0);
    FreqVec f(rank_);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      for (int i = rank_ - 1; i >= 0; --i) {
        idx[i] = rem % ext[i];
        rem /= ext[i];
      }
      Mat m(k_, k_);
      double big = 0.0;
      for (int p = 0; p < k_; ++p)
        for (int q = 0; q < k_; ++q) {
          m(p, q) = grid[p * k_ + q][flat];
          big = std::max(big, std::abs(m(p, q)));
        }
      if (big <= floor) continue;
      for (int i = 0; i < rank_; ++i) {
        const long half = static_cast<long>(ext[i] / 2);
        long v = static_cast<long>(idx[i]);
        if (v > half) v -= static_cast<long>(ext[i]);
        f[i] = static_cast<int>(v);
      }
      out.coeffs_[f] = m;
    }

    TrigPoly residual = (*this) * out - TrigPoly::identity(rank_, k_);
    if (residual.coeff_l1() <= tol) return out;
    for (auto& e : ext) e *= 2;
  }
  throw std::runtime_error("TrigPoly: grid inverse did not converge; function too close to singular");
}

double TrigPoly::max_abs_diff(const TrigPoly& a, const TrigPoly& b) { return (a - b).max_abs(); }

}  // namespace pdolab
