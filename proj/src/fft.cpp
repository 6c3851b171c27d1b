#include "pdolab/fft.hpp"

#include <cmath>
#include <stdexcept>

#include "pdolab/constants.hpp"

namespace pdolab {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_pow2(std::complex<double>* a, std::size_t n, int sign) {
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft_pow2: length must be a power of two");
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * kTwoPi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (sign > 0) {
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) a[i] *= inv;
  }
}

void fft_nd(std::vector<std::complex<double>>& data, const std::vector<std::size_t>& ext, int sign) {
  std::size_t total = 1;
  for (std::size_t e : ext) total *= e;
  if (data.size() != total) throw std::invalid_argument("fft_nd: extent mismatch");
  if (total == 0) return;

  std::vector<std::complex<double>> scratch;
  std::size_t stride = 1;  // stride of the current axis, fastest axis last
  for (std::size_t ax = ext.size(); ax-- > 0;) {
    const std::size_t len = ext[ax];
    if (len > 1) {
      scratch.resize(len);
      const std::size_t block = stride * len;
      for (std::size_t base = 0; base < total; base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
          std::complex<double>* p = data.data() + base + off;
          if (stride == 1) {
            fft_pow2(p, len, sign);
          } else {
            for (std::size_t i = 0; i < len; ++i) scratch[i] = p[i * stride];
            fft_pow2(scratch.data(), len, sign);
            for (std::size_t i = 0; i < len; ++i) p[i * stride] = scratch[i];
          }
        }
      }
    }
    stride *= len;
  }
}

}  // namespace pdolab
