#pragma once

#include <complex>
#include <cstddef>
#include <vector>

// Power-of-two complex FFT and n-dimensional convolution helper used by the
// dense trigonometric-polynomial product path.  Hand-rolled so results are
// bit-reproducible and plan-free across threads.

namespace pdolab {

// In-place radix-2 FFT; n must be a power of two. sign = -1 forward, +1 inverse.
// The inverse applies the 1/n factor.
void fft_pow2(std::complex<double>* data, std::size_t n, int sign);

// Strided transform of every axis of a dense rank-d array stored row-major
// with extents `ext`.
void fft_nd(std::vector<std::complex<double>>& data, const std::vector<std::size_t>& ext, int sign);

std::size_t next_pow2(std::size_t n);

}  // namespace pdolab
