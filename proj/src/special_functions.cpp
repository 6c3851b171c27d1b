#include "pdolab/special_functions.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pdolab {

double bernoulli_number(int n) {
  // even entries B_0..B_30; odd entries beyond B_1 vanish
  static const std::array<double, 16> even = {
      1.0,
      1.0 / 6.0,
      -1.0 / 30.0,
      1.0 / 42.0,
      -1.0 / 30.0,
      5.0 / 66.0,
      -691.0 / 2730.0,
      7.0 / 6.0,
      -3617.0 / 510.0,
      43867.0 / 798.0,
      -174611.0 / 330.0,
      854513.0 / 138.0,
      -236364091.0 / 2730.0,
      8553103.0 / 6.0,
      -23749461029.0 / 870.0,
      8615841276005.0 / 14322.0,
  };
  if (n < 0) throw std::invalid_argument("bernoulli_number: negative index");
  if (n == 1) return -0.5;
  if (n % 2 == 1) return 0.0;
  if (n / 2 >= static_cast<int>(even.size())) throw std::invalid_argument("bernoulli_number: index beyond table");
  return even[n / 2];
}

double zeta_nonpositive(int minus_s) {
  if (minus_s < 0) throw std::invalid_argument("zeta_nonpositive: argument must be <= 0");
  if (minus_s == 0) return -0.5;  // zeta(-n) = -B^+_{n+1}/(n+1); only n = 0 sees the sign of B_1
  return -bernoulli_number(minus_s + 1) / static_cast<double>(minus_s + 1);
}

double zeta_positive(int m) {
  if (m < 2) throw std::invalid_argument("zeta_positive: argument must be >= 2");
  if (m > 60) return 1.0;  // below double resolution of the tail

  // partial sums at N, 2N, 4N, ... with tail exponents 1-m, -m, -m-1, ...
  constexpr int kLevels = 7;
  const long n0 = 128;
  std::array<double, kLevels> row;
  long upto = 0;
  double s = 0.0;
  for (int i = 0; i < kLevels; ++i) {
    const long target = n0 << i;
    for (long n = upto + 1; n <= target; ++n) s += std::pow(static_cast<double>(n), -static_cast<double>(m));
    upto = target;
    row[i] = s;
  }
  for (int j = 0; j < kLevels - 1; ++j) {
    // eliminate the c * N^e tail term between consecutive levels
    const double e = static_cast<double>(1 - m - j);
    const double ratio = std::exp2(e);
    for (int i = 0; i < kLevels - 1 - j; ++i) row[i] = row[i + 1] - (row[i + 1] - row[i]) * ratio / (ratio - 1.0);
  }
  return row[0];
}

double harmonic_number(int n) {
  double h = 0.0;
  for (int i = 1; i <= n; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

}  // namespace pdolab
