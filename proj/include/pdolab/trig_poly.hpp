#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "pdolab/constants.hpp"

// Matrix-valued trigonometric polynomials on T^r: finitely supported maps
// from integer frequency vectors to k x k complex matrices.  Absent
// frequencies mean zero.  Addition, convolution product and derivatives are
// exact up to floating-point rounding of the entries; only grid-sampled
// inversion and the dense FFT product path apply a relative coefficient
// floor.

namespace pdolab {

using Mat = Eigen::MatrixXcd;
using FreqVec = std::vector<int>;

class TrigPoly {
 public:
  TrigPoly() : rank_(0), k_(1) {}
  TrigPoly(int rank, int k) : rank_(rank), k_(k) {}

  static TrigPoly zero(int rank, int k) { return TrigPoly(rank, k); }
  static TrigPoly constant(int rank, const Mat& value);
  static TrigPoly scalar_const(int rank, cplx value);
  static TrigPoly identity(int rank, int k);
  static TrigPoly monomial(int rank, const FreqVec& freq, const Mat& value);
  // cos/sin in a single variable, scalar valued (k = 1).
  static TrigPoly cosine(int rank, int var, double amplitude = 1.0);
  static TrigPoly sine(int rank, int var, double amplitude = 1.0);
  static TrigPoly harmonic(int rank, int var, int freq, cplx amplitude = 1.0);  // amplitude * e^{i freq x_var}

  int rank() const { return rank_; }
  int matrix_size() const { return k_; }
  const std::map<FreqVec, Mat>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t term_count() const { return coeffs_.size(); }

  // Coefficient access; returns the zero matrix when absent.
  Mat coeff(const FreqVec& freq) const;
  void set_coeff(const FreqVec& freq, const Mat& value);
  void add_coeff(const FreqVec& freq, const Mat& value);

  TrigPoly& operator+=(const TrigPoly& rhs);
  TrigPoly& operator-=(const TrigPoly& rhs);
  TrigPoly operator+(const TrigPoly& rhs) const;
  TrigPoly operator-(const TrigPoly& rhs) const;
  TrigPoly operator-() const;
  TrigPoly operator*(const TrigPoly& rhs) const;  // convolution, matrix product on coefficients
  TrigPoly scaled(cplx factor) const;

  // d/dx_var: multiplies the m-th coefficient by i*m_var.
  TrigPoly derivative(int var) const;
  // conjugate transpose, frequencies negated
  TrigPoly adjoint() const;
  // matrix trace, k -> 1
  TrigPoly matrix_trace() const;
  // promote scalar (k = 1) to k x k diagonal
  TrigPoly scalar_extend(int k) const;

  // all coefficients with freq[var] == value, with that slot zeroed
  TrigPoly slice_var(int var, int value) const;
  // frequencies occurring in the given variable, sorted ascending
  std::vector<int> var_freqs(int var) const;
  // multiply by e^{i freq x_var}
  TrigPoly shifted(int var, int freq) const;
  // remove a variable whose frequencies are all zero
  TrigPoly drop_var(int var) const;
  // insert a fresh variable (constant dependence) at position var
  TrigPoly insert_var(int var) const;

  Mat eval(const std::vector<double>& point) const;
  // evaluate variables [var0, var0+n) at the given angles, keep the rest
  TrigPoly partial_eval(int var0, const std::vector<double>& angles) const;

  double max_abs() const;          // max over coefficients of entrywise max
  double coeff_l1() const;         // sum of entrywise max over coefficients; sup-norm bound
  int bandwidth(int var) const;    // max |freq[var]|
  TrigPoly pruned(double rel_floor = kCoeffFloor) const;

  // Pointwise inverse sampled on a grid, coefficients below rel floor
  // dropped, verified by a residual check that doubles the grid on failure.
  TrigPoly grid_inverse(double tol = 1e-12) const;

  static double max_abs_diff(const TrigPoly& a, const TrigPoly& b);

 private:
  void check_compatible(const TrigPoly& rhs) const;
  TrigPoly mul_direct(const TrigPoly& rhs) const;
  TrigPoly mul_fft(const TrigPoly& rhs) const;

  int rank_;
  int k_;
  std::map<FreqVec, Mat> coeffs_;
};

}  // namespace pdolab
