#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "modweyl/algebra.hpp"

namespace testing_support {

using modweyl::Complex;
using modweyl::Mat;

inline Mat mat2(Complex a, Complex b, Complex c, Complex d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Mat pauli_x() { return mat2(0.0, 1.0, 1.0, 0.0); }
inline Mat pauli_z() { return mat2(1.0, 0.0, 0.0, -1.0); }
inline Mat hadamard() { return mat2(1.0, 1.0, 1.0, -1.0) / std::sqrt(2.0); }
inline Mat diag2(Complex a, Complex b) { return mat2(a, 0.0, 0.0, b); }
inline Complex root_of_unity(int n, int k = 1) { return std::polar(1.0, 2.0 * std::numbers::pi * k / n); }

/// Largest entrywise difference; independent of the library's op_norm.
inline double max_abs(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace testing_support
