#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "entgeo/qstate.hpp"

namespace testing_support {

using entgeo::Complex;
using entgeo::ComplexMatrix;
using entgeo::ComplexVector;

// Test-side generators use std::mt19937_64, independent of the library's sampler.
inline ComplexVector gaussian_ket(int d, std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexVector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(n(gen), n(gen));
  return v / v.norm();
}

inline ComplexMatrix gaussian_mixed(int d, std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(n(gen), n(gen));
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return 0.5 * (m + m.adjoint());
}

inline entgeo::DensityOperator mixed_state(const entgeo::Dims& dims, std::mt19937_64& gen) {
  return entgeo::DensityOperator(gaussian_mixed(entgeo::product(dims), gen), dims);
}

inline entgeo::DensityOperator pure_state(const entgeo::Dims& dims, std::mt19937_64& gen) {
  return entgeo::DensityOperator::from_ket(gaussian_ket(entgeo::product(dims), gen), dims);
}

// Kronecker product written out entry by entry.
inline ComplexMatrix kron_oracle(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

}  // namespace testing_support
