#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>

namespace tritangle {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Local dimensions (n1, n2, n3) of the three parties A, B, C.
using Dims = std::array<int, 3>;

inline std::size_t total_dimension(const Dims& dims) {
  return static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]) *
         static_cast<std::size_t>(dims[2]);
}

/// Row-major flat index of |ijk>, party C least significant.
inline std::size_t flat_index(const Dims& dims, int i, int j, int k) {
  return (static_cast<std::size_t>(i) * dims[1] + j) * dims[2] + k;
}

inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace tritangle
