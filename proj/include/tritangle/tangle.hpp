#pragma once

// Residual tangle of 2x2x2 cubes and the grid aggregate F over all cubes of
// a pure state.

#include "tritangle/kernels.hpp"
#include "tritangle/state.hpp"

#include <Eigen/Dense>

#include <vector>

namespace tritangle {

using Matrix2c = Eigen::Matrix2cd;

/// sigma_y (x) sigma_y.
Eigen::Matrix4d sigma_yy();

/// |d1 - 2 d2 + 4 d3|.
double cube_tangle(const Cube& c);

/// w(j,r) = b00j b11r + b11j b00r - b01j b10r - b10j b01r; symmetric in (j,r).
Matrix2c cube_w(const Cube& c);

/// R_ij = sum_r w(j,r) conj(w(i,r)).
Matrix2c cube_R(const Cube& c);

/// det R, clamped at 0 when the negative part is below 1e-12 * scale^8.
/// Throws InternalConsistency for anything more negative.
double cube_f(const Cube& c);

/// Clamp rule shared by the scalar and batched paths.
double clamp_f(double raw, double scale);

/// vec(block_h(ca))^T sigma_yy vec(block_k(cb)); block_h[x][y] = b_{xyh}.
Complex cube_bilinear(const Cube& ca, const Cube& cb, int h, int k);

/// All four m_hk(ca, cb) at once, m(h, k).
Matrix2c cube_bilinear_all(const Cube& ca, const Cube& cb);

/// Per-cube f in enumerate_selectors order.
std::vector<double> cube_f_list(const PureState& state);
std::vector<double> cube_f_list(const CVector& amplitudes, const Dims& dims);

/// Sum of f over all cubes with fixed-order pairwise summation.
double tangle_sum(const CVector& amplitudes, const Dims& dims);

/// F = (sum_cubes f)^(1/4).
double F_pure(const PureState& state);
double F_pure(const CVector& amplitudes, const Dims& dims);

/// Pairwise (cascade) summation in fixed order.
double pairwise_sum(const double* values, std::size_t n);

/// Evaluates F for many states of the same dims through one batched kernel
/// call. `states` is d x N, one state per column.
std::vector<double> F_pure_columns(const CMatrix& states, const Dims& dims,
                                   kernels::Isa isa = kernels::detect_isa());

}  // namespace tritangle
