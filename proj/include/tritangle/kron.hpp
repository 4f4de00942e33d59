#pragma once

// Nearest Kronecker product approximation: vec, block rearrangement and the
// SVD factorization, plus the symmetric (Takagi) and Hermitian specializations.

#include "tritangle/types.hpp"

#include <vector>

namespace tritangle {

inline constexpr double kDefaultTrunc = 1e-12;

/// Column stacking.
CVector vec(const CMatrix& a);
CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols);

/// M~[i + d1*i', j + d2*j'] = M[i*d2 + j, i'*d2 + j'], so that
/// rearrange(X (x) Y) = vec(X) vec(Y)^T.
CMatrix rearrange(const CMatrix& m, int d1, int d2);
CMatrix unrearrange(const CMatrix& mt, int d1, int d2);

struct KronFactors {
  int d1 = 0;
  int d2 = 0;
  std::vector<CMatrix> x;
  std::vector<CMatrix> y;
  std::vector<double> sigmas;
  /// Singular values dropped by the truncation (for the error estimate).
  std::vector<double> dropped;

  int rank() const noexcept { return static_cast<int>(sigmas.size()); }
  /// sqrt(sum of dropped sigma^2).
  double truncation_error() const;
};

/// X_i = unvec(sqrt(s_i) u_i), Y_i = unvec(sqrt(s_i) conj(v_i)); terms with
/// s_i <= trunc * s_1 are dropped.
KronFactors nearest_kron(const CMatrix& m, int d1, int d2, double trunc = kDefaultTrunc);

CMatrix kron_sum(const KronFactors& f);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// S = sum_i sigma_i u_i u_i^T with orthonormal u_i, sigma descending.
struct TakagiFactors {
  std::vector<double> sigmas;
  CMatrix vectors;  // n x k

  CMatrix reconstruct() const;
};

/// Requires ||S - S^T||_max <= 1e-8 ||S||_F; values <= trunc * sigma_1 dropped.
TakagiFactors takagi_factor(const CMatrix& s, double trunc = kDefaultTrunc);

/// H = sum_i lambda_i w_i w_i^dagger, lambda descending, values below
/// trunc * lambda_1 dropped.
struct HermitianFactors {
  std::vector<double> lambdas;
  CMatrix vectors;  // n x k

  CMatrix reconstruct() const;
};

HermitianFactors hermitian_psd_factor(const CMatrix& h, double trunc = kDefaultTrunc);

/// Haar-distributed n x n unitary from the QR of a complex Gaussian matrix,
/// with the phases of R's diagonal moved into Q.
template <class Rng>
CMatrix haar_unitary(int n, Rng& rng);

}  // namespace tritangle

#include "tritangle/detail/haar.hpp"
