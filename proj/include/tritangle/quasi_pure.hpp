#pragma once

// Quasi-pure approximation: the r x r tau matrix built from the second-order
// A elements around the dominant eigenvector, and F_a from its singular values.
// tau is the second-order expansion of sqrt(Q) where F^4 = |Q|^2 on a single
// cube; tau_11 = A^{1/4} and tau is symmetric by construction.

#include "tritangle/state.hpp"

#include <cstdint>

namespace tritangle {

inline constexpr double kDominantTangleMin = 1e-14;

struct TauOptions {
  /// Rotations of a degenerate leading eigenspace tried by the tie break
  /// (candidate 0 is the unrotated basis).
  int tie_break_rotations = 64;
  std::uint64_t seed = 0;
  /// AsymmetryTooLarge is raised if ||tau - tau^T||_max exceeds
  /// limit * ||tau||_max before symmetrization.
  double asymmetry_limit = 1e-8;
  int threads = 1;
};

struct TauMatrix {
  CMatrix tau;  // symmetric
  /// ||tau - tau^T||_max before symmetrization.
  double asymmetry = 0.0;
  /// A[1,1,1,1;1,1,1,1] for the chosen dominant vector.
  double a1111 = 0.0;
  int rank = 0;
  /// Size of the leading eigenvalue cluster; > 1 means the tie break ran.
  int leading_multiplicity = 1;

  bool degenerate_leading() const noexcept { return leading_multiplicity > 1; }
};

/// Throws DominantTangleZero when A[1,1,1,1;1,1,1,1] <= 1e-14.
TauMatrix build_tau(const Spectrum& spec, const TauOptions& opts = {});

/// max(l1 - sum_{i>1} l_i, 0) over singular values of tau.
double f_a(const TauMatrix& t);
double f_a(const CMatrix& tau);

}  // namespace tritangle
