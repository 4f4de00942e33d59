#pragma once

// Domain types for tripartite states: pure amplitude tensors, density
// matrices with their spectra, and the 2x2x2 "cube" substates selected by one
// index pair per party.

#include "tritangle/types.hpp"

#include <array>
#include <memory>
#include <span>
#include <vector>

namespace tritangle {

inline constexpr double kValidationTol = 1e-10;
inline constexpr double kDefaultRankCutoff = 1e-12;
inline constexpr double kDegeneracyTol = 1e-10;

/// Validates dims: every party needs at least two levels.
void validate_dims(const Dims& dims);

class PureState {
 public:
  /// Checks shape and dims; the `normalized` flag is set by the norm test and
  /// the amplitudes are never rescaled.
  static PureState validate(const Dims& dims, CVector amplitudes, double tol = kValidationTol);

  const Dims& dims() const noexcept { return dims_; }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  bool normalized() const noexcept { return normalized_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }

  Complex operator()(int i, int j, int k) const {
    return amplitudes_[static_cast<Eigen::Index>(flat_index(dims_, i, j, k))];
  }

  PureState scaled(Complex c) const;

 private:
  PureState(const Dims& dims, CVector amplitudes, bool normalized)
      : dims_(dims), amplitudes_(std::move(amplitudes)), normalized_(normalized) {}

  Dims dims_;
  CVector amplitudes_;
  bool normalized_;
};

PureState validate_pure(const Dims& dims, std::span<const Complex> amplitudes,
                        double tol = kValidationTol);

/// Hermitian, positive semidefinite, unit-trace density matrix. Validation
/// runs the eigendecomposition once and caches it.
class MixedState {
 public:
  static MixedState validate(const Dims& dims, const CMatrix& matrix, double tol = kValidationTol);

  const Dims& dims() const noexcept { return dims_; }
  const CMatrix& matrix() const noexcept { return matrix_; }
  /// All d eigenvalues, descending.
  const RVector& eigenvalues() const noexcept { return cache_->values; }
  /// Columns match eigenvalues().
  const CMatrix& eigenvectors() const noexcept { return cache_->vectors; }

 private:
  struct Decomposition {
    RVector values;
    CMatrix vectors;
  };

  MixedState(const Dims& dims, CMatrix matrix, std::shared_ptr<const Decomposition> cache)
      : dims_(dims), matrix_(std::move(matrix)), cache_(std::move(cache)) {}

  Dims dims_;
  CMatrix matrix_;
  std::shared_ptr<const Decomposition> cache_;
};

/// Retained part of an eigendecomposition: eigenvalues strictly above the
/// cutoff, in descending order, with orthonormal eigenvector columns.
struct Spectrum {
  Dims dims{};
  RVector eigenvalues;
  CMatrix eigenvectors;  // d x r
  double discarded_mass = 0.0;

  int rank() const noexcept { return static_cast<int>(eigenvalues.size()); }

  /// Builds a spectrum from explicit parts (used for basis rotations in
  /// tests and for the quasi-pure tie break). Checks shape, ordering and
  /// orthonormality.
  static Spectrum from_parts(const Dims& dims, RVector eigenvalues, CMatrix eigenvectors);
};

Spectrum spectral_decompose(const MixedState& rho, double cutoff = kDefaultRankCutoff);

/// Replaces the basis of every cluster of eigenvalues closer than `tol` by a
/// basis fixed only by the cluster's projector, so that downstream
/// quantities do not depend on which orthonormal basis a solver returned.
Spectrum canonicalize_degenerate(const Spectrum& spec, double tol = kDegeneracyTol);

/// Sum of mu_i v_i v_i^dagger.
CMatrix reconstruct(const Spectrum& spec);

/// One retained index pair (p < q) per party.
struct CubeSelector {
  std::array<std::array<int, 2>, 3> pairs{};

  friend bool operator==(const CubeSelector&, const CubeSelector&) = default;
};

/// Eight amplitudes b_{xyz}, stored at x*4 + y*2 + z.
struct Cube {
  std::array<Complex, 8> b{};

  Complex& operator()(int x, int y, int z) { return b[static_cast<std::size_t>(x * 4 + y * 2 + z)]; }
  Complex operator()(int x, int y, int z) const {
    return b[static_cast<std::size_t>(x * 4 + y * 2 + z)];
  }
  double max_abs() const;
  Cube scaled(Complex c) const;
};

/// All selectors, party-1 pair varying slowest, each party's pairs in
/// lexicographic order.
std::vector<CubeSelector> enumerate_selectors(const Dims& dims);

std::size_t selector_count(const Dims& dims);

Cube extract_cube(std::span<const Complex> amplitudes, const Dims& dims, const CubeSelector& sel);
Cube extract_cube(const CVector& amplitudes, const Dims& dims, const CubeSelector& sel);
Cube extract_cube(const PureState& state, const CubeSelector& sel);

/// Party permutation: party q of the result is party perm[q] of the input
/// (0-based). Amplitudes are moved, never recomputed.
using PartyPermutation = std::array<int, 3>;

bool is_permutation(const PartyPermutation& perm);
PureState permute_parties(const PureState& state, const PartyPermutation& perm);
CubeSelector permute_selector(const CubeSelector& sel, const PartyPermutation& perm);
Cube permute_cube(const Cube& cube, const PartyPermutation& perm);

/// (u1 ⊗ u2 ⊗ u3) applied to the amplitude vector.
PureState apply_local_unitary(const PureState& state, const CMatrix& u1, const CMatrix& u2,
                              const CMatrix& u3, double tol = kValidationTol);

}  // namespace tritangle
