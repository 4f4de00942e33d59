#include "tritangle/state.hpp"

#include "tritangle/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tritangle {

namespace {

std::string dims_string(const Dims& dims) {
  return "(" + std::to_string(dims[0]) + "," + std::to_string(dims[1]) + "," +
         std::to_string(dims[2]) + ")";
}

}  // namespace

void validate_dims(const Dims& dims) {
  for (int n : dims) {
    if (n < 2) {
      throw Error(ErrorCode::kDimensionTooSmall,
                  "every party needs dimension >= 2, got " + dims_string(dims));
    }
  }
}

PureState PureState::validate(const Dims& dims, CVector amplitudes, double tol) {
  validate_dims(dims);
  const std::size_t d = total_dimension(dims);
  if (static_cast<std::size_t>(amplitudes.size()) != d) {
    throw Error(ErrorCode::kLengthMismatch, "expected " + std::to_string(d) +
                                                " amplitudes for dims " + dims_string(dims) +
                                                ", got " + std::to_string(amplitudes.size()));
  }
  const bool normalized = std::abs(amplitudes.squaredNorm() - 1.0) <= tol;
  return PureState(dims, std::move(amplitudes), normalized);
}

PureState PureState::scaled(Complex c) const {
  CVector a = amplitudes_ * c;
  const bool normalized = std::abs(a.squaredNorm() - 1.0) <= kValidationTol;
  return PureState(dims_, std::move(a), normalized);
}

PureState validate_pure(const Dims& dims, std::span<const Complex> amplitudes, double tol) {
  CVector a(static_cast<Eigen::Index>(amplitudes.size()));
  std::copy(amplitudes.begin(), amplitudes.end(), a.data());
  return PureState::validate(dims, std::move(a), tol);
}

MixedState MixedState::validate(const Dims& dims, const CMatrix& matrix, double tol) {
  validate_dims(dims);
  const auto d = static_cast<Eigen::Index>(total_dimension(dims));
  if (matrix.rows() != d || matrix.cols() != d) {
    throw Error(ErrorCode::kLengthMismatch, "density matrix must be " + std::to_string(d) + "x" +
                                                std::to_string(d) + " for dims " +
                                                dims_string(dims));
  }
  const double herm = max_abs(matrix - matrix.adjoint());
  if (herm > tol) {
    throw Error(ErrorCode::kNotHermitian, "max |rho - rho^dagger| = " + std::to_string(herm));
  }
  const Complex tr = matrix.trace();
  if (std::abs(tr - 1.0) > tol) {
    throw Error(ErrorCode::kNotUnitTrace, "trace = " + std::to_string(tr.real()));
  }
  CMatrix herm_part = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm_part);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kInternalConsistency, "eigendecomposition failed");
  }
  // Eigen returns ascending order.
  auto cache = std::make_shared<Decomposition>();
  cache->values = solver.eigenvalues().reverse();
  cache->vectors = solver.eigenvectors().rowwise().reverse();
  if (cache->values.size() > 0 && cache->values.minCoeff() < -tol) {
    throw Error(ErrorCode::kNotPositive,
                "smallest eigenvalue " + std::to_string(cache->values.minCoeff()));
  }
  return MixedState(dims, matrix, std::move(cache));
}

Spectrum Spectrum::from_parts(const Dims& dims, RVector eigenvalues, CMatrix eigenvectors) {
  validate_dims(dims);
  const auto d = static_cast<Eigen::Index>(total_dimension(dims));
  if (eigenvectors.rows() != d || eigenvectors.cols() != eigenvalues.size()) {
    throw Error(ErrorCode::kLengthMismatch, "eigenvector block has wrong shape");
  }
  for (Eigen::Index i = 1; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] > eigenvalues[i - 1]) {
      throw Error(ErrorCode::kBadParameter, "eigenvalues must be descending");
    }
  }
  const auto r = eigenvalues.size();
  const double orth = max_abs(eigenvectors.adjoint() * eigenvectors - CMatrix::Identity(r, r));
  if (orth > 1e-10) {
    throw Error(ErrorCode::kBadParameter, "eigenvectors not orthonormal: " + std::to_string(orth));
  }
  Spectrum s;
  s.dims = dims;
  s.eigenvalues = std::move(eigenvalues);
  s.eigenvectors = std::move(eigenvectors);
  s.discarded_mass = std::max(0.0, 1.0 - s.eigenvalues.sum());
  return s;
}

Spectrum spectral_decompose(const MixedState& rho, double cutoff) {
  const RVector& values = rho.eigenvalues();
  Eigen::Index r = 0;
  while (r < values.size() && values[r] > cutoff) ++r;
  Spectrum s;
  s.dims = rho.dims();
  s.eigenvalues = values.head(r);
  s.eigenvectors = rho.eigenvectors().leftCols(r);
  double discarded = 0.0;
  for (Eigen::Index i = r; i < values.size(); ++i) discarded += std::max(values[i], 0.0);
  s.discarded_mass = discarded;
  return canonicalize_degenerate(s);
}

Spectrum canonicalize_degenerate(const Spectrum& spec, double tol) {
  Spectrum out = spec;
  const Eigen::Index r = spec.eigenvalues.size();
  const Eigen::Index d = spec.eigenvectors.rows();
  Eigen::Index start = 0;
  while (start < r) {
    Eigen::Index end = start + 1;
    while (end < r && spec.eigenvalues[end - 1] - spec.eigenvalues[end] <= tol) ++end;
    const Eigen::Index k = end - start;
    if (k > 1) {
      const CMatrix basis = spec.eigenvectors.middleCols(start, k);
      CMatrix q(d, k);
      Eigen::Index found = 0;
      // Residual norms summed over all e_i equal the missing dimension, so
      // some residual is at least 1/sqrt(d); the 1e-3 acceptance never stalls.
      for (Eigen::Index i = 0; i < d && found < k; ++i) {
        CVector v = basis * basis.row(i).adjoint();  // P e_i
        for (Eigen::Index t = 0; t < found; ++t) v -= q.col(t) * q.col(t).dot(v);
        const double nv = v.norm();
        if (nv > 1e-3) q.col(found++) = v / nv;
      }
      if (found == k) {
        // One re-orthogonalization pass.
        for (Eigen::Index t = 0; t < k; ++t) {
          CVector v = q.col(t);
          for (Eigen::Index s = 0; s < t; ++s) v -= q.col(s) * q.col(s).dot(v);
          q.col(t) = v.normalized();
        }
        out.eigenvectors.middleCols(start, k) = q;
        const double mean = spec.eigenvalues.segment(start, k).mean();
        out.eigenvalues.segment(start, k).setConstant(mean);
      }
    }
    start = end;
  }
  return out;
}

CMatrix reconstruct(const Spectrum& spec) {
  return spec.eigenvectors * spec.eigenvalues.cast<Complex>().asDiagonal() *
         spec.eigenvectors.adjoint();
}

double Cube::max_abs() const {
  double m = 0.0;
  for (const Complex& v : b) m = std::max(m, std::abs(v));
  return m;
}

Cube Cube::scaled(Complex c) const {
  Cube out;
  for (std::size_t i = 0; i < 8; ++i) out.b[i] = b[i] * c;
  return out;
}

namespace {

std::vector<std::array<int, 2>> party_pairs(int n) {
  std::vector<std::array<int, 2>> pairs;
  pairs.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) pairs.push_back({p, q});
  }
  return pairs;
}

}  // namespace

std::size_t selector_count(const Dims& dims) {
  std::size_t count = 1;
  for (int n : dims) count *= static_cast<std::size_t>(n * (n - 1) / 2);
  return count;
}

std::vector<CubeSelector> enumerate_selectors(const Dims& dims) {
  const auto p1 = party_pairs(dims[0]);
  const auto p2 = party_pairs(dims[1]);
  const auto p3 = party_pairs(dims[2]);
  std::vector<CubeSelector> out;
  out.reserve(p1.size() * p2.size() * p3.size());
  for (const auto& a : p1) {
    for (const auto& b : p2) {
      for (const auto& c : p3) out.push_back(CubeSelector{{a, b, c}});
    }
  }
  return out;
}

Cube extract_cube(std::span<const Complex> amplitudes, const Dims& dims, const CubeSelector& sel) {
  for (std::size_t p = 0; p < 3; ++p) {
    const auto& pr = sel.pairs[p];
    if (pr[0] < 0 || pr[0] >= pr[1] || pr[1] >= dims[p]) {
      throw Error(ErrorCode::kSelectorOutOfRange,
                  "selector pair (" + std::to_string(pr[0]) + "," + std::to_string(pr[1]) +
                      ") invalid for party " + std::to_string(p + 1));
    }
  }
  if (amplitudes.size() != total_dimension(dims)) {
    throw Error(ErrorCode::kLengthMismatch, "amplitude vector does not match dims");
  }
  Cube c;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int z = 0; z < 2; ++z) {
        c(x, y, z) = amplitudes[flat_index(dims, sel.pairs[0][x], sel.pairs[1][y], sel.pairs[2][z])];
      }
    }
  }
  return c;
}

Cube extract_cube(const CVector& amplitudes, const Dims& dims, const CubeSelector& sel) {
  return extract_cube(std::span<const Complex>(amplitudes.data(), static_cast<std::size_t>(amplitudes.size())),
                      dims, sel);
}

Cube extract_cube(const PureState& state, const CubeSelector& sel) {
  return extract_cube(state.amplitudes(), state.dims(), sel);
}

bool is_permutation(const PartyPermutation& perm) {
  std::array<int, 3> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  return sorted == std::array<int, 3>{0, 1, 2};
}

PureState permute_parties(const PureState& state, const PartyPermutation& perm) {
  if (!is_permutation(perm)) {
    throw Error(ErrorCode::kBadParameter, "not a permutation of {0,1,2}");
  }
  const Dims& in = state.dims();
  const Dims out{in[perm[0]], in[perm[1]], in[perm[2]]};
  CVector a(state.amplitudes().size());
  std::array<int, 3> idx{};
  for (idx[0] = 0; idx[0] < in[0]; ++idx[0]) {
    for (idx[1] = 0; idx[1] < in[1]; ++idx[1]) {
      for (idx[2] = 0; idx[2] < in[2]; ++idx[2]) {
        const auto dst = flat_index(out, idx[perm[0]], idx[perm[1]], idx[perm[2]]);
        a[static_cast<Eigen::Index>(dst)] = state(idx[0], idx[1], idx[2]);
      }
    }
  }
  return PureState::validate(out, std::move(a));
}

CubeSelector permute_selector(const CubeSelector& sel, const PartyPermutation& perm) {
  return CubeSelector{{sel.pairs[perm[0]], sel.pairs[perm[1]], sel.pairs[perm[2]]}};
}

Cube permute_cube(const Cube& cube, const PartyPermutation& perm) {
  Cube out;
  std::array<int, 3> idx{};
  for (idx[0] = 0; idx[0] < 2; ++idx[0]) {
    for (idx[1] = 0; idx[1] < 2; ++idx[1]) {
      for (idx[2] = 0; idx[2] < 2; ++idx[2]) {
        out(idx[perm[0]], idx[perm[1]], idx[perm[2]]) = cube(idx[0], idx[1], idx[2]);
      }
    }
  }
  return out;
}

PureState apply_local_unitary(const PureState& state, const CMatrix& u1, const CMatrix& u2,
                              const CMatrix& u3, double tol) {
  const Dims& dims = state.dims();
  const std::array<const CMatrix*, 3> us{&u1, &u2, &u3};
  for (std::size_t p = 0; p < 3; ++p) {
    const CMatrix& u = *us[p];
    if (u.rows() != dims[p] || u.cols() != dims[p]) {
      throw Error(ErrorCode::kDimMismatch, "unitary for party " + std::to_string(p + 1) +
                                               " must be " + std::to_string(dims[p]) + "x" +
                                               std::to_string(dims[p]));
    }
    const double dev = max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()));
    if (dev > tol) {
      throw Error(ErrorCode::kNotUnitary, "party " + std::to_string(p + 1) +
                                              " deviation " + std::to_string(dev));
    }
  }
  // Contract one party at a time on the (n1, n2, n3) tensor.
  const int n1 = dims[0], n2 = dims[1], n3 = dims[2];
  CVector a = state.amplitudes();
  CVector t(a.size());
  t.setZero();
  for (int i = 0; i < n1; ++i)
    for (int ip = 0; ip < n1; ++ip) {
      const Complex c = u1(i, ip);
      if (c == Complex(0.0)) continue;
      for (int jk = 0; jk < n2 * n3; ++jk) t[i * n2 * n3 + jk] += c * a[ip * n2 * n3 + jk];
    }
  a = t;
  t.setZero();
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      for (int jp = 0; jp < n2; ++jp) {
        const Complex c = u2(j, jp);
        if (c == Complex(0.0)) continue;
        for (int k = 0; k < n3; ++k) t[(i * n2 + j) * n3 + k] += c * a[(i * n2 + jp) * n3 + k];
      }
  a = t;
  t.setZero();
  for (int ij = 0; ij < n1 * n2; ++ij)
    for (int k = 0; k < n3; ++k)
      for (int kp = 0; kp < n3; ++kp) t[ij * n3 + k] += u3(k, kp) * a[ij * n3 + kp];
  return PureState::validate(dims, std::move(t));
}

}  // namespace tritangle
