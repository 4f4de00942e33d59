#include "tritangle/kron.hpp"

#include "tritangle/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tritangle {

CVector vec(const CMatrix& a) {
  return Eigen::Map<const CVector>(a.data(), a.size());
}

CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (rows * cols != v.size()) {
    throw Error(ErrorCode::kLengthMismatch, "unvec: " + std::to_string(v.size()) +
                                                " entries cannot fill " + std::to_string(rows) +
                                                "x" + std::to_string(cols));
  }
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

namespace {

void check_blocks(const CMatrix& m, int d1, int d2) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kNotSquare, "matrix is " + std::to_string(m.rows()) + "x" +
                                           std::to_string(m.cols()));
  }
  if (d1 < 1 || d2 < 1 || static_cast<Eigen::Index>(d1) * d2 != m.rows()) {
    throw Error(ErrorCode::kBadBlockDims, "block dims (" + std::to_string(d1) + "," +
                                              std::to_string(d2) + ") do not tile side " +
                                              std::to_string(m.rows()));
  }
}

}  // namespace

CMatrix rearrange(const CMatrix& m, int d1, int d2) {
  check_blocks(m, d1, d2);
  CMatrix out(d1 * d1, d2 * d2);
  for (int ip = 0; ip < d1; ++ip)
    for (int i = 0; i < d1; ++i)
      for (int jp = 0; jp < d2; ++jp)
        for (int j = 0; j < d2; ++j) out(i + d1 * ip, j + d2 * jp) = m(i * d2 + j, ip * d2 + jp);
  return out;
}

CMatrix unrearrange(const CMatrix& mt, int d1, int d2) {
  if (d1 < 1 || d2 < 1 || mt.rows() != static_cast<Eigen::Index>(d1) * d1 ||
      mt.cols() != static_cast<Eigen::Index>(d2) * d2) {
    throw Error(ErrorCode::kBadBlockDims, "rearranged matrix shape does not match block dims");
  }
  CMatrix m(d1 * d2, d1 * d2);
  for (int ip = 0; ip < d1; ++ip)
    for (int i = 0; i < d1; ++i)
      for (int jp = 0; jp < d2; ++jp)
        for (int j = 0; j < d2; ++j) m(i * d2 + j, ip * d2 + jp) = mt(i + d1 * ip, j + d2 * jp);
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double KronFactors::truncation_error() const {
  double s = 0.0;
  for (double v : dropped) s += v * v;
  return std::sqrt(s);
}

KronFactors nearest_kron(const CMatrix& m, int d1, int d2, double trunc) {
  const CMatrix mt = rearrange(m, d1, d2);
  KronFactors f;
  f.d1 = d1;
  f.d2 = d2;
  Eigen::BDCSVD<CMatrix> svd(mt, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& s = svd.singularValues();
  if (s.size() == 0) return f;
  const double s1 = s[0];
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s1 <= 0.0 || s[i] <= trunc * s1) {
      f.dropped.push_back(s[i]);
      continue;
    }
    const double root = std::sqrt(s[i]);
    f.x.push_back(unvec(root * svd.matrixU().col(i), d1, d1));
    f.y.push_back(unvec(root * svd.matrixV().col(i).conjugate(), d2, d2));
    f.sigmas.push_back(s[i]);
  }
  return f;
}

CMatrix kron_sum(const KronFactors& f) {
  CMatrix out = CMatrix::Zero(f.d1 * f.d2, f.d1 * f.d2);
  for (std::size_t i = 0; i < f.x.size(); ++i) out += kron(f.x[i], f.y[i]);
  return out;
}

CMatrix TakagiFactors::reconstruct() const {
  CMatrix out = CMatrix::Zero(vectors.rows(), vectors.rows());
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    const auto u = vectors.col(static_cast<Eigen::Index>(i));
    out += sigmas[i] * u * u.transpose();
  }
  return out;
}

TakagiFactors takagi_factor(const CMatrix& s, double trunc) {
  if (s.rows() != s.cols()) {
    throw Error(ErrorCode::kNotSquare, "takagi_factor needs a square matrix");
  }
  const Eigen::Index n = s.rows();
  const double fro = s.norm();
  const double asym = max_abs(s - s.transpose());
  if (asym > 1e-8 * fro) {
    throw Error(ErrorCode::kNotSymmetric, "||S - S^T||_max = " + std::to_string(asym) +
                                              " vs ||S||_F = " + std::to_string(fro));
  }
  TakagiFactors out;
  out.vectors.resize(n, 0);
  if (n == 0 || fro == 0.0) return out;
  const CMatrix sym = 0.5 * (s + s.transpose());
  // Real embedding [[X, Y], [Y, -X]]: eigenvector [p; q] with eigenvalue
  // sigma > 0 gives u = p + iq with S conj(u) = sigma u.
  RMatrix emb(2 * n, 2 * n);
  emb.topLeftCorner(n, n) = sym.real();
  emb.topRightCorner(n, n) = sym.imag();
  emb.bottomLeftCorner(n, n) = sym.imag();
  emb.bottomRightCorner(n, n) = -sym.real();
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(emb);
  const RVector& vals = eig.eigenvalues();  // ascending
  const double top = vals[2 * n - 1];
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 2 * n - 1; i >= n; --i) {
    if (vals[i] <= trunc * top) break;
    keep.push_back(i);
  }
  out.vectors.resize(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    const auto v = eig.eigenvectors().col(keep[c]);
    for (Eigen::Index i = 0; i < n; ++i) {
      out.vectors(i, static_cast<Eigen::Index>(c)) = Complex(v[i], v[n + i]);
    }
    out.sigmas.push_back(vals[keep[c]]);
  }
  return out;
}

CMatrix HermitianFactors::reconstruct() const {
  CMatrix out = CMatrix::Zero(vectors.rows(), vectors.rows());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const auto w = vectors.col(static_cast<Eigen::Index>(i));
    out += lambdas[i] * w * w.adjoint();
  }
  return out;
}

HermitianFactors hermitian_psd_factor(const CMatrix& h, double trunc) {
  if (h.rows() != h.cols()) {
    throw Error(ErrorCode::kNotSquare, "hermitian_psd_factor needs a square matrix");
  }
  const double fro = h.norm();
  const double herm = max_abs(h - h.adjoint());
  if (herm > 1e-8 * fro) {
    throw Error(ErrorCode::kNotHermitian, "||H - H^dagger||_max = " + std::to_string(herm) +
                                              " vs ||H||_F = " + std::to_string(fro));
  }
  HermitianFactors out;
  out.vectors.resize(h.rows(), 0);
  if (h.rows() == 0 || fro == 0.0) return out;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (h + h.adjoint()));
  const RVector& vals = eig.eigenvalues();
  if (vals[0] < -1e-8 * fro) {
    throw Error(ErrorCode::kNotPSD, "smallest eigenvalue " + std::to_string(vals[0]) +
                                        " vs ||H||_F = " + std::to_string(fro));
  }
  const Eigen::Index n = h.rows();
  const double top = vals[n - 1];
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    if (vals[i] <= trunc * top) break;
    keep.push_back(i);
  }
  out.vectors.resize(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    out.vectors.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(keep[c]);
    out.lambdas.push_back(vals[keep[c]]);
  }
  return out;
}

}  // namespace tritangle
