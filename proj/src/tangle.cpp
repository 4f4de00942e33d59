#include "tritangle/tangle.hpp"

#include "tritangle/error.hpp"

#include <cmath>
#include <string>

namespace tritangle {

Eigen::Matrix4d sigma_yy() {
  Eigen::Matrix4d s;
  s << 0, 0, 0, -1,  //
      0, 0, 1, 0,    //
      0, 1, 0, 0,    //
      -1, 0, 0, 0;
  return s;
}

double cube_tangle(const Cube& c) {
  const Complex a000 = c(0, 0, 0), a001 = c(0, 0, 1), a010 = c(0, 1, 0), a011 = c(0, 1, 1);
  const Complex a100 = c(1, 0, 0), a101 = c(1, 0, 1), a110 = c(1, 1, 0), a111 = c(1, 1, 1);
  const Complex d1 = a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 +
                     a010 * a010 * a101 * a101 + a100 * a100 * a011 * a011;
  const Complex d2 = a000 * a111 * a011 * a100 + a000 * a111 * a101 * a010 +
                     a000 * a111 * a110 * a001 + a011 * a100 * a101 * a010 +
                     a011 * a100 * a110 * a001 + a101 * a010 * a110 * a001;
  const Complex d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
  return std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

Matrix2c cube_w(const Cube& c) {
  Matrix2c w;
  for (int j = 0; j < 2; ++j) {
    for (int r = 0; r < 2; ++r) {
      w(j, r) = c(0, 0, j) * c(1, 1, r) + c(1, 1, j) * c(0, 0, r) - c(0, 1, j) * c(1, 0, r) -
                c(1, 0, j) * c(0, 1, r);
    }
  }
  return w;
}

Matrix2c cube_R(const Cube& c) {
  const Matrix2c w = cube_w(c);
  Matrix2c R;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      R(i, j) = w(j, 0) * std::conj(w(i, 0)) + w(j, 1) * std::conj(w(i, 1));
    }
  }
  return R;
}

double clamp_f(double raw, double scale) {
  if (raw >= 0.0) return raw;
  const double s2 = scale * scale;
  const double s8 = s2 * s2 * s2 * s2;
  if (raw < -1e-12 * s8) {
    throw Error(ErrorCode::kInternalConsistency,
                "det R = " + std::to_string(raw) + " below clamp window for scale " +
                    std::to_string(scale));
  }
  return 0.0;
}

double cube_f(const Cube& c) {
  const Matrix2c R = cube_R(c);
  const double raw = (R(0, 0) * R(1, 1) - R(0, 1) * R(1, 0)).real();
  return clamp_f(raw, c.max_abs());
}

Complex cube_bilinear(const Cube& ca, const Cube& cb, int h, int k) {
  // vec(block)[x + 2y] = b_{xy.}; sigma_yy pairs (0,3) with -1 and (1,2) with +1.
  const Complex a0 = ca(0, 0, h), a1 = ca(1, 0, h), a2 = ca(0, 1, h), a3 = ca(1, 1, h);
  const Complex b0 = cb(0, 0, k), b1 = cb(1, 0, k), b2 = cb(0, 1, k), b3 = cb(1, 1, k);
  return -a0 * b3 + a1 * b2 + a2 * b1 - a3 * b0;
}

Matrix2c cube_bilinear_all(const Cube& ca, const Cube& cb) {
  Matrix2c m;
  for (int h = 0; h < 2; ++h) {
    for (int k = 0; k < 2; ++k) m(h, k) = cube_bilinear(ca, cb, h, k);
  }
  return m;
}

double pairwise_sum(const double* values, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += values[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, n - half);
}

namespace {

void gather(const CVector& amplitudes, const Dims& dims, const std::vector<CubeSelector>& sels,
            std::size_t offset, kernels::CubeBatch& batch, std::vector<double>& scale) {
  const std::span<const Complex> a(amplitudes.data(), static_cast<std::size_t>(amplitudes.size()));
  for (std::size_t s = 0; s < sels.size(); ++s) {
    const Cube c = extract_cube(a, dims, sels[s]);
    for (int t = 0; t < 8; ++t) batch.set(offset + s, t, c.b[t].real(), c.b[t].imag());
    scale[offset + s] = c.max_abs();
  }
}

}  // namespace

std::vector<double> cube_f_list(const CVector& amplitudes, const Dims& dims) {
  validate_dims(dims);
  if (static_cast<std::size_t>(amplitudes.size()) != total_dimension(dims)) {
    throw Error(ErrorCode::kLengthMismatch, "amplitude vector does not match dims");
  }
  const auto sels = enumerate_selectors(dims);
  kernels::CubeBatch batch;
  batch.reset(sels.size());
  std::vector<double> scale(sels.size());
  gather(amplitudes, dims, sels, 0, batch, scale);
  std::vector<double> f(sels.size());
  kernels::cube_detr(batch.re.data(), batch.im.data(), batch.stride, sels.size(), f.data());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = clamp_f(f[i], scale[i]);
  return f;
}

std::vector<double> cube_f_list(const PureState& state) {
  return cube_f_list(state.amplitudes(), state.dims());
}

double tangle_sum(const CVector& amplitudes, const Dims& dims) {
  const auto f = cube_f_list(amplitudes, dims);
  return pairwise_sum(f.data(), f.size());
}

double F_pure(const CVector& amplitudes, const Dims& dims) {
  return std::pow(std::max(tangle_sum(amplitudes, dims), 0.0), 0.25);
}

double F_pure(const PureState& state) { return F_pure(state.amplitudes(), state.dims()); }

std::vector<double> F_pure_columns(const CMatrix& states, const Dims& dims, kernels::Isa isa) {
  validate_dims(dims);
  if (static_cast<std::size_t>(states.rows()) != total_dimension(dims)) {
    throw Error(ErrorCode::kLengthMismatch, "state columns do not match dims");
  }
  const auto sels = enumerate_selectors(dims);
  const std::size_t m = sels.size();
  const auto n = static_cast<std::size_t>(states.cols());
  kernels::CubeBatch batch;
  batch.reset(m * n);
  std::vector<double> scale(m * n);
  for (std::size_t c = 0; c < n; ++c) {
    gather(states.col(static_cast<Eigen::Index>(c)), dims, sels, c * m, batch, scale);
  }
  std::vector<double> f(m * n);
  kernels::cube_detr(isa, batch.re.data(), batch.im.data(), batch.stride, m * n, f.data());
  std::vector<double> out(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < m; ++i) f[c * m + i] = clamp_f(f[c * m + i], scale[c * m + i]);
    out[c] = std::pow(std::max(pairwise_sum(f.data() + c * m, m), 0.0), 0.25);
  }
  return out;
}

}  // namespace tritangle
