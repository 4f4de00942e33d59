#pragma once

// Batched per-cube det R. Cubes are stored planar (structure of arrays):
// amplitude t of cube i lives at re[t * stride + i], im[t * stride + i],
// with t = x*4 + y*2 + z. Outputs are raw determinants, no clamping.

#include <cstddef>
#include <string_view>
#include <vector>

namespace tritangle::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

/// True when the CPU supports AVX2 and FMA and the AVX2 kernel was compiled in.
bool avx2_available();

/// Best ISA available on this machine.
Isa detect_isa();

void cube_detr_scalar(const double* re, const double* im, std::size_t stride, std::size_t n,
                      double* out);
void cube_detr_avx2(const double* re, const double* im, std::size_t stride, std::size_t n,
                    double* out);

/// Dispatches to the detected ISA (or to `isa` when given and available).
void cube_detr(const double* re, const double* im, std::size_t stride, std::size_t n, double* out);
void cube_detr(Isa isa, const double* re, const double* im, std::size_t stride, std::size_t n,
               double* out);

/// Planar cube buffer sized for `capacity` cubes.
struct CubeBatch {
  std::size_t count = 0;
  std::size_t stride = 0;
  std::vector<double> re;
  std::vector<double> im;

  void reset(std::size_t capacity);
  void set(std::size_t i, int t, double real, double imag) {
    re[static_cast<std::size_t>(t) * stride + i] = real;
    im[static_cast<std::size_t>(t) * stride + i] = imag;
  }
};

}  // namespace tritangle::kernels
