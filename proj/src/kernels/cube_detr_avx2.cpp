#include "tritangle/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define TRITANGLE_HAVE_AVX2 1
#else
#define TRITANGLE_HAVE_AVX2 0
#endif

namespace tritangle::kernels {

#if TRITANGLE_HAVE_AVX2

namespace {

struct V {
  __m256d r, i;
};

__attribute__((target("avx2,fma"))) inline V mul(V a, V b) {
  return {_mm256_fmsub_pd(a.r, b.r, _mm256_mul_pd(a.i, b.i)),
          _mm256_fmadd_pd(a.r, b.i, _mm256_mul_pd(a.i, b.r))};
}
__attribute__((target("avx2,fma"))) inline V sub(V a, V b) {
  return {_mm256_sub_pd(a.r, b.r), _mm256_sub_pd(a.i, b.i)};
}
__attribute__((target("avx2,fma"))) inline V add(V a, V b) {
  return {_mm256_add_pd(a.r, b.r), _mm256_add_pd(a.i, b.i)};
}
__attribute__((target("avx2,fma"))) inline __m256d norm2(V a) {
  return _mm256_fmadd_pd(a.r, a.r, _mm256_mul_pd(a.i, a.i));
}
__attribute__((target("avx2,fma"))) inline V mulc(V a, V b) {
  return {_mm256_fmadd_pd(a.r, b.r, _mm256_mul_pd(a.i, b.i)),
          _mm256_fmsub_pd(a.i, b.r, _mm256_mul_pd(a.r, b.i))};
}

__attribute__((target("avx2,fma"))) void detr_block(const double* re, const double* im,
                                                    std::size_t stride, std::size_t i,
                                                    double* out) {
  V b[8];
  for (std::size_t t = 0; t < 8; ++t) {
    b[t] = {_mm256_loadu_pd(re + t * stride + i), _mm256_loadu_pd(im + t * stride + i)};
  }
  const V p00 = sub(mul(b[0], b[6]), mul(b[2], b[4]));
  const V w00 = add(p00, p00);
  const V p11 = sub(mul(b[1], b[7]), mul(b[3], b[5]));
  const V w11 = add(p11, p11);
  const V w01 = sub(add(mul(b[0], b[7]), mul(b[6], b[1])), add(mul(b[2], b[5]), mul(b[4], b[3])));
  const __m256d r00 = _mm256_add_pd(norm2(w00), norm2(w01));
  const __m256d r11 = _mm256_add_pd(norm2(w01), norm2(w11));
  const V r10 = add(mulc(w00, w01), mulc(w01, w11));
  _mm256_storeu_pd(out, _mm256_fmsub_pd(r00, r11, norm2(r10)));
}

}  // namespace

bool avx2_available() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

void cube_detr_avx2(const double* re, const double* im, std::size_t stride, std::size_t n,
                    double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) detr_block(re, im, stride, i, out + i);
  if (i < n) {
    // Tail: the batch stride is padded, but raw callers may not be.
    if (i + 4 <= stride) {
      double tmp[4];
      detr_block(re, im, stride, i, tmp);
      for (std::size_t k = 0; i + k < n; ++k) out[i + k] = tmp[k];
    } else {
      // Offset pointers keep the strided layout for the remaining cubes.
      cube_detr_scalar(re + i, im + i, stride, n - i, out + i);
    }
  }
}

#else

bool avx2_available() { return false; }

void cube_detr_avx2(const double* re, const double* im, std::size_t stride, std::size_t n,
                    double* out) {
  cube_detr_scalar(re, im, stride, n, out);
}

#endif

}  // namespace tritangle::kernels
