#include "tritangle/kernels.hpp"

namespace tritangle::kernels {

namespace {

struct C {
  double r, i;
};

inline C mul(C a, C b) { return {a.r * b.r - a.i * b.i, a.r * b.i + a.i * b.r}; }
inline C sub(C a, C b) { return {a.r - b.r, a.i - b.i}; }
inline C add(C a, C b) { return {a.r + b.r, a.i + b.i}; }
inline double norm2(C a) { return a.r * a.r + a.i * a.i; }
// a * conj(b)
inline C mulc(C a, C b) { return {a.r * b.r + a.i * b.i, a.i * b.r - a.r * b.i}; }

}  // namespace

void cube_detr_scalar(const double* re, const double* im, std::size_t stride, std::size_t n,
                      double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    C b[8];
    for (int t = 0; t < 8; ++t) b[t] = {re[t * stride + i], im[t * stride + i]};
    // w(j,r) = b00j b11r + b11j b00r - b01j b10r - b10j b01r
    const C p00 = sub(mul(b[0], b[6]), mul(b[2], b[4]));
    const C w00 = add(p00, p00);
    const C p11 = sub(mul(b[1], b[7]), mul(b[3], b[5]));
    const C w11 = add(p11, p11);
    const C w01 = sub(add(mul(b[0], b[7]), mul(b[6], b[1])), add(mul(b[2], b[5]), mul(b[4], b[3])));
    const double r00 = norm2(w00) + norm2(w01);
    const double r11 = norm2(w01) + norm2(w11);
    const C r10 = add(mulc(w00, w01), mulc(w01, w11));
    out[i] = r00 * r11 - norm2(r10);
  }
}

void CubeBatch::reset(std::size_t capacity) {
  count = 0;
  // Pad to the AVX2 width so the vector loop needs no tail masking on loads.
  stride = (capacity + 3) / 4 * 4;
  re.assign(8 * stride, 0.0);
  im.assign(8 * stride, 0.0);
}

}  // namespace tritangle::kernels
