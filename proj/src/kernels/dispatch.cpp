#include "tritangle/kernels.hpp"

namespace tritangle::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

Isa detect_isa() {
  static const Isa isa = avx2_available() ? Isa::kAvx2 : Isa::kScalar;
  return isa;
}

void cube_detr(Isa isa, const double* re, const double* im, std::size_t stride, std::size_t n,
               double* out) {
  if (isa == Isa::kAvx2 && avx2_available()) {
    cube_detr_avx2(re, im, stride, n, out);
  } else {
    cube_detr_scalar(re, im, stride, n, out);
  }
}

void cube_detr(const double* re, const double* im, std::size_t stride, std::size_t n, double* out) {
  cube_detr(detect_isa(), re, im, stride, n, out);
}

}  // namespace tritangle::kernels
