#include "tritangle/factory.hpp"

#include "tritangle/error.hpp"
#include "tritangle/random.hpp"

#include <cmath>
#include <string>

namespace tritangle {

PureState make_ghz(int d) {
  if (d < 2) throw Error(ErrorCode::kBadDimension, "GHZ needs d >= 2, got " + std::to_string(d));
  const Dims dims{d, d, d};
  CVector a = CVector::Zero(static_cast<Eigen::Index>(total_dimension(dims)));
  for (int i = 0; i < d; ++i) a[static_cast<Eigen::Index>(flat_index(dims, i, i, i))] = 1.0 / std::sqrt(d);
  return PureState::validate(dims, std::move(a));
}

namespace {

PureState three_term(int i0, int i1, int i2) {
  CVector a = CVector::Zero(8);
  const double v = 1.0 / std::sqrt(3.0);
  a[i0] = v;
  a[i1] = v;
  a[i2] = v;
  return PureState::validate({2, 2, 2}, std::move(a));
}

CVector gaussian_vector(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(normal(rng), normal(rng));
  return v;
}

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorCode::kBadParameter,
                std::string(name) + " must lie in [0,1], got " + std::to_string(v));
  }
}

}  // namespace

PureState make_w() { return three_term(1, 2, 4); }
PureState make_wtilde() { return three_term(6, 3, 5); }

MixedState projector(const PureState& psi) {
  const CVector& a = psi.amplitudes();
  return MixedState::validate(psi.dims(), a * a.adjoint());
}

MixedState make_ghzw_mix(double x) {
  check_unit(x, "x");
  const CVector g = make_ghz(2).amplitudes();
  const CVector w = make_w().amplitudes();
  const CVector wt = make_wtilde().amplitudes();
  const CMatrix rho =
      x * g * g.adjoint() + (1.0 - x) / 2.0 * (w * w.adjoint() + wt * wt.adjoint());
  return MixedState::validate({2, 2, 2}, rho);
}

MixedState make_white_noise(const PureState& psi, double eps) {
  if (!psi.normalized()) throw Error(ErrorCode::kNotNormalized, "white noise needs a unit vector");
  check_unit(eps, "eps");
  const CVector& a = psi.amplitudes();
  const auto d = a.size();
  const CMatrix rho = (1.0 - eps) * a * a.adjoint() +
                      (eps / static_cast<double>(d)) * CMatrix::Identity(d, d);
  return MixedState::validate(psi.dims(), rho);
}

PureState make_random_pure(const Dims& dims, std::uint64_t seed) {
  validate_dims(dims);
  Rng rng = make_rng(seed);
  CVector a = gaussian_vector(static_cast<Eigen::Index>(total_dimension(dims)), rng);
  a.normalize();
  return PureState::validate(dims, std::move(a));
}

MixedState make_random_density(const Dims& dims, int rank, std::uint64_t seed) {
  validate_dims(dims);
  const auto d = static_cast<Eigen::Index>(total_dimension(dims));
  if (rank < 1 || rank > d) {
    throw Error(ErrorCode::kBadRank, "rank " + std::to_string(rank) + " outside [1, " +
                                         std::to_string(d) + "]");
  }
  Rng rng = make_rng(seed);
  CMatrix g(d, rank);
  for (int c = 0; c < rank; ++c) g.col(c) = gaussian_vector(d, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Exact Hermiticity after rounding.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return MixedState::validate(dims, rho);
}

std::optional<Split> parse_split(std::string_view s) {
  if (s == "A|BC") return Split::kA_BC;
  if (s == "B|AC") return Split::kB_AC;
  if (s == "C|AB") return Split::kC_AB;
  return std::nullopt;
}

std::string_view split_name(Split s) {
  switch (s) {
    case Split::kA_BC:
      return "A|BC";
    case Split::kB_AC:
      return "B|AC";
    case Split::kC_AB:
      return "C|AB";
  }
  return "?";
}

PureState product_of(const CVector& a, const CVector& b, const CVector& c) {
  const Dims dims{static_cast<int>(a.size()), static_cast<int>(b.size()), static_cast<int>(c.size())};
  validate_dims(dims);
  CVector out(static_cast<Eigen::Index>(total_dimension(dims)));
  for (int i = 0; i < dims[0]; ++i)
    for (int j = 0; j < dims[1]; ++j)
      for (int k = 0; k < dims[2]; ++k) {
        out[static_cast<Eigen::Index>(flat_index(dims, i, j, k))] = a[i] * b[j] * c[k];
      }
  return PureState::validate(dims, std::move(out));
}

PureState make_biseparable(const Dims& dims, Split split, std::uint64_t seed) {
  validate_dims(dims);
  Rng rng = make_rng(seed);
  // Single party p, bipartite state on the remaining (q1 < q2).
  const int p = split == Split::kA_BC ? 0 : split == Split::kB_AC ? 1 : 2;
  const int q1 = p == 0 ? 1 : 0;
  const int q2 = p == 2 ? 1 : 2;
  CVector single = gaussian_vector(dims[p], rng).normalized();
  CVector pair = gaussian_vector(static_cast<Eigen::Index>(dims[q1]) * dims[q2], rng).normalized();
  CVector out(static_cast<Eigen::Index>(total_dimension(dims)));
  std::array<int, 3> idx{};
  for (idx[0] = 0; idx[0] < dims[0]; ++idx[0])
    for (idx[1] = 0; idx[1] < dims[1]; ++idx[1])
      for (idx[2] = 0; idx[2] < dims[2]; ++idx[2]) {
        out[static_cast<Eigen::Index>(flat_index(dims, idx[0], idx[1], idx[2]))] =
            single[idx[p]] * pair[idx[q1] * dims[q2] + idx[q2]];
      }
  return PureState::validate(dims, std::move(out));
}

PureState make_product(const Dims& dims, std::uint64_t seed) {
  validate_dims(dims);
  Rng rng = make_rng(seed);
  const CVector a = gaussian_vector(dims[0], rng).normalized();
  const CVector b = gaussian_vector(dims[1], rng).normalized();
  const CVector c = gaussian_vector(dims[2], rng).normalized();
  return product_of(a, b, c);
}

namespace {

constexpr std::pair<Family, std::string_view> kFamilyNames[] = {
    {Family::kGhz, "ghz"},
    {Family::kW, "w"},
    {Family::kWtilde, "wtilde"},
    {Family::kGhzwMix, "ghzw"},
    {Family::kWhiteNoise, "white-noise"},
    {Family::kRandomPure, "random-pure"},
    {Family::kRandomDensity, "random-density"},
    {Family::kProduct, "product"},
    {Family::kBiseparable, "biseparable"},
};

}  // namespace

std::optional<Family> parse_family(std::string_view s) {
  if (s == "ghzw-mix") return Family::kGhzwMix;
  for (const auto& [f, name] : kFamilyNames) {
    if (name == s) return f;
  }
  return std::nullopt;
}

std::string_view family_name(Family f) {
  for (const auto& [g, name] : kFamilyNames) {
    if (g == f) return name;
  }
  return "?";
}

AnyState make_family(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::kGhz:
      return make_ghz(spec.d);
    case Family::kW:
      if (spec.dims != Dims{2, 2, 2}) {
        throw Error(ErrorCode::kBadDimension, "W is defined only for dims (2,2,2)");
      }
      return make_w();
    case Family::kWtilde:
      if (spec.dims != Dims{2, 2, 2}) {
        throw Error(ErrorCode::kBadDimension, "W~ is defined only for dims (2,2,2)");
      }
      return make_wtilde();
    case Family::kGhzwMix:
      return make_ghzw_mix(spec.x);
    case Family::kWhiteNoise:
      return make_white_noise(make_ghz(spec.d), spec.eps);
    case Family::kRandomPure:
      return make_random_pure(spec.dims, spec.seed);
    case Family::kRandomDensity:
      return make_random_density(spec.dims, spec.rank, spec.seed);
    case Family::kProduct:
      return make_product(spec.dims, spec.seed);
    case Family::kBiseparable:
      return make_biseparable(spec.dims, spec.split, spec.seed);
  }
  throw Error(ErrorCode::kBadParameter, "unknown family");
}

}  // namespace tritangle
