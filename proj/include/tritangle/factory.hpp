#pragma once

// Canonical states, the GHZ/W mixture family and seeded random states.

#include "tritangle/state.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace tritangle {

/// Dims (d,d,d), amplitude 1/sqrt(d) on each |iii>.
PureState make_ghz(int d);
/// (|001> + |010> + |100>)/sqrt(3)
PureState make_w();
/// (|110> + |011> + |101>)/sqrt(3)
PureState make_wtilde();

MixedState projector(const PureState& psi);

/// x P_GHZ + (1-x)/2 (P_W + P_W~) on (2,2,2).
MixedState make_ghzw_mix(double x);

/// (1-eps) |psi><psi| + eps I/d.
MixedState make_white_noise(const PureState& psi, double eps);

PureState make_random_pure(const Dims& dims, std::uint64_t seed);

/// G G^dagger / tr, G a d x rank complex Gaussian matrix.
MixedState make_random_density(const Dims& dims, int rank, std::uint64_t seed);

enum class Split { kA_BC, kB_AC, kC_AB };

std::optional<Split> parse_split(std::string_view s);
std::string_view split_name(Split s);

/// Random single-party state times a random bipartite state on the other two.
PureState make_biseparable(const Dims& dims, Split split, std::uint64_t seed);

/// Random fully product state.
PureState make_product(const Dims& dims, std::uint64_t seed);

/// Tensor product phi_A (x) phi_B (x) phi_C.
PureState product_of(const CVector& a, const CVector& b, const CVector& c);

enum class Family {
  kGhz,
  kW,
  kWtilde,
  kGhzwMix,
  kWhiteNoise,
  kRandomPure,
  kRandomDensity,
  kProduct,
  kBiseparable,
};

std::optional<Family> parse_family(std::string_view s);
std::string_view family_name(Family f);

struct FamilySpec {
  Family family = Family::kGhz;
  int d = 2;
  double x = 1.0;
  double eps = 0.0;
  Dims dims{2, 2, 2};
  int rank = 1;
  Split split = Split::kA_BC;
  std::uint64_t seed = 0;
};

using AnyState = std::variant<PureState, MixedState>;

/// white-noise mixes GHZ_d with eps.
AnyState make_family(const FamilySpec& spec);

}  // namespace tritangle
