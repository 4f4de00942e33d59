#include "oracles.hpp"
#include "test_util.hpp"

#include "tritangle/factory.hpp"
#include "tritangle/tangle.hpp"

#include <doctest.h>

using namespace tritangle;

TEST_CASE("GHZ") {
  for (int d = 2; d <= 6; ++d) {
    const PureState g = make_ghz(d);
    CHECK(g.dims() == Dims{d, d, d});
    CHECK(g.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
    for (int i = 0; i < d; ++i) CHECK(std::abs(g(i, i, i) - 1.0 / std::sqrt(d)) <= 1e-15);
    CHECK(std::abs(g(0, 1, 0)) == 0.0);
  }
  CHECK_CODE(make_ghz(1), ErrorCode::kBadDimension);
}

TEST_CASE("W and W~") {
  const double s = 1.0 / std::sqrt(3.0);
  const PureState w = make_w(), wt = make_wtilde();
  CHECK(std::abs(w(0, 0, 1) - s) <= 1e-15);
  CHECK(std::abs(w(0, 1, 0) - s) <= 1e-15);
  CHECK(std::abs(w(1, 0, 0) - s) <= 1e-15);
  CHECK(std::abs(wt(1, 1, 0) - s) <= 1e-15);
  CHECK(std::abs(wt(0, 1, 1) - s) <= 1e-15);
  CHECK(std::abs(wt(1, 0, 1) - s) <= 1e-15);
  CHECK(std::abs(w.amplitudes().dot(wt.amplitudes())) == 0.0);
}

TEST_CASE("GHZ/W mixture") {
  CHECK(max_abs(make_ghzw_mix(1.0).matrix() - projector(make_ghz(2)).matrix()) <= 1e-15);
  const MixedState h = make_ghzw_mix(0.5);
  const RVector& e = h.eigenvalues();
  CHECK(e[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(e[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(e[2] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(e[3]) <= 1e-14);
  const MixedState third = make_ghzw_mix(1.0 / 3.0);
  for (int i = 0; i < 3; ++i) CHECK(third.eigenvalues()[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK_CODE(make_ghzw_mix(1.5), ErrorCode::kBadParameter);
  CHECK_CODE(make_ghzw_mix(-0.1), ErrorCode::kBadParameter);

  // eigenvectors are GHZ, W, W~ up to phase / rotation of the degenerate pair
  for (double x : {0.4, 0.7, 0.95}) {
    const Spectrum s = spectral_decompose(make_ghzw_mix(x));
    REQUIRE(s.rank() == 3);
    CHECK(std::abs(s.eigenvectors.col(0).dot(make_ghz(2).amplitudes())) >= 1 - 1e-10);
    const CMatrix pair = s.eigenvectors.middleCols(1, 2);
    CHECK((pair.adjoint() * make_w().amplitudes()).norm() >= 1 - 1e-10);
    CHECK((pair.adjoint() * make_wtilde().amplitudes()).norm() >= 1 - 1e-10);
  }
}

TEST_CASE("white noise") {
  const PureState g = make_ghz(2);
  CHECK(max_abs(make_white_noise(g, 0.0).matrix() - projector(g).matrix()) == 0.0);
  CHECK(max_abs(make_white_noise(g, 1.0).matrix() - CMatrix::Identity(8, 8) / 8.0) <= 1e-16);
  CHECK(make_white_noise(g, 0.37).matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_CODE(make_white_noise(g, 1.1), ErrorCode::kBadParameter);
  const PureState un = PureState::validate({2, 2, 2}, 2.0 * g.amplitudes());
  CHECK_CODE(make_white_noise(un, 0.1), ErrorCode::kNotNormalized);
}

TEST_CASE("random states") {
  const PureState a = make_random_pure({2, 3, 3}, 7), b = make_random_pure({2, 3, 3}, 7);
  CHECK(a.amplitudes() == b.amplitudes());
  CHECK(a.normalized());
  CHECK(make_random_pure({2, 3, 3}, 8).amplitudes() != a.amplitudes());
  for (std::uint64_t s = 0; s < 100; ++s) {
    const MixedState r = make_random_density({2, 2, 2}, 2, s);
    CHECK(spectral_decompose(r).rank() == 2);
  }
  CHECK(make_random_density({2, 2, 3}, 4, 3).matrix() == make_random_density({2, 2, 3}, 4, 3).matrix());
  CHECK_CODE(make_random_density({2, 2, 2}, 9, 0), ErrorCode::kBadRank);
  CHECK_CODE(make_random_density({2, 2, 2}, 0, 0), ErrorCode::kBadRank);
}

TEST_CASE("biseparable and product") {
  for (Split sp : {Split::kA_BC, Split::kB_AC, Split::kC_AB}) {
    const PureState s = make_biseparable({2, 3, 3}, sp, 4);
    CHECK(s.normalized());
    CHECK(s.amplitudes() == make_biseparable({2, 3, 3}, sp, 4).amplitudes());
    // reduced state of the single party is pure
    const int party = sp == Split::kA_BC ? 0 : (sp == Split::kB_AC ? 1 : 2);
    const Dims d = s.dims();
    CMatrix red = CMatrix::Zero(d[static_cast<std::size_t>(party)], d[static_cast<std::size_t>(party)]);
    for (int i = 0; i < d[0]; ++i)
      for (int j = 0; j < d[1]; ++j)
        for (int k = 0; k < d[2]; ++k)
          for (int i2 = 0; i2 < d[0]; ++i2)
            for (int j2 = 0; j2 < d[1]; ++j2)
              for (int k2 = 0; k2 < d[2]; ++k2) {
                const int a[3] = {i, j, k}, b[3] = {i2, j2, k2};
                bool rest = true;
                for (int p = 0; p < 3; ++p)
                  if (p != party && a[p] != b[p]) rest = false;
                if (rest) red(a[party], b[party]) += s(i, j, k) * std::conj(s(i2, j2, k2));
              }
    CHECK(std::abs((red * red).trace().real() - 1.0) <= 1e-12);
  }
  const CVector zero = CVector::Unit(2, 0);
  // |0> (x) (|00> + |11>)/sqrt(2)
  CVector ab_amp = CVector::Zero(8);
  ab_amp[0] = ab_amp[3] = 1.0 / std::sqrt(2.0);
  const PureState ab = PureState::validate({2, 2, 2}, ab_amp);
  CHECK(F_pure(ab) <= 1e-12);
  CHECK(F_pure(product_of(zero, zero, zero)) == 0.0);
  CHECK(make_product({3, 3, 3}, 2).amplitudes() == make_product({3, 3, 3}, 2).amplitudes());
}

TEST_CASE("family names and splits") {
  for (const char* n : {"ghz", "w", "wtilde", "ghzw", "ghzw-mix", "white-noise", "random-pure", "random-density",
                        "product", "biseparable"})
    CHECK(parse_family(n).has_value());
  CHECK_FALSE(parse_family("bell").has_value());
  CHECK(parse_split("A|BC") == Split::kA_BC);
  CHECK(parse_split("C|AB") == Split::kC_AB);
  CHECK_FALSE(parse_split("AB|C").has_value());
  CHECK(split_name(Split::kB_AC) == "B|AC");

  FamilySpec spec;
  spec.family = Family::kW;
  spec.dims = {2, 2, 3};
  CHECK_CODE(make_family(spec), ErrorCode::kBadDimension);
  spec.family = Family::kWhiteNoise;
  spec.d = 3;
  spec.eps = 0.01;
  const AnyState s = make_family(spec);
  REQUIRE(std::holds_alternative<MixedState>(s));
  CHECK(std::get<MixedState>(s).dims() == Dims{3, 3, 3});
}
