// Acceptance checks. Prints one PASS/FAIL line per criterion; exit status is
// nonzero when any selected criterion fails.
//
//   acceptance              run all eleven
//   acceptance --criterion 8

#include "oracles.hpp"

#include "tritangle/bounds.hpp"
#include "tritangle/error.hpp"
#include "tritangle/factory.hpp"
#include "tritangle/kron.hpp"
#include "tritangle/quasi_pure.hpp"
#include "tritangle/sweep.hpp"
#include "tritangle/tangle.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace tritangle;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const std::vector<Dims> kDims = {{2, 2, 2}, {2, 2, 3}, {2, 3, 3}, {3, 3, 3}};

Spectrum rank_one(const PureState& psi) {
  return spectral_decompose(projector(psi));
}

Outcome c01() {
  double err = 0.0;
  err = std::max(err, std::abs(F_pure(make_ghz(2)) - 0.5));
  err = std::max(err, std::abs(F_pure(make_w())));
  err = std::max(err, std::abs(F_pure(make_ghz(3)) - std::pow(1.0 / 27.0, 0.25)));
  double prod = 0.0;
  for (const Dims& d : kDims)
    for (std::uint64_t s = 0; s < 5; ++s) prod = std::max(prod, F_pure(make_product(d, s)));
  const bool ok = err <= 1e-10 && prod <= 1e-12;
  return {ok, "max closed-form error " + fmt("%.2e", err) + ", max product F " + fmt("%.2e", prod)};
}

Outcome c02() {
  Rng rng = make_rng(2, 0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Cube c = oracle::random_cube(rng, std::exp(std::uniform_real_distribution<double>(-3, 3)(rng)));
    const double s8 = std::pow(c.max_abs(), 8);
    const double t = cube_tangle(c);
    const double o = oracle::hyperdet_tangle(c);
    worst = std::max(worst, std::abs(cube_f(c) - t * t) / s8);
    worst = std::max(worst, std::abs(t * t - o * o) / s8);
  }
  return {worst <= 1e-10, "max |det R - tau^2| / max|b|^8 = " + fmt("%.2e", worst)};
}

Outcome c03() {
  const PartyPermutation perms[6] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  double worst = 0.0;
  int n = 0;
  for (const Dims& d : kDims)
    for (std::uint64_t s = 0; s < 100; ++s) {
      const PureState psi = make_random_pure(d, 3000 + s);
      const double f = F_pure(psi);
      for (const auto& p : perms) worst = std::max(worst, std::abs(F_pure(permute_parties(psi, p)) - f));
      ++n;
    }
  return {worst <= 1e-10, std::to_string(n) + " states x 6 permutations, max deviation " + fmt("%.2e", worst)};
}

Outcome c04() {
  Rng rng = make_rng(4, 0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const PureState psi = make_random_pure({2, 2, 2}, 4000 + static_cast<std::uint64_t>(i));
    const PureState v = apply_local_unitary(psi, oracle::haar(2, rng), oracle::haar(2, rng), oracle::haar(2, rng));
    worst = std::max(worst, std::abs(F_pure(v) - F_pure(psi)));
  }
  // recorded only
  std::ostringstream hi;
  for (const Dims& d : {Dims{2, 2, 3}, Dims{3, 3, 3}}) {
    double dev = 0.0;
    for (int i = 0; i < 20; ++i) {
      const PureState psi = make_random_pure(d, 4500 + static_cast<std::uint64_t>(i));
      const PureState v =
          apply_local_unitary(psi, oracle::haar(d[0], rng), oracle::haar(d[1], rng), oracle::haar(d[2], rng));
      dev = std::max(dev, std::abs(F_pure(v) - F_pure(psi)));
    }
    hi << ", (" << d[0] << d[1] << d[2] << ") LU deviation " << fmt("%.3g", dev);
  }
  return {worst <= 1e-9, "(2,2,2) max LU deviation " + fmt("%.2e", worst) + hi.str()};
}

Outcome c05() {
  Rng rng = make_rng(5, 0);
  double recon = 0.0;
  double exact = 0.0;
  bool rank_ok = true;
  for (const auto& bd : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}, {4, 4}, {4, 16}}) {
    const int n = bd.first * bd.second;
    for (int i = 0; i < 5; ++i) {
      const CMatrix m = oracle::random_matrix(n, n, rng);
      const KronFactors f = nearest_kron(m, bd.first, bd.second, 0.0);
      recon = std::max(recon, (kron_sum(f) - m).norm() / m.norm());
      const CMatrix x = oracle::random_matrix(bd.first, bd.first, rng);
      const CMatrix y = oracle::random_matrix(bd.second, bd.second, rng);
      const CMatrix k = kron(x, y);
      const KronFactors g = nearest_kron(k, bd.first, bd.second);
      rank_ok = rank_ok && g.rank() == 1;
      exact = std::max(exact, (kron(g.x[0], g.y[0]) - k).norm() / k.norm());
    }
  }
  const bool ok = recon <= 1e-10 && exact <= 1e-10 && rank_ok;
  return {ok, "reconstruction " + fmt("%.2e", recon) + ", rank-1 recovery " + fmt("%.2e", exact) +
                  (rank_ok ? ", rank 1 found" : ", rank-1 input not detected")};
}

Outcome c06() {
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const PureState psi = make_random_pure(kDims[static_cast<std::size_t>(i % 4)], 6000 + static_cast<std::uint64_t>(i));
    const ATensor a = build_A(rank_one(psi));
    const double f4 = std::pow(oracle::brute_F(psi.amplitudes(), psi.dims()), 4);
    worst = std::max(worst, std::abs(a(0, 0, 0, 0, 0, 0, 0, 0) - f4) / f4);
  }
  return {worst <= 1e-10, "max relative |A_1111 - F^4| = " + fmt("%.2e", worst)};
}

Outcome c07() {
  double pure = 0.0;
  int n = 0;
  for (std::uint64_t s = 0; n < 100; ++s) {
    const PureState psi = make_random_pure(kDims[s % 4], 7000 + s);
    const double f = F_pure(psi);
    if (f <= 1e-3) continue;
    pure = std::max(pure, std::abs(f_a(build_tau(rank_one(psi))) - f));
    ++n;
  }
  std::ostringstream trend;
  std::vector<double> devs;
  for (double eps : {0.1, 1e-2, 1e-3, 1e-4, 0.0}) {
    const MixedState rho = make_white_noise(make_ghz(2), eps);
    devs.push_back(std::abs(f_a(build_tau(spectral_decompose(rho))) - 0.5));
    trend << " " << fmt("%.1e", eps) << ":" << fmt("%.2e", devs.back());
  }
  bool shrinking = true;
  for (std::size_t i = 1; i < devs.size(); ++i) shrinking = shrinking && devs[i] < devs[i - 1];
  const bool ok = pure <= 1e-9 && devs.back() <= 1e-9 && shrinking;
  return {ok, "rank-1 max |F_a - F| " + fmt("%.2e", pure) + "; |F_a - 0.5| by eps" + trend.str()};
}

Outcome c08() {
  SweepConfig cfg;
  cfg.from = 0.34;
  cfg.to = 1.0;
  cfg.steps = 100;
  const auto rows = sweep_ghzw(cfg);
  constexpr double kPlateau = 1e-12;
  double max_delta = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].fa && rows[i - 1].fa) max_delta = std::max(max_delta, std::abs(*rows[i].fa - *rows[i - 1].fa));
  }
  bool defined = true;
  for (const auto& r : rows) defined = defined && r.fa.has_value();
  if (!defined) return {false, "F_a undefined on part of the sweep"};
  const double end = *rows.back().fa;
  std::size_t first_pos = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (*rows[i].fa > kPlateau) {
      first_pos = i;
      break;
    }
  bool plateau = first_pos > 0 && first_pos < rows.size();
  bool tail = true;
  for (std::size_t i = first_pos; i < rows.size(); ++i) {
    if (*rows[i].fa <= kPlateau) tail = false;
    if (i > first_pos && *rows[i].fa <= *rows[i - 1].fa) tail = false;
  }
  const auto thr = sweep_threshold(rows, kPlateau);
  double spread = 0.0;
  for (int v = 0; v < 3; ++v)
    for (double f : {0.1, 10.0}) {
      SweepConfig c = cfg;
      double pt = kPlateau;
      if (v == 0) c.tol *= f;
      if (v == 1) c.cutoff *= f;
      if (v == 2) pt *= f;
      const auto t = sweep_threshold(sweep_ghzw(c), pt);
      spread = (t && thr) ? std::max(spread, std::abs(*t - *thr)) : 1.0;
    }
  const bool ok = max_delta <= 0.02 && std::abs(end - 0.5) <= 1e-8 && plateau && tail && thr && spread <= 1e-3;
  std::string d = "max delta " + fmt("%.4f", max_delta) + ", F_a(1) = " + fmt("%.12f", end) + ", plateau rows " +
                  std::to_string(first_pos) + ", tail " + (tail ? "increasing" : "NOT increasing") +
                  ", threshold " + (thr ? fmt("%.6f", *thr) : std::string("none")) + ", spread " +
                  fmt("%.1e", spread);
  return {ok, d};
}

Outcome c09() {
  const MixedState rho = make_white_noise(make_ghz(3), 0.01);
  const TauMatrix t = build_tau(spectral_decompose(rho));
  const double v = f_a(t);
  return {v > 0.0, "F_a(GHZ_3, eps=0.01) = " + fmt("%.15f", v)};
}

Outcome c10() {
  // Bounds as the library defines them: strict structure first; when the
  // nested split has no C (x) C* form the literal factorization is used.
  int strict_ok = 0;
  int violations = 0;
  int over[3] = {0, 0, 0};  // zZ, Z, maxC
  double worst = -1e300;
  OptimizerConfig oc;
  RoofConfig rc;
  rc.samples = 1000;
  for (int i = 0; i < 50; ++i) {
    const MixedState rho = make_random_density({2, 2, 2}, 2, 10000 + static_cast<std::uint64_t>(i));
    const Spectrum spec = spectral_decompose(rho);
    const ATensor a = build_A(spec);
    CFamily fam;
    try {
      fam = decompose(a, StructurePolicy::kStrict);
      ++strict_ok;
    } catch (const Error&) {
      fam = decompose(a, StructurePolicy::kFormal);
    }
    oc.seed = static_cast<std::uint64_t>(i);
    rc.seed = static_cast<std::uint64_t>(i);
    const double roof = roof_upper(spec, rc).value;
    const double each[3] = {lower_bound_zZ(fam, oc).value, lower_bound_Z(fam, oc).value,
                            fam.empty() ? 0.0 : lower_bound_maxC(fam)};
    for (int m = 0; m < 3; ++m)
      if (each[m] > roof + 1e-8) ++over[m];
    const double lb = std::max({each[0], each[1], each[2]});
    worst = std::max(worst, lb - roof);
    if (lb > roof + 1e-8) ++violations;
  }
  const PureState zero = product_of(CVector::Unit(2, 0), CVector::Unit(2, 0), CVector::Unit(2, 0));
  const CFamily z = decompose(build_A(spectral_decompose(projector(zero))));
  const double zz = lower_bound_zZ(z).value;
  const double zb = lower_bound_Z(z).value;
  const double zm = z.empty() ? 0.0 : lower_bound_maxC(z);
  const bool zero_ok = zz == 0.0 && zb == 0.0 && zm == 0.0;
  const bool ok = violations == 0 && zero_ok;
  return {ok, std::to_string(violations) + "/50 states with a bound above roof_upper (worst excess " +
                  fmt("%.3g", worst) + "; zZ " + std::to_string(over[0]) + ", Z " +
                  std::to_string(over[1]) + ", maxC " + std::to_string(over[2]) + "), strict structure on " + std::to_string(strict_ok) +
                  "/50; |000> bounds " + (zero_ok ? "all 0" : "nonzero")};
}

Outcome c11() {
  double worst_low = 0.0;  // formula - sampled min, must stay <= 1e-6
  double gap2 = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 3;
    Rng rng = make_rng(11, static_cast<std::uint64_t>(i));
    CMatrix c = oracle::random_matrix(n, n, rng);
    c = (0.5 * (c + c.transpose())).eval();
    const double w = wootters_inf(c);
    const double m = oracle::sampled_wootters_min(c, 10000, static_cast<std::uint64_t>(i));
    worst_low = std::max(worst_low, w - m);
    if (n == 2) gap2 = std::max(gap2, m - w);
  }
  const bool ok = worst_low <= 1e-6 && gap2 <= 5e-2;
  return {ok, "max (formula - sampled min) " + fmt("%.2e", worst_low) + ", n=2 max gap " + fmt("%.2e", gap2)};
}

struct Criterion {
  const char* name;
  double budget_s;  // 0 = no runtime limit stated
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-11)")->check(CLI::Range(0, 11));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all = {
      {"closed-form pure values", 1, c01},
      {"det R vs cube tangle", 5, c02},
      {"permutation invariance", 30, c03},
      {"(2,2,2) local-unitary invariance", 0, c04},
      {"Kronecker engine", 10, c05},
      {"rank-1 A reduction", 0, c06},
      {"quasi-pure consistency", 0, c07},
      {"GHZ/W sweep shape", 60, c08},
      {"GHZ_3 white noise F_a > 0", 10, c09},
      {"bound sandwich", 300, c10},
      {"Wootters functional oracle", 0, c11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (all[i].budget_s > 0 && dt > all[i].budget_s) {
      o.pass = false;
      o.detail += "; over time budget";
    }
    std::printf("%s c%02zu %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, all[i].name, o.detail.c_str(), dt);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
