#include "tritangle/quasi_pure.hpp"

#include "tritangle/error.hpp"
#include "tritangle/kron.hpp"
#include "tritangle/parallel.hpp"
#include "tritangle/random.hpp"
#include "tritangle/tangle.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <string>

namespace tritangle {

namespace {

// X_hg(M, N) = sum_i M(h,i) conj(N(g,i))
inline Complex xhg(const Matrix2c& a, const Matrix2c& b, int h, int g) {
  return a(h, 0) * std::conj(b(g, 0)) + a(h, 1) * std::conj(b(g, 1));
}

// Reorders the leading cluster so that the column with the largest
// A[1,1,1,1;1,1,1,1] comes first, trying seeded rotations of the cluster.
Spectrum pick_dominant(const Spectrum& s, int k, const TauOptions& opts) {
  const CMatrix lead = s.eigenvectors.leftCols(k);
  const double mu1 = s.eigenvalues[0];
  double best = -1.0;
  CMatrix best_basis;
  int best_col = 0;
  for (int t = 0; t < std::max(opts.tie_break_rotations, 1); ++t) {
    CMatrix basis = lead;
    if (t > 0) {
      Rng rng = make_rng(opts.seed, static_cast<std::uint64_t>(t));
      basis = lead * haar_unitary(k, rng);
    }
    for (int c = 0; c < k; ++c) {
      const double a = tangle_sum(CVector(std::sqrt(mu1) * basis.col(c)), s.dims);
      if (a > best) {
        best = a;
        best_basis = basis;
        best_col = c;
      }
    }
  }
  Spectrum out = s;
  out.eigenvectors.col(0) = best_basis.col(best_col);
  int dst = 1;
  for (int c = 0; c < k; ++c) {
    if (c != best_col) out.eigenvectors.col(dst++) = best_basis.col(c);
  }
  return out;
}

}  // namespace

TauMatrix build_tau(const Spectrum& spec, const TauOptions& opts) {
  const int r = spec.rank();
  if (r == 0) throw Error(ErrorCode::kBadRank, "empty spectrum");
  Spectrum s = canonicalize_degenerate(spec);
  int k = 1;
  while (k < r && s.eigenvalues[0] - s.eigenvalues[k] <= kDegeneracyTol) ++k;
  if (k > 1) s = pick_dominant(s, k, opts);

  CMatrix ps = s.eigenvectors;
  for (int l = 0; l < r; ++l) ps.col(l) *= std::sqrt(s.eigenvalues[l]);
  const auto sels = enumerate_selectors(s.dims);

  // G(x) = F^4(sum_l x_l psi_l) is a quartic in x and in conj(x). Its
  // holomorphic first and second derivatives at the dominant vector are sums
  // of A entries with one or two slots off the dominant index. tau is the
  // quadratic form of the holomorphic square root of G to second order.
  struct Partial {
    double g = 0.0;
    CVector dg;
    CMatrix ddg;
  };
  std::vector<Partial> part(sels.size());
  parallel_for(sels.size(), opts.threads, [&](std::size_t c) {
    std::vector<Cube> cubes;
    cubes.reserve(static_cast<std::size_t>(r));
    for (int l = 0; l < r; ++l) cubes.push_back(extract_cube(CVector(ps.col(l)), s.dims, sels[c]));
    const Matrix2c m11 = cube_bilinear_all(cubes[0], cubes[0]);
    // symmetric form behind A with the conjugated slots fixed on m11
    const auto form = [&](const Matrix2c& u, const Matrix2c& v) {
      return 0.5 * (xhg(u, m11, 0, 0) * xhg(v, m11, 1, 1) + xhg(u, m11, 1, 1) * xhg(v, m11, 0, 0) -
                    xhg(u, m11, 0, 1) * xhg(v, m11, 1, 0) - xhg(u, m11, 1, 0) * xhg(v, m11, 0, 1));
    };
    std::vector<Matrix2c> sym(static_cast<std::size_t>(r));
    for (int l = 0; l < r; ++l) {
      const Matrix2c m = cube_bilinear_all(cubes[l], cubes[0]);
      sym[static_cast<std::size_t>(l)] = m + m.transpose();
    }
    Partial& p = part[c];
    p.g = form(m11, m11).real();
    p.dg.resize(r);
    p.ddg.resize(r, r);
    for (int l = 0; l < r; ++l) {
      p.dg[l] = 2.0 * form(sym[static_cast<std::size_t>(l)], m11);
      for (int lp = l; lp < r; ++lp) {
        const Matrix2c m = cube_bilinear_all(cubes[l], cubes[lp]);
        const Complex v = 2.0 * form(m + m.transpose(), m11) +
                          2.0 * form(sym[static_cast<std::size_t>(l)], sym[static_cast<std::size_t>(lp)]);
        p.ddg(l, lp) = v;
        p.ddg(lp, l) = v;
      }
    }
  });
  double g = 0.0;
  CVector dg = CVector::Zero(r);
  CMatrix ddg = CMatrix::Zero(r, r);
  for (const Partial& p : part) {
    g += p.g;
    dg += p.dg;
    ddg += p.ddg;
  }
  if (!(g > kDominantTangleMin)) {
    throw Error(ErrorCode::kDominantTangleZero,
                "A[1,1,1,1;1,1,1,1] = " + std::to_string(g) +
                    "; the dominant eigenvector carries no cube tangle");
  }
  TauMatrix out;
  out.rank = r;
  out.leading_multiplicity = k;
  out.a1111 = g;
  const CMatrix tau = ddg / (4.0 * std::pow(g, 0.75)) -
                      (dg * dg.transpose()) / (8.0 * std::pow(g, 1.75));
  out.asymmetry = max_abs(tau - tau.transpose());
  if (out.asymmetry > opts.asymmetry_limit * max_abs(tau)) {
    throw Error(ErrorCode::kAsymmetryTooLarge,
                "||tau - tau^T||_max = " + std::to_string(out.asymmetry));
  }
  out.tau = 0.5 * (tau + tau.transpose());
  return out;
}

double f_a(const CMatrix& tau) {
  if (tau.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(tau);
  const RVector& s = svd.singularValues();
  double rest = 0.0;
  for (Eigen::Index i = 1; i < s.size(); ++i) rest += s[i];
  return std::max(s[0] - rest, 0.0);
}

double f_a(const TauMatrix& t) { return f_a(t.tau); }

}  // namespace tritangle
