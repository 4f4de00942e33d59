#include "tritangle/bounds.hpp"

#include "tritangle/error.hpp"
#include "tritangle/kron.hpp"
#include "tritangle/parallel.hpp"
#include "tritangle/random.hpp"
#include "tritangle/tangle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tritangle {

CMatrix ATensor::rearranged() const {
  if (left.cols() > 0) return left * right.transpose();
  return rearrange(a, r * r, r * r);
}

ASymmetry measure_symmetries(const ATensor& t) {
  ASymmetry s;
  const int r = t.r;
  if (r == 0) return s;
  s.scale = max_abs(t.a);
  for (int l = 0; l < r; ++l)
    for (int m = 0; m < r; ++m)
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k)
          for (int lp = 0; lp < r; ++lp)
            for (int mp = 0; mp < r; ++mp)
              for (int jp = 0; jp < r; ++jp)
                for (int kp = 0; kp < r; ++kp) {
                  const Complex v = t(l, m, j, k, lp, mp, jp, kp);
                  // (lm) <-> (jk) together with (l'm') <-> (j'k').
                  s.exchange = std::max(s.exchange, std::abs(v - t(j, k, l, m, jp, kp, lp, mp)));
                  // Each unconjugated slot swapped with its conjugated partner.
                  s.conjugation = std::max(
                      s.conjugation, std::abs(std::conj(v) - t(m, l, k, j, mp, lp, kp, jp)));
                }
  return s;
}

namespace {

// X_hg(a,a'; b,b') = sum_i m_hi(a,a') conj(m_gi(b,b')), laid out as
// vec(P_hg) with P_hg[(l,m),(l',m')] = X_hg(l,l'; m,m').
CVector x_vec(const std::vector<Matrix2c>& m, int r, int h, int g) {
  const int r2 = r * r;
  CVector v(static_cast<Eigen::Index>(r2) * r2);
  for (int l = 0; l < r; ++l)
    for (int lp = 0; lp < r; ++lp) {
      const Matrix2c& a = m[static_cast<std::size_t>(l * r + lp)];
      for (int mm = 0; mm < r; ++mm)
        for (int mp = 0; mp < r; ++mp) {
          const Matrix2c& b = m[static_cast<std::size_t>(mm * r + mp)];
          const Complex x = a(h, 0) * std::conj(b(g, 0)) + a(h, 1) * std::conj(b(g, 1));
          v[(l * r + mm) + static_cast<Eigen::Index>(r2) * (lp * r + mp)] = x;
        }
    }
  return v;
}

CMatrix scaled_vectors(const Spectrum& s) {
  CMatrix ps = s.eigenvectors;
  for (int l = 0; l < s.rank(); ++l) ps.col(l) *= std::sqrt(s.eigenvalues[l]);
  return ps;
}

}  // namespace

ATensor build_A(const Spectrum& spec, const BuildAOptions& opts) {
  if (spec.rank() > opts.max_rank) {
    throw Error(ErrorCode::kRankTooLarge, "rank " + std::to_string(spec.rank()) +
                                              " exceeds the limit " +
                                              std::to_string(opts.max_rank));
  }
  ATensor out;
  out.r = spec.rank();
  out.form = opts.form;
  const int r = out.r;
  if (r == 0) return out;
  const Spectrum s = canonicalize_degenerate(spec);
  const CMatrix ps = scaled_vectors(s);
  const auto sels = enumerate_selectors(s.dims);
  const Eigen::Index n4 = static_cast<Eigen::Index>(r) * r * r * r;
  const int per_cube = opts.form == AForm::kSymmetrized ? 4 : 2;
  const auto ncols = static_cast<Eigen::Index>(sels.size()) * per_cube;
  out.left.resize(n4, ncols);
  out.right.resize(n4, ncols);
  parallel_for(sels.size(), opts.threads, [&](std::size_t c) {
    std::vector<Cube> cubes;
    cubes.reserve(static_cast<std::size_t>(r));
    for (int l = 0; l < r; ++l) cubes.push_back(extract_cube(CVector(ps.col(l)), s.dims, sels[c]));
    std::vector<Matrix2c> m(static_cast<std::size_t>(r * r));
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        m[static_cast<std::size_t>(a * r + b)] = cube_bilinear_all(cubes[a], cubes[b]);
      }
    const CVector v00 = x_vec(m, r, 0, 0), v11 = x_vec(m, r, 1, 1);
    const CVector v01 = x_vec(m, r, 0, 1), v10 = x_vec(m, r, 1, 0);
    const auto base = static_cast<Eigen::Index>(c) * per_cube;
    if (opts.form == AForm::kSymmetrized) {
      out.left.col(base) = v00;
      out.left.col(base + 1) = v11;
      out.left.col(base + 2) = v01;
      out.left.col(base + 3) = v10;
      out.right.col(base) = 0.5 * v11;
      out.right.col(base + 1) = 0.5 * v00;
      out.right.col(base + 2) = -0.5 * v10;
      out.right.col(base + 3) = -0.5 * v01;
    } else {
      out.left.col(base) = v00;
      out.left.col(base + 1) = v10;
      out.right.col(base) = v11;
      out.right.col(base + 1) = -v01;
    }
  });
  out.a = unrearrange(out.left * out.right.transpose(), r * r, r * r);
  return out;
}

namespace {

double rearranged_trace_re(const CMatrix& b, int r) {
  // B~[(l,l'),(m,m')] = B[(l,m),(l',m')]; diagonal entries have l = m, l' = m'.
  double t = 0.0;
  for (int l = 0; l < r; ++l)
    for (int lp = 0; lp < r; ++lp) t += b(l * r + l, lp * r + lp).real();
  return t;
}

}  // namespace

std::vector<BTerm> split_A_to_B(const ATensor& a, double trunc) {
  std::vector<BTerm> out;
  const int r = a.r;
  if (r == 0) return out;
  const int r2 = r * r;
  TakagiFactors tk;
  if (a.left.cols() > 0) {
    // Range basis of the low-rank form; both factors' spans are covered so
    // A~ = Q K Q^T holds exactly and K carries A~'s symmetry defect.
    CMatrix span(a.left.rows(), a.left.cols() + a.right.cols());
    span << a.left, a.right;
    Eigen::BDCSVD<CMatrix> svd(span, Eigen::ComputeThinU);
    const RVector& sv = svd.singularValues();
    Eigen::Index k = 0;
    while (k < sv.size() && sv[0] > 0.0 && sv[k] > 1e-13 * sv[0]) ++k;
    if (k == 0) return out;
    const CMatrix q = svd.matrixU().leftCols(k);
    const CMatrix kmat = (q.adjoint() * a.left) * (q.adjoint() * a.right).transpose();
    if (kmat.norm() == 0.0) return out;
    const TakagiFactors small = takagi_factor(kmat, trunc);
    tk.sigmas = small.sigmas;
    tk.vectors = q * small.vectors;
  } else {
    const CMatrix at = a.rearranged();
    if (at.norm() == 0.0) return out;
    tk = takagi_factor(at, trunc);
  }
  for (std::size_t j = 0; j < tk.sigmas.size(); ++j) {
    BTerm t;
    t.sigma = tk.sigmas[j];
    t.b = unvec(std::sqrt(t.sigma) * tk.vectors.col(static_cast<Eigen::Index>(j)), r2, r2);
    if (rearranged_trace_re(t.b, r) < 0.0) t.b = -t.b;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<CTerm> split_B_to_C(const CMatrix& b, int r, double trunc) {
  const HermitianFactors hf = hermitian_psd_factor(rearrange(b, r, r), trunc);
  std::vector<CTerm> out;
  for (std::size_t m = 0; m < hf.lambdas.size(); ++m) {
    CTerm t;
    t.sigma = hf.lambdas[m];
    t.c = unvec(std::sqrt(t.sigma) * hf.vectors.col(static_cast<Eigen::Index>(m)), r, r);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<CTerm> split_B_to_C_svd(const CMatrix& b, int r, double trunc) {
  const CMatrix bt = rearrange(b, r, r);
  Eigen::JacobiSVD<CMatrix> svd(bt, Eigen::ComputeFullU);
  const RVector& s = svd.singularValues();
  std::vector<CTerm> out;
  for (Eigen::Index m = 0; m < s.size(); ++m) {
    if (s[0] <= 0.0 || s[m] <= trunc * s[0]) break;
    CTerm t;
    t.sigma = s[m];
    t.c = unvec(std::sqrt(s[m]) * svd.matrixU().col(m), r, r);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<int> CFamily::inner_counts() const {
  std::vector<int> out;
  for (const auto& g : groups) out.push_back(static_cast<int>(g.size()));
  return out;
}

int CFamily::total_terms() const {
  int n = 0;
  for (const auto& g : groups) n += static_cast<int>(g.size());
  return n;
}

CFamily decompose(const ATensor& a, StructurePolicy policy, double trunc) {
  CFamily fam;
  fam.r = a.r;
  const auto bs = split_A_to_B(a, trunc);
  const int r = a.r;
  if (r > 0 && r <= 4) {
    CMatrix sum = CMatrix::Zero(a.a.rows(), a.a.cols());
    for (const auto& t : bs) sum += kron(t.b, t.b);
    const double scale = max_abs(a.a);
    fam.structure.b_reconstruction = scale > 0.0 ? max_abs(sum - a.a) / scale : 0.0;
  } else {
    fam.structure.b_reconstruction = -1.0;
  }
  for (const auto& t : bs) {
    fam.b_sigmas.push_back(t.sigma);
    const CMatrix bt = rearrange(t.b, r, r);
    const double fro = bt.norm();
    const double herm = fro > 0.0 ? max_abs(bt - bt.adjoint()) / fro : 0.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (bt + bt.adjoint()), Eigen::EigenvaluesOnly);
    const double psd = fro > 0.0 ? std::max(0.0, -eig.eigenvalues()[0] / fro) : 0.0;
    fam.structure.hermitian_defect = std::max(fam.structure.hermitian_defect, herm);
    fam.structure.psd_defect = std::max(fam.structure.psd_defect, psd);
    const bool exact = herm <= kStructureTol && psd <= kStructureTol;
    std::vector<CTerm> cs;
    if (policy == StructurePolicy::kStrict || exact) {
      cs = split_B_to_C(t.b, r, trunc);
    } else {
      fam.structure.exact = false;
      cs = split_B_to_C_svd(t.b, r, trunc);
    }
    for (const auto& c : cs) {
      const double cf = c.c.norm();
      if (cf > 0.0) {
        fam.structure.c_asymmetry =
            std::max(fam.structure.c_asymmetry, max_abs(c.c - c.c.transpose()) / cf);
      }
    }
    fam.groups.push_back(std::move(cs));
  }
  return fam;
}

namespace {

double wootters_from_singular(const RVector& s) {
  if (s.size() == 0) return 0.0;
  double rest = 0.0;
  for (Eigen::Index i = 1; i < s.size(); ++i) rest += s[i];
  return std::max(s[0] - rest, 0.0);
}

}  // namespace

double wootters_inf_symmetric_part(const CMatrix& c) {
  if (c.rows() != c.cols()) throw Error(ErrorCode::kNotSquare, "wootters_inf needs a square matrix");
  const Eigen::Index n = c.rows();
  if (n == 1) return std::abs(c(0, 0));
  if (n == 2) {
    // s1 - s2 = sqrt(||S||_F^2 - 2 |det S|) for a 2x2 S
    const Complex off = 0.5 * (c(0, 1) + c(1, 0));
    const double fro2 = std::norm(c(0, 0)) + std::norm(c(1, 1)) + 2.0 * std::norm(off);
    const double det = std::abs(c(0, 0) * c(1, 1) - off * off);
    return std::sqrt(std::max(fro2 - 2.0 * det, 0.0));
  }
  const CMatrix sym = 0.5 * (c + c.transpose());
  Eigen::JacobiSVD<CMatrix> svd(sym);
  return wootters_from_singular(svd.singularValues());
}

double wootters_inf(const CMatrix& c) {
  if (c.rows() != c.cols()) throw Error(ErrorCode::kNotSquare, "wootters_inf needs a square matrix");
  const double fro = c.norm();
  const double asym = max_abs(c - c.transpose());
  if (asym > 1e-8 * fro) {
    throw Error(ErrorCode::kNotSymmetric, "||C - C^T||_max = " + std::to_string(asym) +
                                              " vs ||C||_F = " + std::to_string(fro));
  }
  return wootters_inf_symmetric_part(c);
}

namespace {

// All C matrices of a family as columns vec(C), with their outer index.
struct TermStack {
  int r = 0;
  CMatrix cols;
  std::vector<int> group;

  int size() const { return static_cast<int>(group.size()); }
  CMatrix combine(const CVector& coef) const {
    const CVector k = cols * coef;
    return Eigen::Map<const CMatrix>(k.data(), r, r);
  }
};

TermStack stack_terms(const CFamily& fam) {
  TermStack st;
  st.r = fam.r;
  st.cols.resize(static_cast<Eigen::Index>(fam.r) * fam.r, fam.total_terms());
  for (std::size_t j = 0; j < fam.groups.size(); ++j) {
    for (const auto& t : fam.groups[j]) {
      st.cols.col(st.size()) = Eigen::Map<const CVector>(t.c.data(), t.c.size());
      st.group.push_back(static_cast<int>(j));
    }
  }
  return st;
}

double evaluate(const CFamily& fam, const CMatrix& k) {
  return fam.structure.exact ? wootters_inf(k) : wootters_inf_symmetric_part(k);
}

}  // namespace

BoundResult lower_bound_zZ(const CFamily& fam, const OptimizerConfig& cfg) {
  BoundResult res;
  const TermStack terms = stack_terms(fam);
  if (terms.size() == 0) return res;
  const int rp = fam.outer_count();
  const int nt = terms.size();
  std::vector<ParamKind> kinds;
  kinds.insert(kinds.end(), static_cast<std::size_t>(rp), ParamKind::kMagnitude);
  kinds.insert(kinds.end(), static_cast<std::size_t>(rp), ParamKind::kPhase);
  kinds.insert(kinds.end(), static_cast<std::size_t>(nt), ParamKind::kMagnitude);
  kinds.insert(kinds.end(), static_cast<std::size_t>(nt), ParamKind::kPhase);
  auto objective = [&](const std::vector<double>& p) {
    double g4 = 0.0, h2 = 0.0;
    for (int j = 0; j < rp; ++j) g4 += (p[j] * p[j]) * (p[j] * p[j]);
    for (int t = 0; t < nt; ++t) h2 += p[2 * rp + t] * p[2 * rp + t];
    if (g4 <= 0.0 || h2 <= 0.0) return 0.0;
    const double scale = 1.0 / (std::pow(g4, 0.25) * std::sqrt(h2));
    CVector coef(nt);
    for (int t = 0; t < nt; ++t) {
      const int j = terms.group[static_cast<std::size_t>(t)];
      coef[t] = std::polar(std::abs(p[j]) * std::abs(p[2 * rp + t]) * scale, p[rp + j] + p[2 * rp + nt + t]);
    }
    return evaluate(fam, terms.combine(coef));
  };
  res.optim = maximize(objective, kinds, cfg);
  res.value = res.optim.value;
  return res;
}

BoundResult lower_bound_Z(const CFamily& fam, const OptimizerConfig& cfg) {
  BoundResult res;
  const TermStack terms = stack_terms(fam);
  if (terms.size() == 0) return res;
  const int rp = fam.outer_count();
  const int nt = terms.size();
  std::vector<ParamKind> kinds;
  kinds.insert(kinds.end(), static_cast<std::size_t>(nt), ParamKind::kMagnitude);
  kinds.insert(kinds.end(), static_cast<std::size_t>(nt), ParamKind::kPhase);
  auto objective = [&](const std::vector<double>& p) {
    double h2 = 0.0;
    for (int t = 0; t < nt; ++t) h2 += p[t] * p[t];
    if (h2 <= 0.0) return 0.0;
    const double inv = 1.0 / std::sqrt(h2);
    CVector coef(nt);
    for (int t = 0; t < nt; ++t) coef[t] = std::polar(std::abs(p[t]) * inv, p[nt + t]);
    return evaluate(fam, terms.combine(coef));
  };
  res.optim = maximize(objective, kinds, cfg);
  res.value = res.optim.value * std::pow(1.0 / rp, 0.25);
  return res;
}

double lower_bound_maxC(const CFamily& fam) {
  const CTerm* best = nullptr;
  for (const auto& g : fam.groups) {
    for (const auto& t : g) {
      if (best == nullptr || t.sigma > best->sigma) best = &t;
    }
  }
  if (best == nullptr) throw Error(ErrorCode::kEmptyFamily, "no C matrices to choose from");
  return evaluate(fam, best->c);
}

RoofResult roof_upper(const Spectrum& spec, const RoofConfig& cfg) {
  const int r = spec.rank();
  RoofResult res;
  res.ensemble = cfg.ensemble > 0 ? cfg.ensemble : std::max(2 * r, r + 2);
  if (res.ensemble < r) {
    throw Error(ErrorCode::kBadEnsembleSize, "ensemble size " + std::to_string(res.ensemble) +
                                                 " is below the rank " + std::to_string(r));
  }
  if (cfg.samples < 1) throw Error(ErrorCode::kBadParameter, "need at least one sample");
  res.samples = cfg.samples;
  if (r == 0) return res;
  const Spectrum s = canonicalize_degenerate(spec);
  const CMatrix ps = scaled_vectors(s);
  const int n = res.ensemble;
  const int first = cfg.include_canonical ? 0 : 1;
  if (first >= cfg.samples) throw Error(ErrorCode::kBadParameter, "no samples left to draw");
  std::vector<double> totals(static_cast<std::size_t>(cfg.samples - first));
  std::vector<int> support(totals.size());
  parallel_for(totals.size(), cfg.threads, [&](std::size_t idx) {
    const int t = static_cast<int>(idx) + first;
    CMatrix u;
    if (t == 0) {
      u = CMatrix::Identity(r, n);
    } else {
      Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(t));
      u = haar_unitary(n, rng).topRows(r);
    }
    const CMatrix psi = ps * u;
    const auto f = F_pure_columns(psi, s.dims);
    totals[idx] = pairwise_sum(f.data(), f.size());
    int nz = 0;
    for (Eigen::Index c = 0; c < psi.cols(); ++c) nz += psi.col(c).squaredNorm() > 1e-28 ? 1 : 0;
    support[idx] = nz;
  });
  res.value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < totals.size(); ++i) {
    if (totals[i] < res.value) {
      res.value = totals[i];
      res.best_sample = static_cast<int>(i) + first;
      res.best_support = support[i];
    }
  }
  return res;
}

}  // namespace tritangle
