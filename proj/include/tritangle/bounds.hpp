#pragma once

// Mixed-state machinery: the eigenbasis A tensor, its nested Kronecker
// splits A -> B_j -> (C_j)_m, the Wootters-style infimum, three lower bounds
// and a Monte-Carlo upper estimate of the convex roof.

#include "tritangle/optimizer.hpp"
#include "tritangle/state.hpp"

#include <cstdint>
#include <vector>

namespace tritangle {

inline constexpr int kDefaultMaxRank = 8;
inline constexpr double kStructureTol = 1e-8;

/// Which polynomial representation of the cube terms to assemble.
enum class AForm {
  /// 1/2 [X00 X11 + X11 X00 - X01 X10 - X10 X01]: exchange and conjugation
  /// symmetric.
  kSymmetrized,
  /// X00 X11 - X10 X01 as written term by term; same diagonal, not symmetric.
  kTwoTerm,
};

/// A[l,m,j,k; l',m',j',k'] stored as an r^4 x r^4 matrix, row (l,m,j,k) and
/// column (l',m',j',k') in lexicographic order (0-based indices).
struct ATensor {
  int r = 0;
  AForm form = AForm::kSymmetrized;
  CMatrix a;
  /// Low-rank form of the (lm|jk) rearrangement: A~ = left * right^T.
  CMatrix left;
  CMatrix right;

  static Eigen::Index index(int r, int l, int m, int j, int k) {
    return ((static_cast<Eigen::Index>(l) * r + m) * r + j) * r + k;
  }
  Complex operator()(int l, int m, int j, int k, int lp, int mp, int jp, int kp) const {
    return a(index(r, l, m, j, k), index(r, lp, mp, jp, kp));
  }
  /// Rearrangement across the (lm | jk) boundary, r^4 x r^4.
  CMatrix rearranged() const;
};

struct ASymmetry {
  double exchange = 0.0;
  double conjugation = 0.0;
  double scale = 0.0;  // ||A||_max
};

ASymmetry measure_symmetries(const ATensor& a);

struct BuildAOptions {
  int max_rank = kDefaultMaxRank;
  AForm form = AForm::kSymmetrized;
  int threads = 1;
};

/// Throws RankTooLarge when spec.rank() > max_rank.
ATensor build_A(const Spectrum& spec, const BuildAOptions& opts = {});

struct BTerm {
  CMatrix b;  // r^2 x r^2, row (l,m), column (l',m')
  double sigma = 0.0;
};

/// Takagi split of the rearranged A; sign of each B fixed by Re tr(B~) >= 0.
/// Throws NotSymmetric when exchange symmetry fails.
std::vector<BTerm> split_A_to_B(const ATensor& a, double trunc = 1e-12);

struct CTerm {
  CMatrix c;  // r x r
  double sigma = 0.0;
};

/// Hermitian PSD factorization of the rearranged B; throws NotHermitian or
/// NotPSD when B is not of the form sum C (x) C*.
std::vector<CTerm> split_B_to_C(const CMatrix& b, int r, double trunc = 1e-12);

/// SVD factorization of the rearranged B, C = unvec(sqrt(s) u). Agrees with
/// split_B_to_C whenever the latter succeeds; otherwise the factors do not
/// reassemble B and the resulting bounds are not certified.
std::vector<CTerm> split_B_to_C_svd(const CMatrix& b, int r, double trunc = 1e-12);

enum class StructurePolicy { kStrict, kFormal };

struct StructureReport {
  bool exact = true;
  /// max over j of ||B~_j - B~_j^dagger||_max / ||B~_j||_F
  double hermitian_defect = 0.0;
  /// max over j of -lambda_min(herm(B~_j)) / ||B~_j||_F, clipped at 0
  double psd_defect = 0.0;
  /// max over (j,m) of ||C - C^T||_max / ||C||_F
  double c_asymmetry = 0.0;
  /// ||sum_j B_j (x) B_j - A||_max / ||A||_max
  double b_reconstruction = 0.0;
};

struct CFamily {
  int r = 0;
  std::vector<double> b_sigmas;
  std::vector<std::vector<CTerm>> groups;
  StructureReport structure;

  int outer_count() const { return static_cast<int>(groups.size()); }
  std::vector<int> inner_counts() const;
  int total_terms() const;
  bool empty() const { return total_terms() == 0; }
};

CFamily decompose(const ATensor& a, StructurePolicy policy = StructurePolicy::kStrict,
                  double trunc = 1e-12);

/// max(l1 - sum_{i>1} l_i, 0) over singular values of the symmetric C.
/// Symmetrizes when ||C - C^T||_max <= 1e-8 ||C||_F, throws NotSymmetric
/// otherwise.
double wootters_inf(const CMatrix& c);

/// Same functional on the symmetric part (C + C^T)/2; only that part enters
/// sum_i |(U^T C U)_ii|.
double wootters_inf_symmetric_part(const CMatrix& c);

struct BoundResult {
  double value = 0.0;
  OptimResult optim;
};

BoundResult lower_bound_zZ(const CFamily& fam, const OptimizerConfig& cfg = {});
BoundResult lower_bound_Z(const CFamily& fam, const OptimizerConfig& cfg = {});
/// Throws EmptyFamily on an empty family.
double lower_bound_maxC(const CFamily& fam);

struct RoofConfig {
  int samples = 1000;
  /// Ensemble size N >= r; 0 selects max(2r, r + 2).
  int ensemble = 0;
  std::uint64_t seed = 0;
  int threads = 1;
  bool include_canonical = true;
};

struct RoofResult {
  double value = 0.0;
  int best_sample = 0;
  int ensemble = 0;
  int samples = 0;
  /// Number of decomposition states with nonzero weight in the best sample.
  int best_support = 0;
};

/// min over sampled decompositions Psi = Phi M^(1/2) U of sum_i F(Psi_i),
/// U the first r rows of a Haar N x N unitary; sample 0 is U = [I_r | 0].
RoofResult roof_upper(const Spectrum& spec, const RoofConfig& cfg = {});

}  // namespace tritangle
