#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ipep/schedules.hpp"

namespace ipep {

// Dual multipliers certifying the convergence bound. v[i] stores v_{i,i+1}
// for i = 0..K-1, v_star stores v_{*,0}..v_{*,K}.
struct DualCertificate {
  double tau = 0.0;
  Eigen::VectorXd v;
  Eigen::VectorXd v_star;
  Eigen::VectorXd u;
  int horizon = 0;
  double L = 0.0;
};

// Index bookkeeping for the Gram basis [x_0 | e_0..e_{K-1} | g_0..g_K] of
// dimension 2K+2. The certificate matrices use the same block order
// [tau | e | g]; code indices are 0-based (the written formulas are 1-based,
// so block row i there is code row i-1).
struct GramIndexing {
  int K = 0;

  int dim() const { return 2 * K + 2; }
  int x0() const { return 0; }
  int e(int i) const;  // 0 <= i < K
  int g(int i) const;  // 0 <= i <= K

  // Representation of x_k = x_0 - (1/L) sum_i theta_{k,i}(g_i + e_i) in the
  // basis; x_* and g_* are the zero vector.
  Eigen::VectorXd x_composite(int k, const ThetaTable& theta, double L) const;
};

// Interpolation-constraint matrix
//   A^{ij} = 1/2 ((x_i - x_j) g_j' + g_j (x_i - x_j)') + (1/2L)(g_i - g_j)(g_i - g_j)'
// over the Gram basis; pass i or j = -1 for the optimal point (*).
Eigen::MatrixXd gram_interp_matrix(const GramIndexing& idx, int i, int j, const ThetaTable& theta,
                                   double L);

// tau = L/(4 A_K), v_{i,i+1} = A_i/A_K, v_star by telescoping, u the
// closed-form coefficients. Requires a strictly nondegenerate schedule.
DualCertificate build_certificate(const StepsizeSchedule& schedule, double L);

// Coefficient of each objective-value basis vector after summing the dual
// equality constraint; all K+1 entries must vanish.
Eigen::VectorXd check_dual_equality(const DualCertificate& certificate);

// The PSD-constraint matrix of the dual problem after substituting the
// closed-form multipliers, assembled blockwise:
//   [ tau  0   p ]
//   [ 0    U   B ]      U = diag(u), p_i = -alpha_{i-1}/(2 A_K),
//   [ p'   B'  C ]      order 2K+2.
Eigen::MatrixXd build_M(const StepsizeSchedule& schedule, double L, const Eigen::VectorXd& u);

// Same matrix assembled from first principles as
//   sum v_{i,i+1} A^{i,i+1} + sum v_{*,i} A^{*,i} + tau x0 x0' + sum u_i e_i e_i'
//   + (1/2L) g_K g_K'
// with theta from the optimized-gradient family. Used as an independent
// check of build_M and as the backend for the SDP export.
Eigen::MatrixXd assemble_dual_lhs(const StepsizeSchedule& schedule, double L,
                                  const Eigen::VectorXd& u);

// Rank-one split M = (1/tau) w w' + R with w the first column of M. R's
// bottom-right block collapses to diag(0, (A_{i-1}-alpha_{i-1}^2)/(L A_K)).
Eigen::MatrixXd build_R(const StepsizeSchedule& schedule, double L, const Eigen::VectorXd& u);

// Schur complement of the diagonal block D = diag((A_i - alpha_i^2)/(L A_K))
// in R with the zero first row/column and the zero g_0 row/column removed:
// S = U - B' D^{-1} B''. Order K; u appears only on the diagonal and every
// off-diagonal entry is <= 0. Requires a strictly nondegenerate schedule.
Eigen::MatrixXd build_S(const StepsizeSchedule& schedule, double L, const Eigen::VectorXd& u);

struct CertificateReport {
  bool psd_M = false;
  double min_eig_M = 0.0;
  double fro_norm_M = 0.0;
  bool diag_dominant_S = false;
  double min_row_sum_S = 0.0;
  double equality_residual = 0.0;
};

// Feasibility checks for given u: eigenvalue test on M (tolerance
// tol_psd * |M|_F), row-sum test on S, and the dual equality residual.
CertificateReport verify_certificate(const StepsizeSchedule& schedule, double L,
                                     const Eigen::VectorXd& u, double tol_psd = 1e-8,
                                     double tol_rowsum = 1e-10);

// Fast PSD path: Cholesky of M + shift I (shift defaults to 1e-8 |M|_F).
// Cheaper than the eigendecomposition, same tolerance semantics.
bool psd_cholesky_shifted(const Eigen::MatrixXd& M, double shift = -1.0);

struct InterpolationPoint {
  Eigen::VectorXd x;
  Eigen::VectorXd g;
  double f = 0.0;
};

// Worst violation of the smooth-convex interpolation conditions
//   f_i - f_j - g_j'(x_i - x_j) >= (1/2L) |g_i - g_j|^2
// over ordered pairs: max of (rhs - lhs), so <= 0 means interpolable.
double interpolation_check(const std::vector<InterpolationPoint>& points, double L);

}  // namespace ipep
