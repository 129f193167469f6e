#include "ipep/certificate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "ipep/bounds.hpp"
#include "ipep/errors.hpp"
#include "ipep/numerics.hpp"

namespace ipep {

namespace {

void require_nondegenerate(const StepsizeSchedule& s) {
  if (!s.strictly_nondegenerate()) {
    throw DegenerateStepsizeError(
        "degenerate schedule (A_k = alpha_k^2): u = infinity is the unique feasible "
        "dual solution");
  }
}

void check_u(const StepsizeSchedule& s, const Eigen::VectorXd& u) {
  if (u.size() != s.horizon) {
    throw InvalidParameterError("u has " + std::to_string(u.size()) + " entries, expected " +
                                std::to_string(s.horizon));
  }
}

}  // namespace

int GramIndexing::e(int i) const {
  if (i < 0 || i >= K) throw InvalidParameterError("e-index out of range");
  return 1 + i;
}

int GramIndexing::g(int i) const {
  if (i < 0 || i > K) throw InvalidParameterError("g-index out of range");
  return K + 1 + i;
}

Eigen::VectorXd GramIndexing::x_composite(int k, const ThetaTable& theta, double L) const {
  if (k < 0 || k > K) throw InvalidParameterError("x-index out of range");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim());
  v[x0()] = 1.0;
  for (int i = 0; i < k; ++i) {
    v[g(i)] -= theta(k, i) / L;
    v[e(i)] -= theta(k, i) / L;
  }
  return v;
}

Eigen::MatrixXd gram_interp_matrix(const GramIndexing& idx, int i, int j, const ThetaTable& theta,
                                   double L) {
  const int n = idx.dim();
  Eigen::VectorXd xi = i < 0 ? Eigen::VectorXd::Zero(n) : idx.x_composite(i, theta, L);
  Eigen::VectorXd xj = j < 0 ? Eigen::VectorXd::Zero(n) : idx.x_composite(j, theta, L);
  Eigen::VectorXd gi = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd gj = Eigen::VectorXd::Zero(n);
  if (i >= 0) gi[idx.g(i)] = 1.0;
  if (j >= 0) gj[idx.g(j)] = 1.0;

  Eigen::VectorXd d = xi - xj;
  Eigen::VectorXd dg = gi - gj;
  return 0.5 * (d * gj.transpose() + gj * d.transpose()) +
         (1.0 / (2.0 * L)) * dg * dg.transpose();
}

DualCertificate build_certificate(const StepsizeSchedule& s, double L) {
  if (!(L > 0)) throw InvalidParameterError("Lipschitz constant must be > 0");
  require_nondegenerate(s);
  const int K = s.horizon;
  const double AK = s.A[K];

  DualCertificate c;
  c.horizon = K;
  c.L = L;
  c.tau = L / (4.0 * AK);
  c.v.resize(K);
  for (int i = 0; i < K; ++i) c.v[i] = s.A[i] / AK;
  c.v_star.resize(K + 1);
  c.v_star[0] = c.v[0];
  for (int i = 1; i < K; ++i) c.v_star[i] = c.v[i] - c.v[i - 1];
  c.v_star[K] = 1.0 - c.v[K - 1];
  c.u = u_igogm(s, L);
  return c;
}

Eigen::VectorXd check_dual_equality(const DualCertificate& c) {
  const int K = c.horizon;
  // Coefficient of each objective-value coordinate in
  // f_K + sum v_{i,i+1}(f_i - f_{i+1}) + sum v_{*,i}(f_* - f_i), with f_* = 0.
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(K + 1);
  coef[K] += 1.0;
  for (int i = 0; i < K; ++i) {
    coef[i] += c.v[i];
    coef[i + 1] -= c.v[i];
  }
  for (int i = 0; i <= K; ++i) coef[i] -= c.v_star[i];
  return coef;
}

Eigen::MatrixXd build_M(const StepsizeSchedule& s, double L, const Eigen::VectorXd& u) {
  if (!(L > 0)) throw InvalidParameterError("Lipschitz constant must be > 0");
  check_u(s, u);
  const int K = s.horizon;
  const double AK = s.A[K];
  const auto& a = s.alpha;
  const auto& A = s.A;
  GramIndexing idx{K};

  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(idx.dim(), idx.dim());
  M(0, 0) = L / (4.0 * AK);
  for (int j = 0; j <= K; ++j) {
    M(0, idx.g(j)) = M(idx.g(j), 0) = -a[j] / (2.0 * AK);
  }
  for (int i = 0; i < K; ++i) M(idx.e(i), idx.e(i)) = u[i];
  for (int r = 0; r < K; ++r) {
    for (int c = r + 1; c <= K; ++c) {
      double v = (c == r + 1) ? (2.0 * a[r] * a[c] + A[r]) / (2.0 * L * AK)
                              : a[r] * a[c] / (L * AK);
      M(idx.e(r), idx.g(c)) = M(idx.g(c), idx.e(r)) = v;
    }
  }
  for (int r = 0; r <= K; ++r) {
    for (int c = 0; c <= K; ++c) {
      M(idx.g(r), idx.g(c)) = (r == c) ? A[r] / (L * AK) : a[r] * a[c] / (L * AK);
    }
  }
  return M;
}

Eigen::MatrixXd assemble_dual_lhs(const StepsizeSchedule& s, double L, const Eigen::VectorXd& u) {
  check_u(s, u);
  const int K = s.horizon;
  const double AK = s.A[K];
  GramIndexing idx{K};
  ThetaTable theta = theta_ogm(s);

  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(idx.dim(), idx.dim());
  for (int i = 0; i < K; ++i) {
    M += (s.A[i] / AK) * gram_interp_matrix(idx, i, i + 1, theta, L);
  }
  Eigen::VectorXd v_star(K + 1);
  v_star[0] = s.A[0] / AK;
  for (int i = 1; i < K; ++i) v_star[i] = (s.A[i] - s.A[i - 1]) / AK;
  v_star[K] = 1.0 - s.A[K - 1] / AK;
  for (int i = 0; i <= K; ++i) {
    M += v_star[i] * gram_interp_matrix(idx, -1, i, theta, L);
  }
  M(idx.x0(), idx.x0()) += L / (4.0 * AK);
  for (int i = 0; i < K; ++i) M(idx.e(i), idx.e(i)) += u[i];
  M(idx.g(K), idx.g(K)) += 1.0 / (2.0 * L);
  return M;
}

Eigen::MatrixXd build_R(const StepsizeSchedule& s, double L, const Eigen::VectorXd& u) {
  Eigen::MatrixXd M = build_M(s, L, u);
  double tau = M(0, 0);
  Eigen::VectorXd w = M.col(0);
  return M - (w * w.transpose()) / tau;
}

Eigen::MatrixXd build_S(const StepsizeSchedule& s, double L, const Eigen::VectorXd& u) {
  if (!(L > 0)) throw InvalidParameterError("Lipschitz constant must be > 0");
  check_u(s, u);
  require_nondegenerate(s);
  const int K = s.horizon;
  const double AK = s.A[K];
  const auto& a = s.alpha;
  const auto& A = s.A;

  // B with its zero first column removed is upper triangular K x K; D is the
  // diagonal block remaining after dropping the zero g_0 row/column of
  // C - (1/tau) p'p. S = U - B D^{-1} B' evaluated entrywise.
  auto B = [&](int r, int c) {  // 0-based, c >= r
    return (c == r + 1) ? (2.0 * a[r] * a[c] + A[r]) / (2.0 * L * AK) : a[r] * a[c] / (L * AK);
  };
  Eigen::VectorXd Dinv(K + 1);
  for (int m = 1; m <= K; ++m) Dinv[m] = L * AK / (A[m] - a[m] * a[m]);

  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(K, K);
  for (int r = 0; r < K; ++r) {
    for (int c = r; c < K; ++c) {
      // sum over the eliminated block: entries m = c+1..K contribute
      // B(r,m) * B(c,m) / D_m (B is upper triangular, so m starts at the
      // later of the two rows; here c >= r).
      KahanSum acc;
      for (int m = K; m >= c + 1; --m) acc.add(B(r, m) * B(c, m) * Dinv[m]);
      double val = -acc.value();
      if (r == c) val += u[r];
      S(r, c) = val;
      S(c, r) = val;
    }
  }
  return S;
}

CertificateReport verify_certificate(const StepsizeSchedule& s, double L,
                                     const Eigen::VectorXd& u, double tol_psd,
                                     double tol_rowsum) {
  CertificateReport rep;
  Eigen::MatrixXd M = build_M(s, L, u);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M, Eigen::EigenvaluesOnly);
  rep.min_eig_M = eig.eigenvalues().minCoeff();
  rep.fro_norm_M = M.norm();
  rep.psd_M = rep.min_eig_M >= -tol_psd * rep.fro_norm_M;

  if (s.strictly_nondegenerate()) {
    Eigen::MatrixXd S = build_S(s, L, u);
    double min_row = std::numeric_limits<double>::infinity();
    for (int r = 0; r < S.rows(); ++r) {
      KahanSum row;
      for (int c = 0; c < S.cols(); ++c) row.add(S(r, c));
      min_row = std::fmin(min_row, row.value());
    }
    rep.min_row_sum_S = min_row;
    // Off-diagonal entries are <= 0, so the row sum test is exactly the
    // diagonal dominance test.
    rep.diag_dominant_S = min_row >= -tol_rowsum;
  } else {
    rep.min_row_sum_S = -std::numeric_limits<double>::infinity();
    rep.diag_dominant_S = false;
  }

  DualCertificate cert;
  cert.horizon = s.horizon;
  cert.L = L;
  cert.tau = L / (4.0 * s.A[s.horizon]);
  cert.v.resize(s.horizon);
  for (int i = 0; i < s.horizon; ++i) cert.v[i] = s.A[i] / s.A[s.horizon];
  cert.v_star.resize(s.horizon + 1);
  cert.v_star[0] = cert.v[0];
  for (int i = 1; i < s.horizon; ++i) cert.v_star[i] = cert.v[i] - cert.v[i - 1];
  cert.v_star[s.horizon] = 1.0 - cert.v[s.horizon - 1];
  cert.u = u;
  rep.equality_residual = check_dual_equality(cert).cwiseAbs().maxCoeff();
  return rep;
}

bool psd_cholesky_shifted(const Eigen::MatrixXd& M, double shift) {
  if (shift < 0) shift = 1e-8 * M.norm();
  Eigen::MatrixXd shifted = M + shift * Eigen::MatrixXd::Identity(M.rows(), M.cols());
  return Eigen::LLT<Eigen::MatrixXd>(shifted).info() == Eigen::Success;
}

double interpolation_check(const std::vector<InterpolationPoint>& points, double L) {
  if (!(L > 0)) throw InvalidParameterError("Lipschitz constant must be > 0");
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      const auto& pi = points[i];
      const auto& pj = points[j];
      double lhs = pi.f - pj.f - pj.g.dot(pi.x - pj.x);
      double rhs = (pi.g - pj.g).squaredNorm() / (2.0 * L);
      worst = std::fmax(worst, rhs - lhs);
    }
  }
  return points.size() < 2 ? 0.0 : worst;
}

}  // namespace ipep
