#include "ipep/algorithms.hpp"

#include <cmath>
#include <limits>

#include "ipep/csv.hpp"
#include "ipep/errors.hpp"

namespace ipep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_finite(const Eigen::VectorXd& v, const char* what, int iteration) {
  if (!v.allFinite()) throw NumericalFailureError(std::string("non-finite ") + what, iteration);
}

void record_query(Trajectory& t, const OracleQuery& q) {
  t.g_true.push_back(q.g_true);
  t.g_tilde.push_back(q.g_tilde);
  t.e.push_back(q.e);
}

// Fill objective values and the per-iterate optimality measure
// f(x_k) - f* - |grad f(x_k)|^2 / (2L).
void finalize(Trajectory& t, const SmoothConvexProblem& problem) {
  const double L = t.lipschitz;
  for (std::size_t k = 0; k < t.x.size(); ++k) {
    double f = problem.eval(t.x[k]);
    t.f_value.push_back(f);
    if (problem.optimal_value) {
      double gap = f - *problem.optimal_value;
      t.f_gap.push_back(gap);
      t.measure.push_back(gap - t.g_true[k].squaredNorm() / (2.0 * L));
    } else {
      t.f_gap.push_back(kNaN);
      t.measure.push_back(kNaN);
    }
  }
}

void validate_start(const SmoothConvexProblem& problem, const Eigen::VectorXd& x0, int K) {
  if (K < 1) throw InvalidParameterError("horizon K must be >= 1");
  if (x0.size() != problem.dimension) {
    throw InvalidParameterError("x0 has dimension " + std::to_string(x0.size()) +
                                ", problem has " + std::to_string(problem.dimension));
  }
}

// Shared body of iGOGM (dual_factor = 2) and iGFGM (dual_factor = 1).
Trajectory run_generalized(const SmoothConvexProblem& problem, const InexactGradientOracle& oracle,
                           const StepsizeSchedule& schedule, int K, const Eigen::VectorXd& x0,
                           double dual_factor, const char* method) {
  validate_start(problem, x0, K);
  if (schedule.horizon < K) {
    throw InvalidParameterError("schedule horizon " + std::to_string(schedule.horizon) +
                                " < K = " + std::to_string(K));
  }
  const double L = problem.lipschitz;
  Trajectory t;
  t.method = method;
  t.horizon = K;
  t.lipschitz = L;

  Eigen::VectorXd x = x0, z = x0;
  t.x.push_back(x);
  t.y.push_back(x0);
  t.z.push_back(z);
  for (int k = 0; k < K; ++k) {
    OracleQuery q = oracle.query(x, k);
    record_query(t, q);
    Eigen::VectorXd y = x - q.g_tilde / L;
    z -= (dual_factor / L) * schedule.alpha[k] * q.g_tilde;
    double w = schedule.alpha[k + 1] / schedule.A[k + 1];
    x = (1.0 - w) * y + w * z;
    check_finite(x, "iterate", k + 1);
    t.y.push_back(y);
    t.z.push_back(z);
    t.x.push_back(x);
  }
  // Dummy post-step with b_K = 0; only used for the theoretical guarantee.
  OracleQuery qK = oracle.query(x, K);
  record_query(t, qK);
  t.y.push_back(x - qK.g_tilde / L);

  finalize(t, problem);
  return t;
}

void validate_alpha(const std::vector<double>& alpha, int K) {
  if (static_cast<int>(alpha.size()) < K + 1) {
    throw InvalidParameterError("need K+1 alpha entries, got " + std::to_string(alpha.size()));
  }
  if (!(alpha[0] > 0.0 && alpha[0] <= 1.0)) {
    throw InvalidParameterError("alpha_0 must lie in (0,1]");
  }
  double A = alpha[0];
  for (int k = 1; k <= K; ++k) {
    A += alpha[k];
    if (alpha[k] * alpha[k] > A * (1.0 + 1e-12)) {
      throw InvalidParameterError("stepsize condition alpha_k^2 <= A_k violated at k = " +
                                  std::to_string(k));
    }
  }
}

}  // namespace

FeasibleSet FeasibleSet::whole_space() { return {}; }

FeasibleSet FeasibleSet::ball(Eigen::VectorXd center, double radius) {
  if (radius < 0) throw InvalidParameterError("ball radius must be >= 0");
  FeasibleSet q;
  q.kind = Kind::EuclideanBall;
  q.center = std::move(center);
  q.radius = radius;
  return q;
}

Eigen::VectorXd FeasibleSet::project(const Eigen::VectorXd& x) const {
  if (kind == Kind::WholeSpace) return x;
  Eigen::VectorXd d = x - center;
  double n = d.norm();
  if (n <= radius) return x;
  if (n == 0.0) return center;
  return center + (radius / n) * d;
}

Trajectory run_igogm(const SmoothConvexProblem& problem, const InexactGradientOracle& oracle,
                     const StepsizeSchedule& schedule, int K, const Eigen::VectorXd& x0) {
  return run_generalized(problem, oracle, schedule, K, x0, 2.0, "igogm");
}

Trajectory run_igfgm(const SmoothConvexProblem& problem, const InexactGradientOracle& oracle,
                     const StepsizeSchedule& schedule, int K, const Eigen::VectorXd& x0) {
  return run_generalized(problem, oracle, schedule, K, x0, 1.0, "igfgm");
}

Trajectory run_ifgm(const SmoothConvexProblem& problem, const InexactGradientOracle& oracle,
                    const std::vector<double>& alpha, int K, const FeasibleSet& Q,
                    const Eigen::VectorXd& x0) {
  validate_start(problem, x0, K);
  validate_alpha(alpha, K);
  const double L = problem.lipschitz;
  Trajectory t;
  t.method = "ifgm";
  t.horizon = K;
  t.lipschitz = L;

  Eigen::VectorXd x = x0;
  Eigen::VectorXd dual_sum = Eigen::VectorXd::Zero(problem.dimension);
  double A = alpha[0];
  t.x.push_back(x);
  t.y.push_back(x0);
  t.z.push_back(x0);
  for (int k = 0; k < K; ++k) {
    OracleQuery q = oracle.query(x, k);
    record_query(t, q);
    Eigen::VectorXd y = Q.project(x - q.g_tilde / L);
    dual_sum += alpha[k] / L * q.g_tilde;
    Eigen::VectorXd z = Q.project(x0 - dual_sum);
    A += alpha[k + 1];
    double w = alpha[k + 1] / A;
    x = (1.0 - w) * y + w * z;
    check_finite(x, "iterate", k + 1);
    t.y.push_back(y);
    t.z.push_back(z);
    t.x.push_back(x);
  }
  OracleQuery qK = oracle.query(x, K);
  record_query(t, qK);
  t.y.push_back(Q.project(x - qK.g_tilde / L));

  finalize(t, problem);
  return t;
}

Trajectory run_istm(const SmoothConvexProblem& problem, const InexactGradientOracle& oracle,
                    const std::vector<double>& alpha, int K, const FeasibleSet& Q,
                    const Eigen::VectorXd& x0) {
  // K = 0 is meaningful here: the loop body runs once (A_0 = alpha_0).
  if (K < 0) throw InvalidParameterError("horizon K must be >= 0");
  if (x0.size() != problem.dimension) {
    throw InvalidParameterError("x0 has dimension " + std::to_string(x0.size()) +
                                ", problem has " + std::to_string(problem.dimension));
  }
  if (static_cast<int>(alpha.size()) < K + 1) {
    throw InvalidParameterError("need K+1 alpha entries, got " + std::to_string(alpha.size()));
  }
  const double L = problem.lipschitz;
  Trajectory t;
  t.method = "istm";
  t.horizon = K;
  t.lipschitz = L;

  Eigen::VectorXd z_prev = x0, y_prev = x0;
  Eigen::VectorXd dual_sum = Eigen::VectorXd::Zero(problem.dimension);
  double A_prev = 0.0;
  for (int k = 0; k <= K; ++k) {
    double A = A_prev + alpha[k];
    if (alpha[k] * alpha[k] > A * (1.0 + 1e-12)) {
      throw InvalidParameterError("stepsize condition alpha_k^2 <= A_k violated at k = " +
                                  std::to_string(k));
    }
    Eigen::VectorXd x = (A_prev * y_prev + alpha[k] * z_prev) / A;
    check_finite(x, "iterate", k);
    OracleQuery q = oracle.query(x, k);
    record_query(t, q);
    dual_sum += alpha[k] / L * q.g_tilde;
    Eigen::VectorXd z = Q.project(x0 - dual_sum);
    Eigen::VectorXd y = (A_prev * y_prev + alpha[k] * z) / A;
    t.x.push_back(x);
    t.y.push_back(y);
    t.z.push_back(z);
    z_prev = z;
    y_prev = y;
    A_prev = A;
  }

  finalize(t, problem);
  return t;
}

Trajectory run_igfo(const SmoothConvexProblem& problem, const ThetaTable& theta, int K,
                    const std::vector<Eigen::VectorXd>& error_stream, const Eigen::VectorXd& x0) {
  validate_start(problem, x0, K);
  if (theta.horizon() < K) {
    throw InvalidParameterError("theta horizon " + std::to_string(theta.horizon()) +
                                " < K = " + std::to_string(K));
  }
  const double L = problem.lipschitz;
  Trajectory t;
  t.method = "igfo";
  t.horizon = K;
  t.lipschitz = L;

  auto error_at = [&](int k) -> Eigen::VectorXd {
    if (k < static_cast<int>(error_stream.size()) && error_stream[k].size() > 0) {
      if (error_stream[k].size() != problem.dimension) {
        throw InvalidParameterError("error stream entry " + std::to_string(k) +
                                    " has wrong dimension");
      }
      return error_stream[k];
    }
    return Eigen::VectorXd::Zero(problem.dimension);
  };

  t.x.push_back(x0);
  for (int k = 1; k <= K; ++k) {
    // Inexact gradient at the previous iterate becomes available here.
    Eigen::VectorXd g = problem.grad(t.x[k - 1]);
    Eigen::VectorXd e = error_at(k - 1);
    t.g_true.push_back(g);
    t.e.push_back(e);
    t.g_tilde.push_back(g + e);

    Eigen::VectorXd x = x0;
    for (int i = 0; i < k; ++i) x -= theta(k, i) / L * t.g_tilde[i];
    check_finite(x, "iterate", k);
    t.x.push_back(x);
  }
  Eigen::VectorXd gK = problem.grad(t.x[K]);
  t.g_true.push_back(gK);
  t.e.push_back(Eigen::VectorXd::Zero(problem.dimension));
  t.g_tilde.push_back(gK);
  t.y = t.x;
  t.y.push_back(t.x[K] - gK / L);

  finalize(t, problem);
  return t;
}

Trajectory run_ogm(const SmoothConvexProblem& problem, int K, bool last_adjustment,
                   const Eigen::VectorXd& x0) {
  validate_start(problem, x0, K);
  const double L = problem.lipschitz;
  Trajectory t;
  t.method = last_adjustment ? "ogm-adjusted" : "ogm";
  t.horizon = K;
  t.lipschitz = L;

  Eigen::VectorXd x = x0, z = x0;
  double a = 1.0;
  t.x.push_back(x);
  t.y.push_back(x0);
  t.z.push_back(z);
  for (int k = 0; k < K; ++k) {
    Eigen::VectorXd g = problem.grad(x);
    t.g_true.push_back(g);
    t.g_tilde.push_back(g);
    t.e.push_back(Eigen::VectorXd::Zero(problem.dimension));
    Eigen::VectorXd y = x - g / L;
    z -= (2.0 / L) * a * g;
    double sq = (last_adjustment && k == K - 1) ? 8.0 : 4.0;
    a = (1.0 + std::sqrt(1.0 + sq * a * a)) / 2.0;
    x = (1.0 - 1.0 / a) * y + (1.0 / a) * z;
    check_finite(x, "iterate", k + 1);
    t.y.push_back(y);
    t.z.push_back(z);
    t.x.push_back(x);
  }
  Eigen::VectorXd gK = problem.grad(x);
  t.g_true.push_back(gK);
  t.g_tilde.push_back(gK);
  t.e.push_back(Eigen::VectorXd::Zero(problem.dimension));
  t.y.push_back(x - gK / L);

  finalize(t, problem);
  return t;
}

Trajectory run_gd(const SmoothConvexProblem& problem, const InexactGradientOracle& oracle, int K,
                  const Eigen::VectorXd& x0) {
  validate_start(problem, x0, K);
  const double L = problem.lipschitz;
  Trajectory t;
  t.method = "gd";
  t.horizon = K;
  t.lipschitz = L;

  Eigen::VectorXd x = x0;
  t.x.push_back(x);
  t.y.push_back(x0);
  for (int k = 0; k < K; ++k) {
    OracleQuery q = oracle.query(x, k);
    record_query(t, q);
    x -= q.g_tilde / L;
    check_finite(x, "iterate", k + 1);
    t.y.push_back(x);
    t.x.push_back(x);
  }
  OracleQuery qK = oracle.query(x, K);
  record_query(t, qK);
  t.y.push_back(x - qK.g_tilde / L);

  finalize(t, problem);
  return t;
}

std::string trajectory_to_csv(const Trajectory& t, const SmoothConvexProblem& problem) {
  CsvWriter w({"k", "f_gap", "measure", "grad_norm", "err_norm", "x_norm_dist_to_opt"});
  for (std::size_t k = 0; k < t.x.size(); ++k) {
    double dist = kNaN;
    if (problem.minimizer) dist = (t.x[k] - *problem.minimizer).norm();
    w.row({static_cast<double>(k), t.f_gap[k], t.measure[k], t.g_true[k].norm(), t.e[k].norm(),
           dist});
  }
  return w.str();
}

}  // namespace ipep
