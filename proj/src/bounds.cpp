#include "ipep/bounds.hpp"

#include <cmath>

#include "ipep/csv.hpp"
#include "ipep/errors.hpp"
#include "ipep/numerics.hpp"

namespace ipep {

namespace {

void require_nondegenerate(const StepsizeSchedule& s) {
  if (!s.strictly_nondegenerate()) {
    throw DegenerateStepsizeError(
        "A_k - alpha_k^2 = 0 somewhere: u = infinity is the unique dual solution, "
        "no finite bound exists");
  }
}

void require_positive_L(double L) {
  if (!(L > 0)) throw InvalidParameterError("Lipschitz constant must be > 0");
}

}  // namespace

Eigen::VectorXd u_igogm(const StepsizeSchedule& s, double L) {
  require_positive_L(L);
  require_nondegenerate(s);
  const int K = s.horizon;
  const double AK = s.A[K];
  const auto& a = s.alpha;
  const auto& A = s.A;

  // Tail term T_m = A_{m-1}(1+2a_m) a_m / (2 L A_K (A_m - a_m^2)); the sum in
  // u_k is alpha_k * sum_{m=k+2}^{K} T_m, accumulated as a suffix with
  // compensation since the terms span orders of magnitude for large K.
  Eigen::VectorXd suffix(K + 2);
  suffix[K + 1] = 0.0;
  KahanSum acc;
  for (int m = K; m >= 1; --m) {
    acc.add(A[m - 1] * (1.0 + 2.0 * a[m]) * a[m] / (2.0 * L * AK * (A[m] - a[m] * a[m])));
    suffix[m] = acc.value();
  }

  Eigen::VectorXd u(K);
  for (int k = 0; k < K; ++k) {
    double first = A[k] * (1.0 + 2.0 * a[k + 1]) * (A[k] + 2.0 * a[k] * a[k + 1]) /
                   (4.0 * L * AK * (A[k + 1] - a[k + 1] * a[k + 1]));
    u[k] = first + a[k] * suffix[k + 2];
  }
  return u;
}

Eigen::VectorXd u_igfgm(const StepsizeSchedule& s, double L) {
  require_positive_L(L);
  const int K = s.horizon;
  const double AK = s.A[K];
  const auto& a = s.alpha;
  const auto& A = s.A;

  Eigen::VectorXd suffix(K + 2);
  suffix[K + 1] = 0.0;
  KahanSum acc;
  for (int m = K; m >= 1; --m) {
    acc.add(A[m - 1] * a[m] * (1.0 + a[m]) / (2.0 * L * AK * (2.0 * A[m] - a[m] * a[m])));
    suffix[m] = acc.value();
  }

  Eigen::VectorXd u(K);
  for (int k = 0; k < K; ++k) {
    double first = A[k] * A[k] * (1.0 + a[k + 1]) /
                   (2.0 * L * AK * (2.0 * A[k + 1] - a[k + 1] * a[k + 1]));
    u[k] = first + a[k] * suffix[k + 1];
  }
  return u;
}

Eigen::VectorXd u_ogm4_simplified(int K, double L) {
  if (K < 1) throw InvalidParameterError("horizon K must be >= 1");
  require_positive_L(L);
  Eigen::VectorXd u(K);
  for (int k = 0; k < K; ++k) {
    double kk = k;
    double first = (kk + 7) * (kk + 7) * (kk + 2) / (2.0 * L * (K + 8.0) * (K + 1.0));
    double second = (kk + 4) * (K - kk - 1) *
                    (2.0 * K * K + 2.0 * K * kk + 35.0 * K + 2.0 * kk * kk + 37.0 * kk + 210.0) /
                    (24.0 * L * (K + 8.0) * (K + 1.0));
    u[k] = first + second;
  }
  return u;
}

double u_ogm4_simplified_sum(int K, double L, double b) {
  if (K < 1) throw InvalidParameterError("horizon K must be >= 1");
  require_positive_L(L);
  double Kd = K;
  return b * b * Kd * (12.0 * Kd * Kd * Kd + 303.0 * Kd * Kd + 2687.0 * Kd + 8758.0) /
         (480.0 * L * (Kd + 8.0));
}

Eigen::VectorXd u_constant_step(int K, double L) {
  if (K < 1) throw InvalidParameterError("horizon K must be >= 1");
  require_positive_L(L);
  Eigen::VectorXd u(K);
  for (int k = 0; k < K; ++k) u[k] = 3.0 * (2.0 * K - k + 1.0) / (4.0 * L * (K + 1.0));
  return u;
}

Eigen::MatrixXd p_coefficients(const StepsizeSchedule& s, double L) {
  require_positive_L(L);
  require_nondegenerate(s);
  const int K = s.horizon;
  const auto& a = s.alpha;
  const auto& A = s.A;

  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(K, K);
  for (int k = 0; k < K; ++k) {
    double dk = A[k + 1] - a[k + 1] * a[k + 1];
    KahanSum diag_tail;
    for (int j = k + 1; j < K; ++j) {
      double dj = A[j + 1] - a[j + 1] * a[j + 1];
      diag_tail.add(a[k] * a[k] * a[j + 1] * a[j + 1] / (L * dj));
    }
    double num = 2.0 * a[k + 1] * a[k] + A[k];
    P(k, k) = num * num / (4.0 * L * dk) + diag_tail.value();
    for (int i = 0; i < k; ++i) {
      KahanSum off_tail;
      for (int j = k + 1; j < K; ++j) {
        double dj = A[j + 1] - a[j + 1] * a[j + 1];
        off_tail.add(2.0 * a[j + 1] * a[j + 1] * a[k] * a[i] / (L * dj));
      }
      P(k, i) = a[k + 1] * a[i] * (A[k] + 2.0 * a[k + 1] * a[k]) / (L * dk) + off_tail.value();
    }
  }
  return P;
}

BoundReport bound_evaluate(const std::string& method_tag, const StepsizeSchedule& schedule,
                           const InexactnessSchedule& inexactness, double L, double R) {
  if (inexactness.horizon() != schedule.horizon) {
    throw InvalidParameterError("inexactness horizon " + std::to_string(inexactness.horizon()) +
                                " != schedule horizon " + std::to_string(schedule.horizon));
  }
  BoundReport r;
  r.method_tag = method_tag;
  if (method_tag == "igogm") {
    r.tau = L / (4.0 * schedule.A[schedule.horizon]);
    r.u = u_igogm(schedule, L);
  } else if (method_tag == "igfgm") {
    r.tau = L / (2.0 * schedule.A[schedule.horizon]);
    r.u = u_igfgm(schedule, L);
  } else {
    throw InvalidParameterError("bound_evaluate: method must be igogm or igfgm, got " +
                                method_tag);
  }
  r.rate_term = r.tau * R * R;
  KahanSum err;
  for (int k = 0; k < schedule.horizon; ++k) {
    err.add(r.u[k] * inexactness.b[k] * inexactness.b[k]);
  }
  r.error_term = err.value();
  r.total = r.rate_term + r.error_term;
  return r;
}

double measure(const SmoothConvexProblem& problem, const Eigen::VectorXd& x) {
  if (!problem.optimal_value) {
    throw InvalidParameterError("measure requires a problem with known optimal value");
  }
  return problem.eval(x) - *problem.optimal_value -
         problem.grad(x).squaredNorm() / (2.0 * problem.lipschitz);
}

std::string bound_to_csv(const BoundReport& report, const StepsizeSchedule& schedule,
                         const InexactnessSchedule& inexactness) {
  CsvWriter w({"k", "alpha_k", "A_k", "u_k", "b_k", "contribution"});
  for (int k = 0; k < schedule.horizon; ++k) {
    double b = inexactness.at(k);
    w.row({static_cast<double>(k), schedule.alpha[k], schedule.A[k], report.u[k], b,
           report.u[k] * b * b});
  }
  w.raw_row("tau=" + format_double(report.tau) + ",rate_term=" + format_double(report.rate_term) +
            ",error_term=" + format_double(report.error_term) +
            ",total=" + format_double(report.total));
  return w.str();
}

}  // namespace ipep
