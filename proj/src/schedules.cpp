#include "ipep/schedules.hpp"

#include <cmath>

#include "ipep/csv.hpp"
#include "ipep/errors.hpp"

namespace ipep {

bool StepsizeSchedule::strictly_nondegenerate() const {
  for (int k = 1; k <= horizon; ++k) {
    if (A[k] - alpha[k] * alpha[k] <= 0.0) return false;
  }
  return true;
}

InexactnessSchedule InexactnessSchedule::zero(int K) {
  if (K < 0) throw InvalidParameterError("inexactness horizon must be >= 0");
  return {Eigen::VectorXd::Zero(K)};
}

InexactnessSchedule InexactnessSchedule::constant(double level, int K) {
  if (level < 0) throw InvalidParameterError("inexactness level must be >= 0");
  if (K < 0) throw InvalidParameterError("inexactness horizon must be >= 0");
  return {Eigen::VectorXd::Constant(K, level)};
}

StepsizeSchedule schedule_from_lambda(const std::vector<double>& lambda, int K) {
  if (K < 1) throw InvalidParameterError("horizon K must be >= 1");
  if (static_cast<int>(lambda.size()) < K) {
    throw InvalidParameterError("need K lambda entries, got " + std::to_string(lambda.size()));
  }
  StepsizeSchedule s;
  s.horizon = K;
  s.lambda.resize(K + 1);
  s.alpha.resize(K + 1);
  s.A.resize(K + 1);
  s.lambda[0] = 1.0;
  s.alpha[0] = s.A[0] = 1.0;
  for (int k = 1; k <= K; ++k) {
    double lam = lambda[k - 1];
    if (!(lam >= 0.0 && lam <= 1.0)) {
      throw InvalidParameterError("lambda_" + std::to_string(k) + " = " + std::to_string(lam) +
                                  " outside [0,1]");
    }
    s.lambda[k] = lam;
    s.alpha[k] = (lam + std::sqrt(4.0 * lam * s.A[k - 1] + lam * lam)) / 2.0;
    s.A[k] = s.A[k - 1] + s.alpha[k];
  }
  return s;
}

StepsizeSchedule schedule_ogm_a(double a, int K) {
  if (K < 1) throw InvalidParameterError("horizon K must be >= 1");
  if (!(a > 2.0)) {
    throw InvalidParameterError("OGM-a requires a > 2 (degenerate: bound coefficients unbounded)");
  }
  StepsizeSchedule s;
  s.horizon = K;
  s.lambda.resize(K + 1);
  s.alpha.resize(K + 1);
  s.A.resize(K + 1);
  for (int k = 0; k <= K; ++k) {
    s.alpha[k] = (k + a) / a;
    s.A[k] = (k + 2.0 * a) * (k + 1.0) / (2.0 * a);
    s.lambda[k] = s.alpha[k] * s.alpha[k] / s.A[k];
  }
  return s;
}

StepsizeSchedule schedule_constant(int K) {
  if (K < 1) throw InvalidParameterError("horizon K must be >= 1");
  StepsizeSchedule s;
  s.horizon = K;
  s.lambda.resize(K + 1);
  s.alpha.resize(K + 1);
  s.A.resize(K + 1);
  for (int k = 0; k <= K; ++k) {
    s.alpha[k] = 1.0;
    s.A[k] = k + 1.0;
    s.lambda[k] = 1.0 / (k + 1.0);
  }
  return s;
}

ThetaTable::ThetaTable(int K) : K_(K), m_(Eigen::MatrixXd::Zero(K + 1, K + 1)) {
  if (K < 0) throw InvalidParameterError("theta horizon must be >= 0");
}

double& ThetaTable::at(int k, int i) {
  if (k < 1 || k > K_ || i < 0 || i >= k) {
    throw InvalidParameterError("theta index (" + std::to_string(k) + "," + std::to_string(i) +
                                ") outside lower triangle");
  }
  return m_(k, i);
}

ThetaTable theta_ogm(const StepsizeSchedule& s) {
  const int K = s.horizon;
  ThetaTable th(K);
  for (int k = 1; k <= K; ++k) {
    th.at(k, k - 1) = (2.0 * s.alpha[k - 1] * s.alpha[k] + s.A[k - 1]) / s.A[k];
    for (int i = 0; i <= k - 2; ++i) {
      th.at(k, i) = 2.0 * s.alpha[k] * s.alpha[i] / s.A[k] + s.A[k - 1] / s.A[k] * th(k - 1, i);
    }
  }
  return th;
}

ThetaTable theta_fgm(const StepsizeSchedule& s) {
  const int K = s.horizon;
  ThetaTable th(K);
  for (int k = 1; k <= K; ++k) {
    for (int i = 0; i < k; ++i) {
      th.at(k, i) = (s.alpha[i] * (s.A[k] - s.A[i]) + s.A[i]) / s.A[k];
    }
  }
  return th;
}

std::string schedule_to_csv(const StepsizeSchedule& s) {
  CsvWriter w({"k", "lambda_k", "alpha_k", "A_k"});
  for (int k = 0; k <= s.horizon; ++k) {
    w.row({static_cast<double>(k), s.lambda[k], s.alpha[k], s.A[k]});
  }
  return w.str();
}

}  // namespace ipep
