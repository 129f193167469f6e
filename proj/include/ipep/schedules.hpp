#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace ipep {

// Stepsize sequences shared by all methods, bounds and certificates.
//
// Construction enforces alpha_0 = A_0 = 1, A_{k+1} = A_k + alpha_{k+1} and
// alpha_{k+1}^2 = lambda_{k+1} A_{k+1}. lambda is stored with one slot per
// index 0..K for convenient lookup; index 0 has no meaning (alpha_0 is fixed)
// and is stored as 1 = alpha_0^2 / A_0.
struct StepsizeSchedule {
  Eigen::VectorXd lambda;  // size K+1, entry 0 ignored
  Eigen::VectorXd alpha;   // size K+1
  Eigen::VectorXd A;       // size K+1
  int horizon = 0;         // K

  // True when A_k - alpha_k^2 > 0 for every 1 <= k <= K, i.e. lambda_k < 1.
  // Without this, finite error-amplification coefficients do not exist.
  bool strictly_nondegenerate() const;
};

// Per-iteration gradient error budgets b_0..b_{K-1}. By convention b_K = 0:
// the final gradient only enters through the dummy post-step and does not
// change the complexity.
struct InexactnessSchedule {
  Eigen::VectorXd b;

  int horizon() const { return static_cast<int>(b.size()); }
  double at(int k) const { return k < b.size() ? b[k] : 0.0; }

  static InexactnessSchedule zero(int K);
  static InexactnessSchedule constant(double level, int K);
};

// Run the recursion alpha_{k+1} = (lambda_{k+1} + sqrt(4 lambda_{k+1} A_k +
// lambda_{k+1}^2))/2 from alpha_0 = A_0 = 1. lambda holds lambda_1..lambda_K,
// each in [0,1].
StepsizeSchedule schedule_from_lambda(const std::vector<double>& lambda, int K);

// alpha_k = (k+a)/a, A_k = (k+2a)(k+1)/(2a). Requires a > 2 so that
// A_k - alpha_k^2 > 0 for all k >= 1.
StepsizeSchedule schedule_ogm_a(double a, int K);

// alpha_k = 1, A_k = k+1.
StepsizeSchedule schedule_constant(int K);

// Strictly lower-triangular coefficient table theta_{k,i}, 1 <= k <= K,
// 0 <= i < k, defining the general first-order form
// x_k = x_0 - (1/L) sum_i theta_{k,i} (g_i + e_i).
class ThetaTable {
public:
  explicit ThetaTable(int K);

  double operator()(int k, int i) const { return m_(k, i); }
  double& at(int k, int i);
  int horizon() const { return K_; }

private:
  int K_;
  Eigen::MatrixXd m_;
};

// theta for the optimized-gradient family:
//   theta_{k,k-1} = (2 alpha_{k-1} alpha_k + A_{k-1}) / A_k
//   theta_{k,i}   = 2 alpha_k alpha_i / A_k + (A_{k-1}/A_k) theta_{k-1,i}.
ThetaTable theta_ogm(const StepsizeSchedule& s);

// theta for the fast-gradient family:
//   theta_{k,i} = (alpha_i (A_k - A_i) + A_i) / A_k.
ThetaTable theta_fgm(const StepsizeSchedule& s);

// CSV with columns k,lambda_k,alpha_k,A_k (header row included).
std::string schedule_to_csv(const StepsizeSchedule& s);

}  // namespace ipep
