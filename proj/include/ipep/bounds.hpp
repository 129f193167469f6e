#pragma once

#include <Eigen/Dense>
#include <string>

#include "ipep/problems.hpp"
#include "ipep/schedules.hpp"

namespace ipep {

// Worst-case bound split into its two components:
//   measure(x_K) <= tau R^2 + sum_k u_k b_k^2
// where tau = L/(4 A_K) for the optimized-gradient family and L/(2 A_K) for
// the fast-gradient family.
struct BoundReport {
  std::string method_tag;  // "igogm" | "igfgm"
  double tau = 0.0;
  Eigen::VectorXd u;  // u_0..u_{K-1}
  double rate_term = 0.0;
  double error_term = 0.0;
  double total = 0.0;
};

// Error-amplification coefficients for iGOGM:
//   u_k = A_k (1+2a_{k+1}) (A_k + 2 a_k a_{k+1}) / (4 L A_K (A_{k+1}-a_{k+1}^2))
//       + sum_{i=k+1}^{K-1} A_i (1+2a_{i+1}) a_k a_{i+1} / (2 L A_K (A_{i+1}-a_{i+1}^2)).
// Throws DegenerateStepsizeError when any A_k = alpha_k^2 (u = infinity is
// then the unique dual solution).
Eigen::VectorXd u_igogm(const StepsizeSchedule& schedule, double L);

// Coefficients for iGFGM:
//   u_k = A_k^2 (1+a_{k+1}) / (2 L A_K (2A_{k+1}-a_{k+1}^2))
//       + sum_{i=k+1}^{K} a_k A_{i-1} a_i (1+a_i) / (2 L A_K (2A_i-a_i^2)).
// Finite for every valid schedule, lambda = 1 included.
Eigen::VectorXd u_igfgm(const StepsizeSchedule& schedule, double L);

// Slightly enlarged closed-form coefficients for the a = 4 schedule.
Eigen::VectorXd u_ogm4_simplified(int K, double L);

// sum_k u_k^{simplified} b^2 = b^2 K (12K^3+303K^2+2687K+8758) / (480 L (K+8)).
double u_ogm4_simplified_sum(int K, double L, double b);

// Constant stepsize: u_k = 3(2K-k+1) / (4L(K+1)); with b constant the sum is
// 9K b^2 / (8L).
Eigen::VectorXd u_constant_step(int K, double L);

// P_{k,i} coefficients from the optimized-gradient analysis (no 1/A_K
// factor). Row k holds P_{k,i} for i <= k. The identity
//   u_k = (P_{k,k} + 1/2 sum_{i<k} P_{k,i} + 1/2 sum_{i>k} P_{i,k}) / A_K
// serves as an independent check of u_igogm.
Eigen::MatrixXd p_coefficients(const StepsizeSchedule& schedule, double L);

// Assemble the full report for one method ("igogm" or "igfgm").
BoundReport bound_evaluate(const std::string& method_tag, const StepsizeSchedule& schedule,
                           const InexactnessSchedule& inexactness, double L, double R);

// f(x) - f* - |grad f(x)|^2 / (2L). Requires a known optimal value.
double measure(const SmoothConvexProblem& problem, const Eigen::VectorXd& x);

// CSV columns k,alpha_k,A_k,u_k,b_k,contribution plus one footer row
// tau=..,rate_term=..,error_term=..,total=..
std::string bound_to_csv(const BoundReport& report, const StepsizeSchedule& schedule,
                         const InexactnessSchedule& inexactness);

}  // namespace ipep
