#pragma once

#include <Eigen/Dense>
#include <string>

namespace ipep {

// Effort-to-accuracy model b = h(eta): how much oracle effort eta buys a
// gradient error level b. Both shapes are decreasing and positive.
struct EffortModel {
  enum class Kind { PowerLaw, Exponential };
  Kind kind = Kind::PowerLaw;
  // power law: h(eta) = c1 eta^{-c2}
  double c1 = 1.0, c2 = 1.0;
  // exponential: h(eta) = q1 q2^{-eta}
  double q1 = 1.0, q2 = 2.718281828459045;

  static EffortModel power_law(double c1, double c2);
  static EffortModel exponential(double q1, double q2);

  double h(double eta) const;
  // Throws for b outside the range where eta >= 0 (exponential: b > q1).
  double h_inverse(double b) const;
  double h_inverse_grad(double b) const;
};

// Inexactness levels solving: minimize total effort sum_k h^{-1}(b_k)
// subject to sum_k u_k b_k^2 <= budget, budget = L R^2 / (4 A_K).
struct ScheduleSolution {
  Eigen::VectorXd b_opt;
  double lambda_dual = 0.0;  // multiplier of the budget constraint
  Eigen::VectorXd eta;       // h^{-1}(b_k)
  double eta_total = 0.0;
  double budget = 0.0;
  // Exponential model only: true when the unconstrained optimum would need
  // b_k > q1 (negative effort); those entries sit at eta = 0 and the rest
  // were re-solved by bisection.
  bool clamped = false;
};

// Closed form for exponential decay: b_k* = sqrt(L R^2 / (4 K A_K u_k)),
// lambda* = 2 K A_K / (L R^2 log q2).
ScheduleSolution optimal_b_exponential(const Eigen::VectorXd& u, double L, double R, double A_K,
                                       const EffortModel& model);

// Closed form for power-law decay:
//   b_k* = (2 lambda* u_k c2 / c1^{1/c2})^{-c2/(1+2c2)}
//   lambda* = (c1^{1/c2}/(2c2)) budget^{-(1+2c2)/(2c2)}
//             (sum_k u_k^{1/(1+2c2)})^{(1+2c2)/(2c2)}.
ScheduleSolution optimal_b_powerlaw(const Eigen::VectorXd& u, double L, double R, double A_K,
                                    const EffortModel& model);

// Constant baseline: b = sqrt(budget / sum_k u_k) for every k.
ScheduleSolution constant_b_baseline(const Eigen::VectorXd& u, double L, double R, double A_K,
                                     const EffortModel& model);

// Independent solver: bisection on the scalar dual multiplier using only the
// stationarity and binding conditions. Checks the closed forms and handles
// the clamped exponential regime.
ScheduleSolution solve_by_bisection(const Eigen::VectorXd& u, double L, double R, double A_K,
                                    const EffortModel& model);

// Total effort sum_k h^{-1}(b_k) of a solution; throws if some b_k is
// outside the model's range.
double eta_complexity(const ScheduleSolution& solution, const EffortModel& model);

// CSV columns k,u_k,b_const,b_opt,eta_const,eta_opt plus a footer row
// eta_total_const=..,eta_total_opt=..,improvement_ratio=..
std::string schedule_solution_to_csv(const Eigen::VectorXd& u, const ScheduleSolution& constant,
                                     const ScheduleSolution& optimal);

}  // namespace ipep
