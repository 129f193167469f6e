#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ipep/oracles.hpp"
#include "ipep/problems.hpp"
#include "ipep/schedules.hpp"

namespace ipep {

// Feasible region for the projected methods: the whole space or a Euclidean
// ball.
struct FeasibleSet {
  enum class Kind { WholeSpace, EuclideanBall };
  Kind kind = Kind::WholeSpace;
  Eigen::VectorXd center;
  double radius = 0.0;

  static FeasibleSet whole_space();
  static FeasibleSet ball(Eigen::VectorXd center, double radius);

  Eigen::VectorXd project(const Eigen::VectorXd& x) const;
};

// Complete record of one run. Immutable once returned.
//
// x, g_true, g_tilde, e, f_value are indexed 0..K (the final gradient query
// uses b_K = 0). y runs 0..K+1 where the methods define the dummy post-step
// y_{K+1} = x_K - (1/L) g~_K, and 0..K for iSTM. z may be empty (iGFO and
// plain gradient descent keep no dual sequence). f_gap and measure are NaN
// when the problem's optimal value is unknown.
struct Trajectory {
  std::string method;
  int horizon = 0;
  double lipschitz = 0.0;
  std::vector<Eigen::VectorXd> x;
  std::vector<Eigen::VectorXd> y;
  std::vector<Eigen::VectorXd> z;
  std::vector<Eigen::VectorXd> g_true;
  std::vector<Eigen::VectorXd> g_tilde;
  std::vector<Eigen::VectorXd> e;
  std::vector<double> f_value;
  std::vector<double> f_gap;
  std::vector<double> measure;
};

// Inexact generalized optimized gradient method:
//   y_{k+1} = x_k - (1/L) g~_k
//   z_{k+1} = z_k - (2/L) alpha_k g~_k
//   x_{k+1} = (1 - alpha_{k+1}/A_{k+1}) y_{k+1} + (alpha_{k+1}/A_{k+1}) z_{k+1}
Trajectory run_igogm(const SmoothConvexProblem& problem, const InexactGradientOracle& oracle,
                     const StepsizeSchedule& schedule, int K, const Eigen::VectorXd& x0);

// Fast-gradient variant: identical except z_{k+1} = z_k - (1/L) alpha_k g~_k.
Trajectory run_igfgm(const SmoothConvexProblem& problem, const InexactGradientOracle& oracle,
                     const StepsizeSchedule& schedule, int K, const Eigen::VectorXd& x0);

// Inexact fast gradient method with projection, alpha given directly
// (alpha_0 in (0,1], A_0 = alpha_0, alpha_{k+1}^2 <= A_{k+1}).
Trajectory run_ifgm(const SmoothConvexProblem& problem, const InexactGradientOracle& oracle,
                    const std::vector<double>& alpha, int K, const FeasibleSet& Q,
                    const Eigen::VectorXd& x0);

// Inexact similar triangles method; one projection per iteration, loop
// k = 0..K with alpha_{-1} = A_{-1} = 0. Unconstrained with alpha_k^2 = A_k
// its y_k equals iFGM's y_{k+1} on the same error stream.
Trajectory run_istm(const SmoothConvexProblem& problem, const InexactGradientOracle& oracle,
                    const std::vector<double>& alpha, int K, const FeasibleSet& Q,
                    const Eigen::VectorXd& x0);

// General first-order form x_k = x_0 - (1/L) sum_i theta_{k,i} (g_i + e_i),
// gradients taken at its own iterates, errors replayed from a recorded
// stream (entry k is added to the gradient at x_k; missing entries mean 0).
Trajectory run_igfo(const SmoothConvexProblem& problem, const ThetaTable& theta, int K,
                    const std::vector<Eigen::VectorXd>& error_stream, const Eigen::VectorXd& x0);

// Exact OGM; with last_adjustment the final alpha_K uses the
// (1 + sqrt(1 + 8 alpha^2))/2 branch.
Trajectory run_ogm(const SmoothConvexProblem& problem, int K, bool last_adjustment,
                   const Eigen::VectorXd& x0);

// Plain inexact gradient descent x_{k+1} = x_k - (1/L) g~_k (baseline).
Trajectory run_gd(const SmoothConvexProblem& problem, const InexactGradientOracle& oracle, int K,
                  const Eigen::VectorXd& x0);

// CSV with columns k,f_gap,measure,grad_norm,err_norm,x_norm_dist_to_opt.
std::string trajectory_to_csv(const Trajectory& t, const SmoothConvexProblem& problem);

}  // namespace ipep
