#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

namespace ipep {

// A smooth convex test problem: objective, gradient, Lipschitz constant and,
// when the construction makes them available, the minimizer and optimal
// value. Instances are immutable after construction and safe to share.
struct SmoothConvexProblem {
  std::string name;
  int dimension = 0;
  double lipschitz = 0.0;
  std::function<double(const Eigen::VectorXd&)> eval;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad;
  std::optional<Eigen::VectorXd> minimizer;
  std::optional<double> optimal_value;
};

// f(x) = 1/2 x'Hx - b'x with a random positive definite H.
// L is the largest eigenvalue of H; x* solves Hx = b.
SmoothConvexProblem make_quadratic_random(int dimension, std::uint64_t seed);

// f(x) = 1/2 |Ax - y|^2 with y = A xhat, so x* = xhat and f* = 0.
// offset_scale scales xhat (0 gives the zero-target, zero-offset case).
SmoothConvexProblem make_least_squares(int dimension, std::uint64_t seed,
                                       double offset_scale = 1.0);

// f(x) = sigma log sum_i exp((a_i'x + c_i)/sigma). Rows come in +/- pairs
// with shared offsets, which forces grad f(0) = 0, so x* = 0 and f* is the
// value at the origin. L = lambda_max(A'A)/sigma.
SmoothConvexProblem make_log_sum_exp(int dimension, std::uint64_t seed, double sigma = 1.0);

// Ill-conditioned tridiagonal quadratic 1/2 x'Tx - e_1'x,
// T = tridiag(-1, 2, -1). The classic hard instance for first-order methods.
SmoothConvexProblem make_quadratic_worstcase_ill(int dimension);

// Factory over {quadratic-random, least-squares, log-sum-exp,
// quadratic-worstcase-ill}.
SmoothConvexProblem builtin_problem(const std::string& name, int dimension, std::uint64_t seed);

// Build a problem from a flat key-value map. Recognized keys:
//   name      one of the builtin names (required)
//   dimension positive integer (required)
//   seed      64-bit integer, default 0
//   sigma     smoothing parameter for log-sum-exp, default 1.0
//   offset_scale  least-squares target offset scale, default 1.0
SmoothConvexProblem problem_from_config(const std::map<std::string, std::string>& kv);

}  // namespace ipep
