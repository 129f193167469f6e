#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>

#include "ipep/problems.hpp"
#include "ipep/schedules.hpp"

namespace ipep {

// How the injected error e_k is oriented. All policies saturate the budget:
// |e_k| = b_k exactly (the bound being checked holds for adversarial e, so
// the aligned/opposed policies stress it, the random one probes typical
// behavior).
enum class ErrorPolicy {
  RandomUnitSphere,
  FixedDirection,
  GradientAligned,
  GradientOpposed,
};

ErrorPolicy error_policy_from_string(const std::string& name);
std::string to_string(ErrorPolicy policy);

struct OracleQuery {
  Eigen::VectorXd g_true;
  Eigen::VectorXd g_tilde;
  Eigen::VectorXd e;
};

// Gradient oracle returning g_tilde = grad f(x) + e with |e| <= b_k.
// Randomness is split per iteration index, so the error at iteration k is a
// function of (seed, k) only and replays byte-identically.
//
// Single-threaded per instance; distinct instances may run in parallel.
class InexactGradientOracle {
public:
  InexactGradientOracle(SmoothConvexProblem base, ErrorPolicy policy,
                        InexactnessSchedule schedule, std::uint64_t rng_seed);

  // k may equal the horizon K; b_K = 0 by convention.
  OracleQuery query(const Eigen::VectorXd& x, int k) const;

  const SmoothConvexProblem& problem() const { return base_; }
  const InexactnessSchedule& schedule() const { return schedule_; }
  ErrorPolicy policy() const { return policy_; }

private:
  SmoothConvexProblem base_;
  ErrorPolicy policy_;
  InexactnessSchedule schedule_;
  std::uint64_t seed_;
  Eigen::VectorXd fixed_direction_;
};

using ValueNoise = std::function<double(const Eigen::VectorXd&)>;

// Deterministic bounded perturbation delta(x) = b_f sin(37.1 sum_i x_i).
ValueNoise sinusoidal_value_noise(double b_f);
// Seeded uniform perturbation in [-b_f, b_f], keyed by the bits of x.
ValueNoise uniform_value_noise(double b_f, std::uint64_t seed);

// Forward finite differences on noisy function values:
//   [g]_i = (f~(x + l v_i) - f~(x)) / l,  d+1 evaluations.
// For |f~ - f| <= b_f the error obeys |g - grad f| <= sqrt(d) L l / 2
// + 2 sqrt(d) b_f / l, with equality at b_f = 0 on isotropic quadratics.
Eigen::VectorXd forward_fd_gradient(const SmoothConvexProblem& problem, const Eigen::VectorXd& x,
                                    double l, const ValueNoise& noise = nullptr);

// Gaussian-smoothing estimator (1/n) sum_i (f~(x + l v_i) - f~(x))/l * v_i
// with v_i standard normal. The expectation's bias is bounded by
// sqrt(d) L l + sqrt(d) b_f / l.
Eigen::VectorXd gaussian_smoothing_gradient(const SmoothConvexProblem& problem,
                                            const Eigen::VectorXd& x, double l, int n,
                                            const ValueNoise& noise, std::uint64_t seed);

}  // namespace ipep
