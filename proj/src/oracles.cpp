#include "ipep/oracles.hpp"

#include <cmath>
#include <cstring>

#include "ipep/errors.hpp"
#include "ipep/rng.hpp"

namespace ipep {

ErrorPolicy error_policy_from_string(const std::string& name) {
  if (name == "random-unit-sphere") return ErrorPolicy::RandomUnitSphere;
  if (name == "fixed-direction") return ErrorPolicy::FixedDirection;
  if (name == "gradient-aligned") return ErrorPolicy::GradientAligned;
  if (name == "gradient-opposed") return ErrorPolicy::GradientOpposed;
  throw InvalidParameterError("unknown error policy: " + name);
}

std::string to_string(ErrorPolicy policy) {
  switch (policy) {
    case ErrorPolicy::RandomUnitSphere: return "random-unit-sphere";
    case ErrorPolicy::FixedDirection: return "fixed-direction";
    case ErrorPolicy::GradientAligned: return "gradient-aligned";
    case ErrorPolicy::GradientOpposed: return "gradient-opposed";
  }
  return "?";
}

InexactGradientOracle::InexactGradientOracle(SmoothConvexProblem base, ErrorPolicy policy,
                                             InexactnessSchedule schedule, std::uint64_t rng_seed)
    : base_(std::move(base)),
      policy_(policy),
      schedule_(std::move(schedule)),
      seed_(rng_seed),
      fixed_direction_(RandomStream(rng_seed).unit_vector(base_.dimension)) {}

OracleQuery InexactGradientOracle::query(const Eigen::VectorXd& x, int k) const {
  if (x.size() != base_.dimension) {
    throw InvalidParameterError("query point has dimension " + std::to_string(x.size()) +
                                ", problem has " + std::to_string(base_.dimension));
  }
  if (k < 0) throw InvalidParameterError("iteration index must be >= 0");

  OracleQuery q;
  q.g_true = base_.grad(x);
  const double b = schedule_.at(k);
  if (b == 0.0) {
    q.e = Eigen::VectorXd::Zero(base_.dimension);
    q.g_tilde = q.g_true;
    return q;
  }
  switch (policy_) {
    case ErrorPolicy::RandomUnitSphere:
      q.e = b * RandomStream(seed_).substream(static_cast<std::uint64_t>(k))
                    .unit_vector(base_.dimension);
      break;
    case ErrorPolicy::FixedDirection:
      q.e = b * fixed_direction_;
      break;
    case ErrorPolicy::GradientAligned:
    case ErrorPolicy::GradientOpposed: {
      double n = q.g_true.norm();
      // At a stationary point the direction is undefined; fall back to the
      // fixed direction so the budget is still met.
      Eigen::VectorXd dir = n > 1e-300 ? (q.g_true / n).eval() : fixed_direction_;
      q.e = (policy_ == ErrorPolicy::GradientAligned ? b : -b) * dir;
      break;
    }
  }
  q.g_tilde = q.g_true + q.e;
  // Keep the stored triple exactly consistent: e is what was actually added.
  q.e = q.g_tilde - q.g_true;
  return q;
}

ValueNoise sinusoidal_value_noise(double b_f) {
  if (b_f < 0) throw InvalidParameterError("b_f must be >= 0");
  if (b_f == 0) return nullptr;
  return [b_f](const Eigen::VectorXd& x) { return b_f * std::sin(x.sum() * 37.1); };
}

ValueNoise uniform_value_noise(double b_f, std::uint64_t seed) {
  if (b_f < 0) throw InvalidParameterError("b_f must be >= 0");
  if (b_f == 0) return nullptr;
  return [b_f, seed](const Eigen::VectorXd& x) {
    // Hash the exact bit pattern of x so repeated evaluation is stable.
    std::uint64_t h = seed;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      std::uint64_t bits;
      double v = x[i];
      std::memcpy(&bits, &v, sizeof(bits));
      h = splitmix64(h ^ bits);
    }
    double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    return b_f * (2.0 * u - 1.0);
  };
}

Eigen::VectorXd forward_fd_gradient(const SmoothConvexProblem& problem, const Eigen::VectorXd& x,
                                    double l, const ValueNoise& noise) {
  if (!(l > 0)) throw InvalidParameterError("finite-difference interval l must be > 0");
  if (x.size() != problem.dimension) throw InvalidParameterError("dimension mismatch");
  auto noisy = [&](const Eigen::VectorXd& p) {
    return problem.eval(p) + (noise ? noise(p) : 0.0);
  };
  const double f0 = noisy(x);
  Eigen::VectorXd g(problem.dimension);
  Eigen::VectorXd xp = x;
  for (int i = 0; i < problem.dimension; ++i) {
    xp[i] = x[i] + l;
    g[i] = (noisy(xp) - f0) / l;
    xp[i] = x[i];
  }
  return g;
}

Eigen::VectorXd gaussian_smoothing_gradient(const SmoothConvexProblem& problem,
                                            const Eigen::VectorXd& x, double l, int n,
                                            const ValueNoise& noise, std::uint64_t seed) {
  if (!(l > 0)) throw InvalidParameterError("smoothing radius l must be > 0");
  if (n < 1) throw InvalidParameterError("sample count n must be >= 1");
  if (x.size() != problem.dimension) throw InvalidParameterError("dimension mismatch");
  auto noisy = [&](const Eigen::VectorXd& p) {
    return problem.eval(p) + (noise ? noise(p) : 0.0);
  };
  const double f0 = noisy(x);
  RandomStream rs(seed);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(problem.dimension);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd v = rs.normal_vector(problem.dimension);
    g += (noisy(x + l * v) - f0) / l * v;
  }
  return g / n;
}

}  // namespace ipep
