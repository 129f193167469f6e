#include <cmath>
#include <cstring>
#include <memory>

#include "doctest.h"
#include "ipep/errors.hpp"
#include "ipep/oracles.hpp"
#include "ipep/problems.hpp"
#include "ipep/rng.hpp"

using namespace ipep;

namespace {

// f(x) = (L/2)|x|^2, the equality case of several bounds.
SmoothConvexProblem isotropic_quadratic(int d, double L) {
  SmoothConvexProblem p;
  p.name = "isotropic";
  p.dimension = d;
  p.lipschitz = L;
  p.eval = [L](const Eigen::VectorXd& x) { return 0.5 * L * x.squaredNorm(); };
  p.grad = [L](const Eigen::VectorXd& x) { return (L * x).eval(); };
  p.minimizer = Eigen::VectorXd::Zero(d);
  p.optimal_value = 0.0;
  return p;
}

SmoothConvexProblem linear_problem(Eigen::VectorXd slope) {
  SmoothConvexProblem p;
  p.name = "linear";
  p.dimension = static_cast<int>(slope.size());
  p.lipschitz = 1.0;  // any L works for an affine function
  auto a = std::make_shared<Eigen::VectorXd>(std::move(slope));
  p.eval = [a](const Eigen::VectorXd& x) { return a->dot(x); };
  p.grad = [a](const Eigen::VectorXd&) { return *a; };
  return p;
}

Eigen::VectorXd central_fd(const SmoothConvexProblem& p, const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd g(p.dimension);
  Eigen::VectorXd xp = x;
  for (int i = 0; i < p.dimension; ++i) {
    xp[i] = x[i] + h;
    double fp = p.eval(xp);
    xp[i] = x[i] - h;
    double fm = p.eval(xp);
    xp[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace

TEST_CASE("builtin problems: gradients match central differences to 1e-6") {
  RandomStream rs(123);
  for (const char* name :
       {"quadratic-random", "least-squares", "log-sum-exp", "quadratic-worstcase-ill"}) {
    auto p = builtin_problem(name, 8, 42);
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd x = rs.normal_vector(8);
      Eigen::VectorXd g = p.grad(x);
      Eigen::VectorXd fd = central_fd(p, x, 1e-5);
      double denom = std::fmax(1.0, g.norm());
      CHECK((g - fd).norm() / denom <= 1e-6);
    }
  }
}

TEST_CASE("builtin problems: minimizer, convexity and smoothness spot checks") {
  RandomStream rs(9);
  for (const char* name :
       {"quadratic-random", "least-squares", "log-sum-exp", "quadratic-worstcase-ill"}) {
    auto p = builtin_problem(name, 10, 7);
    REQUIRE(p.minimizer.has_value());
    REQUIRE(p.optimal_value.has_value());
    CHECK(p.grad(*p.minimizer).norm() <= 1e-10);
    for (int trial = 0; trial < 30; ++trial) {
      Eigen::VectorXd x = rs.normal_vector(10);
      Eigen::VectorXd y = rs.normal_vector(10);
      // convexity: f(y) >= f(x) + <g(x), y-x>
      CHECK(p.eval(y) - p.eval(x) - p.grad(x).dot(y - x) >= -1e-9);
      // L-smoothness of the gradient
      CHECK((p.grad(x) - p.grad(y)).norm() <= p.lipschitz * (x - y).norm() * (1.0 + 1e-9));
      // optimality of f*
      CHECK(p.eval(x) >= *p.optimal_value - 1e-9);
    }
  }
}

TEST_CASE("quadratic-random: PSD Hessian data, x* solves the linear system") {
  auto p = make_quadratic_random(10, 7);
  CHECK(p.lipschitz > 0);
  CHECK(p.grad(*p.minimizer).norm() <= 1e-10);
}

TEST_CASE("least-squares with zero offset: f* = 0 at x* = 0") {
  auto p = make_least_squares(6, 3, 0.0);
  CHECK(*p.optimal_value == 0.0);
  CHECK(p.minimizer->norm() == 0.0);
  CHECK(p.eval(Eigen::VectorXd::Zero(6)) == doctest::Approx(0.0));
}

TEST_CASE("builtin_problem rejects unknown names") {
  CHECK_THROWS_AS(builtin_problem("does-not-exist", 4, 0), InvalidParameterError);
}

TEST_CASE("problem_from_config") {
  auto p = problem_from_config({{"name", "log-sum-exp"}, {"dimension", "5"}, {"seed", "11"},
                                {"sigma", "2.0"}});
  CHECK(p.dimension == 5);
  CHECK(p.name == "log-sum-exp");
  CHECK_THROWS_AS(problem_from_config({{"dimension", "5"}}), InvalidParameterError);
  CHECK_THROWS_AS(problem_from_config({{"name", "log-sum-exp"}, {"dimension", "x"}}),
                  InvalidParameterError);
}

TEST_CASE("oracle query: exact when b = 0, saturating otherwise") {
  auto p = make_quadratic_random(6, 1);
  RandomStream rs(5);
  Eigen::VectorXd x = rs.normal_vector(6);

  InexactGradientOracle exact(p, ErrorPolicy::RandomUnitSphere, InexactnessSchedule::zero(4), 1);
  auto q0 = exact.query(x, 0);
  CHECK(q0.e.norm() == 0.0);
  CHECK((q0.g_tilde - q0.g_true).norm() == 0.0);

  for (auto policy : {ErrorPolicy::RandomUnitSphere, ErrorPolicy::FixedDirection,
                      ErrorPolicy::GradientAligned, ErrorPolicy::GradientOpposed}) {
    InexactGradientOracle oracle(p, policy, InexactnessSchedule::constant(0.05, 4), 1);
    for (int k = 0; k <= 4; ++k) {  // k = 4 is the b_K = 0 convention
      auto q = oracle.query(x, k);
      double budget = k < 4 ? 0.05 : 0.0;
      CHECK(q.e.norm() <= budget + 1e-12);
      if (k < 4) CHECK(q.e.norm() == doctest::Approx(budget).epsilon(1e-12));
      CHECK((q.g_tilde - q.g_true - q.e).norm() == 0.0);
    }
  }
}

TEST_CASE("oracle query: gradient-aligned construction") {
  auto p = isotropic_quadratic(3, 1.0);
  Eigen::VectorXd x(3);
  x << 1.0, 0.0, 0.0;  // gradient (1,0,0), norm 1
  InexactGradientOracle oracle(p, ErrorPolicy::GradientAligned,
                               InexactnessSchedule::constant(0.1, 2), 3);
  auto q = oracle.query(x, 0);
  CHECK(q.g_tilde[0] == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(q.e.norm() == doctest::Approx(0.1).epsilon(1e-15));

  InexactGradientOracle opp(p, ErrorPolicy::GradientOpposed, InexactnessSchedule::constant(0.1, 2),
                            3);
  CHECK(opp.query(x, 0).g_tilde[0] == doctest::Approx(0.9).epsilon(1e-15));
}

TEST_CASE("oracle query: deterministic per (seed, k), byte-identical") {
  auto p = make_quadratic_random(5, 2);
  Eigen::VectorXd x = RandomStream(8).normal_vector(5);
  InexactGradientOracle a(p, ErrorPolicy::RandomUnitSphere, InexactnessSchedule::constant(0.2, 6),
                          77);
  InexactGradientOracle b(p, ErrorPolicy::RandomUnitSphere, InexactnessSchedule::constant(0.2, 6),
                          77);
  // consume b's stream in a different order first
  (void)b.query(x, 5);
  for (int k = 0; k < 6; ++k) {
    auto qa = a.query(x, k);
    auto qb = b.query(x, k);
    CHECK(std::memcmp(qa.e.data(), qb.e.data(), sizeof(double) * 5) == 0);
  }
  InexactGradientOracle c(p, ErrorPolicy::RandomUnitSphere, InexactnessSchedule::constant(0.2, 6),
                          78);
  CHECK((a.query(x, 0).e - c.query(x, 0).e).norm() > 0);
}

TEST_CASE("oracle query: dimension mismatch") {
  auto p = make_quadratic_random(5, 2);
  InexactGradientOracle oracle(p, ErrorPolicy::FixedDirection, InexactnessSchedule::zero(3), 0);
  CHECK_THROWS_AS(oracle.query(Eigen::VectorXd::Zero(4), 0), InvalidParameterError);
}

TEST_CASE("forward FD on the isotropic quadratic is exactly L x + (L l / 2) 1") {
  const int d = 5;
  const double L = 2.0, l = 0.125;  // dyadic values keep the identity exact
  auto p = isotropic_quadratic(d, L);
  Eigen::VectorXd x(d);
  x << 0.5, -1.0, 2.0, 0.25, -0.75;
  Eigen::VectorXd g = forward_fd_gradient(p, x, l);
  for (int i = 0; i < d; ++i) {
    CHECK(g[i] == doctest::Approx(L * x[i] + L * l / 2.0).epsilon(1e-14));
  }
  double err = (g - p.grad(x)).norm();
  CHECK(std::fabs(err - std::sqrt(double(d)) * L * l / 2.0) <= 1e-10);
}

TEST_CASE("forward FD is exact on affine functions") {
  Eigen::VectorXd a(3);
  a << 1.0, -2.0, 0.5;
  auto p = linear_problem(a);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(3);
  Eigen::VectorXd g = forward_fd_gradient(p, x, 1e-3);
  CHECK((g - a).norm() <= 1e-12);
}

TEST_CASE("forward FD error bound under bounded value noise") {
  const int d = 2;
  const double L = 1.0, l = 0.1, b_f = 0.001;
  auto p = isotropic_quadratic(d, L);
  double bound = std::sqrt(double(d)) * L * l / 2.0 + 2.0 * std::sqrt(double(d)) * b_f / l;
  CHECK(bound == doctest::Approx(0.09899494936611666).epsilon(1e-12));
  RandomStream rs(31);
  for (auto& noise : {sinusoidal_value_noise(b_f), uniform_value_noise(b_f, 4)}) {
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::VectorXd x = rs.normal_vector(d);
      double err = (forward_fd_gradient(p, x, l, noise) - p.grad(x)).norm();
      CHECK(err <= bound + 1e-12);
    }
  }
}

TEST_CASE("forward FD rejects l <= 0") {
  auto p = isotropic_quadratic(2, 1.0);
  CHECK_THROWS_AS(forward_fd_gradient(p, Eigen::VectorXd::Zero(2), 0.0), InvalidParameterError);
  CHECK_THROWS_AS(forward_fd_gradient(p, Eigen::VectorXd::Zero(2), -1.0), InvalidParameterError);
}

TEST_CASE("Gaussian smoothing: unbiased on affine functions") {
  Eigen::VectorXd a(4);
  a << 0.3, -1.2, 0.8, 2.0;
  auto p = linear_problem(a);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(4);
  const int seeds = 100, n = 64;
  for (int s = 0; s < seeds; ++s) {
    mean += gaussian_smoothing_gradient(p, x, 0.1, n, nullptr, 1000 + s);
  }
  mean /= seeds;
  // Monte-Carlo error ~ |a| sqrt(d / (seeds n))
  CHECK((mean - a).norm() <= 4.0 * a.norm() * std::sqrt(4.0 / (seeds * n)));
}

TEST_CASE("Gaussian smoothing: variance decays like 1/n") {
  auto p = isotropic_quadratic(3, 1.0);
  Eigen::VectorXd x(3);
  x << 1.0, -0.5, 0.25;
  auto sample_var = [&](int n) {
    const int seeds = 100;
    std::vector<Eigen::VectorXd> draws;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(3);
    for (int s = 0; s < seeds; ++s) {
      draws.push_back(gaussian_smoothing_gradient(p, x, 0.05, n, nullptr, 500 + s));
      mean += draws.back();
    }
    mean /= seeds;
    double v = 0;
    for (const auto& g : draws) v += (g - mean).squaredNorm();
    return v / (seeds - 1);
  };
  double v1 = sample_var(1);
  double v4 = sample_var(10000);
  double ratio = v1 / v4;
  CHECK(ratio >= 2e3);
  CHECK(ratio <= 5e4);
}

TEST_CASE("Gaussian smoothing rejects bad parameters") {
  auto p = isotropic_quadratic(2, 1.0);
  CHECK_THROWS_AS(gaussian_smoothing_gradient(p, Eigen::VectorXd::Zero(2), 0.0, 4, nullptr, 0),
                  InvalidParameterError);
  CHECK_THROWS_AS(gaussian_smoothing_gradient(p, Eigen::VectorXd::Zero(2), 0.1, 0, nullptr, 0),
                  InvalidParameterError);
}
