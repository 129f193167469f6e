#include <cmath>
#include <cstring>

#include "doctest.h"
#include "ipep/algorithms.hpp"
#include "ipep/errors.hpp"
#include "ipep/numerics.hpp"
#include "ipep/rng.hpp"

using namespace ipep;

namespace {

SmoothConvexProblem scalar_quadratic() {
  // f(x) = x^2/2 on R, L = 1.
  SmoothConvexProblem p;
  p.name = "scalar";
  p.dimension = 1;
  p.lipschitz = 1.0;
  p.eval = [](const Eigen::VectorXd& x) { return 0.5 * x.squaredNorm(); };
  p.grad = [](const Eigen::VectorXd& x) { return x; };
  p.minimizer = Eigen::VectorXd::Zero(1);
  p.optimal_value = 0.0;
  return p;
}

StepsizeSchedule random_schedule(int K, std::uint64_t seed) {
  RandomStream rs(seed);
  std::vector<double> lam(K);
  for (int i = 0; i < K; ++i) lam[i] = rs.uniform(0.1, 0.9);
  return schedule_from_lambda(lam, K);
}

double max_rel_deviation(const std::vector<Eigen::VectorXd>& a,
                         const std::vector<Eigen::VectorXd>& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double scale = std::fmax(1.0, b[k].norm());
    worst = std::fmax(worst, (a[k] - b[k]).norm() / scale);
  }
  return worst;
}

std::vector<double> lambda_one_alpha(int K) {
  auto s = schedule_from_lambda(std::vector<double>(K + 1, 1.0), K + 1);
  std::vector<double> alpha(K + 2);
  for (int k = 0; k <= K + 1; ++k) alpha[k] = s.alpha[k];
  return alpha;
}

}  // namespace

TEST_CASE("iGOGM with exact oracle and lambda=1 coincides with OGM") {
  auto p = builtin_problem("quadratic-random", 8, 3);
  Eigen::VectorXd x0 = RandomStream(1).normal_vector(8);
  const int K = 20;
  auto s = schedule_from_lambda(std::vector<double>(K, 1.0), K);
  InexactGradientOracle oracle(p, ErrorPolicy::RandomUnitSphere, InexactnessSchedule::zero(K), 0);
  auto ti = run_igogm(p, oracle, s, K, x0);
  auto to = run_ogm(p, K, false, x0);
  CHECK(max_rel_deviation(ti.x, to.x) <= 1e-12);
  CHECK(max_rel_deviation(ti.y, to.y) <= 1e-12);
}

TEST_CASE("iGOGM hand-executed on f = x^2/2, K = 1") {
  auto p = scalar_quadratic();
  Eigen::VectorXd x0 = Eigen::VectorXd::Ones(1);
  auto s = schedule_from_lambda({1.0}, 1);
  InexactGradientOracle oracle(p, ErrorPolicy::FixedDirection, InexactnessSchedule::zero(1), 0);
  auto t = run_igogm(p, oracle, s, 1, x0);
  double a1 = (1.0 + std::sqrt(5.0)) / 2.0;
  double A1 = 1.0 + a1;
  CHECK(t.y[1][0] == doctest::Approx(0.0));
  CHECK(t.z[1][0] == doctest::Approx(-1.0));
  CHECK(t.x[1][0] == doctest::Approx(-a1 / A1).epsilon(1e-14));
  CHECK(t.x[1][0] == doctest::Approx(-0.6180339887498949).epsilon(1e-14));
}

TEST_CASE("iGOGM responds linearly to the injected error") {
  auto p = scalar_quadratic();
  Eigen::VectorXd x0 = Eigen::VectorXd::Ones(1);
  auto s = schedule_from_lambda({1.0}, 1);
  InexactGradientOracle exact(p, ErrorPolicy::GradientAligned, InexactnessSchedule::zero(1), 0);
  InexactGradientOracle noisy(p, ErrorPolicy::GradientAligned,
                              InexactnessSchedule::constant(0.1, 1), 0);
  auto te = run_igogm(p, exact, s, 1, x0);
  auto tn = run_igogm(p, noisy, s, 1, x0);
  CHECK(tn.y[1][0] == doctest::Approx(-0.1).epsilon(1e-14));
  double a1 = s.alpha[1], A1 = s.A[1];
  double shift = -(1.0 - a1 / A1 + 2.0 * a1 / A1) * 0.1;
  CHECK(tn.x[1][0] - te.x[1][0] == doctest::Approx(shift).epsilon(1e-12));
}

TEST_CASE("iGFGM differs from iGOGM by the factor 2 in the dual increment") {
  auto p = builtin_problem("least-squares", 6, 5);
  Eigen::VectorXd x0 = RandomStream(2).normal_vector(6);
  const int K = 8;
  auto s = random_schedule(K, 4);
  InexactGradientOracle oracle(p, ErrorPolicy::FixedDirection,
                               InexactnessSchedule::constant(0.05, K), 12);
  auto tg = run_igogm(p, oracle, s, K, x0);
  auto tf = run_igfgm(p, oracle, s, K, x0);
  // identical first query point, so identical first gradients
  Eigen::VectorXd incr_ogm = tg.z[1] - tg.z[0];
  Eigen::VectorXd incr_fgm = tf.z[1] - tf.z[0];
  CHECK((incr_ogm - 2.0 * incr_fgm).norm() <= 1e-14);
}

TEST_CASE("iGFGM hand-executed on f = x^2/2, K = 1") {
  // With L = 1, x_0 = 1: y_1 = 0 and z_1 = 1 - alpha_0 * 1 = 0, so x_1 = 0
  // for any alpha_1.
  auto p = scalar_quadratic();
  Eigen::VectorXd x0 = Eigen::VectorXd::Ones(1);
  auto s = schedule_from_lambda({1.0}, 1);
  InexactGradientOracle oracle(p, ErrorPolicy::FixedDirection, InexactnessSchedule::zero(1), 0);
  auto t = run_igfgm(p, oracle, s, 1, x0);
  CHECK(t.y[1][0] == doctest::Approx(0.0));
  CHECK(t.z[1][0] == doctest::Approx(0.0));
  CHECK(t.x[1][0] == doctest::Approx(0.0));
}

TEST_CASE("iGFGM with lambda=1 and exact oracle is the classic momentum FGM") {
  auto p = builtin_problem("quadratic-random", 7, 11);
  Eigen::VectorXd x0 = RandomStream(3).normal_vector(7);
  const int K = 15;
  auto s = schedule_from_lambda(std::vector<double>(K, 1.0), K);
  InexactGradientOracle oracle(p, ErrorPolicy::FixedDirection, InexactnessSchedule::zero(K), 0);
  auto t = run_igfgm(p, oracle, s, K, x0);

  // Reference: x_{k+1} = y_{k+1} + ((t_k - 1)/t_{k+1})(y_{k+1} - y_k).
  double tk = 1.0;
  Eigen::VectorXd x = x0, y_prev = x0;
  double L = p.lipschitz;
  for (int k = 0; k < K; ++k) {
    Eigen::VectorXd y = x - p.grad(x) / L;
    double tn = (1.0 + std::sqrt(1.0 + 4.0 * tk * tk)) / 2.0;
    x = y + ((tk - 1.0) / tn) * (y - y_prev);
    y_prev = y;
    tk = tn;
    CHECK((t.x[k + 1] - x).norm() <= 1e-10 * std::fmax(1.0, x.norm()));
  }
}

TEST_CASE("trajectory equivalence: iGOGM == iGFO(theta_ogm), iGFGM == iGFO(theta_fgm)") {
  for (std::uint64_t seed : {0ull, 1ull, 2ull}) {
    int K = seed == 0 ? 50 : 12;
    int d = seed == 0 ? 50 : 6;
    auto p = builtin_problem("quadratic-random", d, seed + 10);
    Eigen::VectorXd x0 = RandomStream(seed).normal_vector(d);
    auto s = random_schedule(K, seed + 100);
    InexactGradientOracle oracle(p, ErrorPolicy::RandomUnitSphere,
                                 InexactnessSchedule::constant(0.01, K), seed);

    auto tg = run_igogm(p, oracle, s, K, x0);
    auto to = run_igfo(p, theta_ogm(s), K, tg.e, x0);
    CHECK(max_rel_deviation(to.x, tg.x) <= 1e-8);

    auto tf = run_igfgm(p, oracle, s, K, x0);
    auto tff = run_igfo(p, theta_fgm(s), K, tf.e, x0);
    CHECK(max_rel_deviation(tff.x, tf.x) <= 1e-8);
  }
}

TEST_CASE("iGFO with theta = 0 stays at x0") {
  auto p = scalar_quadratic();
  Eigen::VectorXd x0 = Eigen::VectorXd::Ones(1);
  ThetaTable zero(4);
  auto t = run_igfo(p, zero, 4, {}, x0);
  for (const auto& x : t.x) CHECK(x[0] == 1.0);
}

TEST_CASE("iFGM matches iGFGM when unconstrained with alpha^2 = A") {
  auto p = builtin_problem("least-squares", 8, 21);
  Eigen::VectorXd x0 = RandomStream(6).normal_vector(8);
  const int K = 12;
  auto s = schedule_from_lambda(std::vector<double>(K, 1.0), K);
  std::vector<double> alpha(K + 1);
  for (int k = 0; k <= K; ++k) alpha[k] = s.alpha[k];
  InexactGradientOracle oracle(p, ErrorPolicy::RandomUnitSphere,
                               InexactnessSchedule::constant(0.02, K), 9);
  auto tf = run_ifgm(p, oracle, alpha, K, FeasibleSet::whole_space(), x0);
  auto tg = run_igfgm(p, oracle, s, K, x0);
  CHECK(max_rel_deviation(tf.x, tg.x) <= 1e-10);
  CHECK(max_rel_deviation(tf.y, tg.y) <= 1e-10);
}

TEST_CASE("iFGM with a radius-0 ball at x* collapses every iterate") {
  auto p = builtin_problem("quadratic-random", 5, 2);
  Eigen::VectorXd x0 = RandomStream(4).normal_vector(5);
  const int K = 6;
  std::vector<double> alpha = lambda_one_alpha(K);
  InexactGradientOracle oracle(p, ErrorPolicy::FixedDirection,
                               InexactnessSchedule::constant(0.1, K), 0);
  auto t = run_ifgm(p, oracle, alpha, K, FeasibleSet::ball(*p.minimizer, 0.0), x0);
  for (int k = 1; k <= K; ++k) {
    CHECK((t.x[k] - *p.minimizer).norm() <= 1e-14);
    CHECK((t.y[k] - *p.minimizer).norm() <= 1e-14);
    CHECK((t.z[k] - *p.minimizer).norm() <= 1e-14);
  }
}

TEST_CASE("iFGM with exact oracle satisfies f(y_{K+1}) - f* <= L R^2 / A_K") {
  auto p = builtin_problem("quadratic-random", 10, 17);
  Eigen::VectorXd x0 = *p.minimizer + RandomStream(5).unit_vector(10);
  const int K = 15;
  std::vector<double> alpha = lambda_one_alpha(K);
  double AK = 0.0;
  for (int k = 0; k <= K; ++k) AK += alpha[k];
  InexactGradientOracle oracle(p, ErrorPolicy::FixedDirection, InexactnessSchedule::zero(K), 0);
  auto t = run_ifgm(p, oracle, alpha, K, FeasibleSet::whole_space(), x0);
  double R2 = (x0 - *p.minimizer).squaredNorm();
  CHECK(p.eval(t.y[K + 1]) - *p.optimal_value <= p.lipschitz * R2 / AK + 1e-9);
}

TEST_CASE("iFGM validates the stepsize condition") {
  auto p = scalar_quadratic();
  Eigen::VectorXd x0 = Eigen::VectorXd::Ones(1);
  InexactGradientOracle oracle(p, ErrorPolicy::FixedDirection, InexactnessSchedule::zero(2), 0);
  // alpha_1^2 = 4 > A_1 = 3
  CHECK_THROWS_AS(run_ifgm(p, oracle, {1.0, 2.0, 1.0}, 2, FeasibleSet::whole_space(), x0),
                  InvalidParameterError);
  CHECK_THROWS_AS(run_ifgm(p, oracle, {1.5, 1.0, 1.0}, 2, FeasibleSet::whole_space(), x0),
                  InvalidParameterError);
}

TEST_CASE("iSTM equals iFGM up to the documented index shift") {
  auto p = builtin_problem("quadratic-random", 9, 33);
  Eigen::VectorXd x0 = RandomStream(7).normal_vector(9);
  const int K = 14;
  std::vector<double> alpha = lambda_one_alpha(K);
  InexactGradientOracle oracle(p, ErrorPolicy::RandomUnitSphere,
                               InexactnessSchedule::constant(0.03, K), 44);
  auto ts = run_istm(p, oracle, alpha, K, FeasibleSet::whole_space(), x0);
  auto tf = run_ifgm(p, oracle, alpha, K, FeasibleSet::whole_space(), x0);
  // iSTM updates x at loop entry, iFGM at loop exit: x_k agree as-is and
  // iSTM's y_k is iFGM's y_{k+1}.
  for (int k = 0; k <= K; ++k) {
    CHECK((ts.x[k] - tf.x[k]).norm() <= 1e-10 * std::fmax(1.0, tf.x[k].norm()));
    CHECK((ts.y[k] - tf.y[k + 1]).norm() <= 1e-10 * std::fmax(1.0, tf.y[k + 1].norm()));
  }
}

TEST_CASE("iSTM with K = 0 performs the single pass y_0 = z_0") {
  auto p = scalar_quadratic();
  Eigen::VectorXd x0 = Eigen::VectorXd::Ones(1);
  InexactGradientOracle oracle(p, ErrorPolicy::FixedDirection, InexactnessSchedule::zero(0), 0);
  auto t = run_istm(p, oracle, {1.0}, 0, FeasibleSet::whole_space(), x0);
  CHECK(t.x[0][0] == 1.0);
  CHECK(t.y[0][0] == t.z[0][0]);
}

TEST_CASE("iSTM keeps z inside the feasible ball") {
  auto p = builtin_problem("quadratic-random", 6, 8);
  Eigen::VectorXd x0 = RandomStream(9).normal_vector(6);
  const int K = 10;
  std::vector<double> alpha = lambda_one_alpha(K);
  auto ball = FeasibleSet::ball(Eigen::VectorXd::Zero(6), 0.5);
  InexactGradientOracle oracle(p, ErrorPolicy::RandomUnitSphere,
                               InexactnessSchedule::constant(0.05, K), 3);
  auto t = run_istm(p, oracle, alpha, K, ball, x0);
  for (const auto& z : t.z) CHECK(z.norm() <= 0.5 + 1e-12);
}

TEST_CASE("OGM alpha recursion, with and without the last adjustment") {
  auto p = builtin_problem("quadratic-random", 6, 40);
  Eigen::VectorXd x0 = RandomStream(11).normal_vector(6);
  const int K = 3;
  auto plain = run_ogm(p, K, false, x0);
  auto adjusted = run_ogm(p, K, true, x0);
  // all but the final iterate agree
  for (int k = 0; k < K; ++k) CHECK((plain.x[k] - adjusted.x[k]).norm() == 0.0);
  CHECK((plain.x[K] - adjusted.x[K]).norm() > 1e-12);

  // recursion oracle: alpha = [1, 1.6180..., 2.1935..., 2.7497...]
  double a = 1.0;
  std::vector<double> expect{1.0};
  for (int k = 0; k < K; ++k) {
    a = (1.0 + std::sqrt(1.0 + 4.0 * a * a)) / 2.0;
    expect.push_back(a);
  }
  CHECK(expect[1] == doctest::Approx(1.6180339887498949).epsilon(1e-12));
  CHECK(expect[2] == doctest::Approx(2.1935270853310539).epsilon(1e-12));
  CHECK(expect[3] == doctest::Approx(2.7497913401204452).epsilon(1e-12));
  // the plain run must follow the same recursion: rebuild x_1 from theta
  auto s = schedule_from_lambda(std::vector<double>(K, 1.0), K);
  for (int k = 1; k <= K; ++k) CHECK(s.alpha[k] == doctest::Approx(expect[k]).epsilon(1e-12));
}

TEST_CASE("exact OGM satisfies the optimized-gradient measure bound") {
  auto p = builtin_problem("quadratic-random", 12, 51);
  Eigen::VectorXd x0 = *p.minimizer + 2.0 * RandomStream(13).unit_vector(12);
  const int K = 10;
  auto t = run_ogm(p, K, false, x0);
  auto s = schedule_from_lambda(std::vector<double>(K, 1.0), K);
  double R2 = (x0 - *p.minimizer).squaredNorm();
  double scale = bound_scale(p.lipschitz, std::sqrt(R2));
  CHECK(t.measure[K] <= p.lipschitz * R2 / (4.0 * s.A[K]) + 1e-9 * scale);
}

TEST_CASE("gradient-descent baseline decreases the objective") {
  auto p = builtin_problem("quadratic-worstcase-ill", 20, 0);
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(20);
  InexactGradientOracle oracle(p, ErrorPolicy::FixedDirection, InexactnessSchedule::zero(30), 0);
  auto t = run_gd(p, oracle, 30, x0);
  for (int k = 1; k <= 30; ++k) CHECK(t.f_value[k] <= t.f_value[k - 1] + 1e-12);
}

TEST_CASE("trajectory determinism: same seed, bit-identical output") {
  auto p = builtin_problem("log-sum-exp", 7, 3);
  Eigen::VectorXd x0 = RandomStream(21).normal_vector(7);
  const int K = 9;
  auto s = random_schedule(K, 2);
  auto run = [&]() {
    InexactGradientOracle oracle(p, ErrorPolicy::RandomUnitSphere,
                                 InexactnessSchedule::constant(0.05, K), 5);
    return run_igogm(p, oracle, s, K, x0);
  };
  auto t1 = run();
  auto t2 = run();
  for (int k = 0; k <= K; ++k) {
    CHECK(std::memcmp(t1.x[k].data(), t2.x[k].data(), sizeof(double) * 7) == 0);
  }
}

TEST_CASE("trajectory invariants: stored y and e") {
  auto p = builtin_problem("quadratic-random", 6, 61);
  Eigen::VectorXd x0 = RandomStream(17).normal_vector(6);
  const int K = 11;
  auto s = random_schedule(K, 8);
  InexactGradientOracle oracle(p, ErrorPolicy::GradientOpposed,
                               InexactnessSchedule::constant(0.02, K), 7);
  auto t = run_igogm(p, oracle, s, K, x0);
  for (int k = 0; k <= K; ++k) {
    Eigen::VectorXd expect = t.x[k] - t.g_tilde[k] / p.lipschitz;
    CHECK((t.y[k + 1] - expect).norm() <= 1e-12 * std::fmax(1.0, expect.norm()));
    CHECK((t.e[k] - (t.g_tilde[k] - t.g_true[k])).norm() == 0.0);
  }
}

TEST_CASE("numerical failure carries the iteration index") {
  SmoothConvexProblem p = scalar_quadratic();
  p.lipschitz = 1e-308;  // 1/L overflows the first update
  InexactGradientOracle oracle(p, ErrorPolicy::FixedDirection, InexactnessSchedule::zero(3), 0);
  auto s = schedule_from_lambda(std::vector<double>(3, 0.5), 3);
  Eigen::VectorXd x0 = Eigen::VectorXd::Ones(1);
  CHECK_THROWS_AS(run_igogm(p, oracle, s, 3, x0), NumericalFailureError);
}

TEST_CASE("dimension mismatch is rejected") {
  auto p = scalar_quadratic();
  InexactGradientOracle oracle(p, ErrorPolicy::FixedDirection, InexactnessSchedule::zero(2), 0);
  auto s = schedule_from_lambda({0.5, 0.5}, 2);
  CHECK_THROWS_AS(run_igogm(p, oracle, s, 2, Eigen::VectorXd::Zero(2)), InvalidParameterError);
}

TEST_CASE("trajectory CSV schema") {
  auto p = scalar_quadratic();
  InexactGradientOracle oracle(p, ErrorPolicy::FixedDirection, InexactnessSchedule::zero(2), 0);
  auto s = schedule_from_lambda({0.5, 0.5}, 2);
  auto t = run_igogm(p, oracle, s, 2, Eigen::VectorXd::Ones(1));
  std::string csv = trajectory_to_csv(t, p);
  CHECK(csv.rfind("k,f_gap,measure,grad_norm,err_norm,x_norm_dist_to_opt\n", 0) == 0);
}
