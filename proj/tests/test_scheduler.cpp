#include <cmath>

#include "doctest.h"
#include "ipep/bounds.hpp"
#include "ipep/errors.hpp"
#include "ipep/numerics.hpp"
#include "ipep/scheduler.hpp"

using namespace ipep;

namespace {

double kkt1_residual(const ScheduleSolution& s, const Eigen::VectorXd& u,
                     const EffortModel& model, int k) {
  return model.h_inverse_grad(s.b_opt[k]) + 2.0 * s.lambda_dual * s.b_opt[k] * u[k];
}

Eigen::VectorXd u_case() {
  Eigen::VectorXd u(2);
  u << 1.25, 1.0;  // constant-step coefficients at K = 2, L = 1
  return u;
}

}  // namespace

TEST_CASE("effort models: inverse pair and gradients") {
  auto pow = EffortModel::power_law(1.0, 1.0);
  auto exp = EffortModel::exponential(1.0, std::exp(1.0));
  for (double eta : {0.3, 1.0, 7.5}) {
    CHECK(relative_error(pow.h_inverse(pow.h(eta)), eta) <= 1e-12);
    CHECK(relative_error(exp.h_inverse(exp.h(eta)), eta) <= 1e-12);
  }
  CHECK(pow.h_inverse(0.25) == doctest::Approx(4.0));       // eta = 1/b
  CHECK(exp.h_inverse(0.25) == doctest::Approx(std::log(4.0)));  // eta = -log b
  CHECK_THROWS_AS(exp.h_inverse(1.5), InvalidParameterError);
  CHECK_THROWS_AS(EffortModel::power_law(0.0, 1.0), InvalidParameterError);
  CHECK_THROWS_AS(EffortModel::exponential(1.0, 1.0), InvalidParameterError);
}

TEST_CASE("exponential closed form on the worked K=2 case") {
  auto model = EffortModel::exponential(1.0, std::exp(1.0));
  auto s = optimal_b_exponential(u_case(), 1.0, 1.0, 3.0, model);
  CHECK(s.b_opt[0] == doctest::Approx(std::sqrt(1.0 / 30.0)).epsilon(1e-14));
  CHECK(s.b_opt[1] == doctest::Approx(std::sqrt(1.0 / 24.0)).epsilon(1e-14));
  CHECK(s.b_opt[0] == doctest::Approx(0.18257418583505536).epsilon(1e-12));
  CHECK(s.b_opt[1] == doctest::Approx(0.20412414523193148).epsilon(1e-12));
  CHECK(s.lambda_dual == doctest::Approx(12.0).epsilon(1e-14));  // 2 K A_K / (L R^2 log q2)
  // budget binds
  double spend = u_case()[0] * s.b_opt[0] * s.b_opt[0] + u_case()[1] * s.b_opt[1] * s.b_opt[1];
  CHECK(relative_error(spend, s.budget) <= 1e-10);
  // KKT stationarity
  for (int k = 0; k < 2; ++k) {
    CHECK(std::fabs(kkt1_residual(s, u_case(), model, k)) <= 1e-8 * s.lambda_dual);
  }
}

TEST_CASE("exponential: lambda* ignores q1, scales as 1/R^2") {
  auto m1 = EffortModel::exponential(1.0, 2.0);
  auto m2 = EffortModel::exponential(0.9, 2.0);
  auto a = optimal_b_exponential(u_case(), 1.0, 0.5, 3.0, m1);
  auto b = optimal_b_exponential(u_case(), 1.0, 0.5, 3.0, m2);
  CHECK(a.lambda_dual == b.lambda_dual);
  auto c = optimal_b_exponential(u_case(), 1.0, 1.0, 3.0, m1);
  CHECK(relative_error(c.lambda_dual, a.lambda_dual / 4.0) <= 1e-12);
}

TEST_CASE("power-law closed form: worked case, KKT residuals, bisection agreement") {
  auto model = EffortModel::power_law(1.0, 1.0);
  auto u = u_case();
  auto s = optimal_b_powerlaw(u, 1.0, 1.0, 3.0, model);
  // frozen from the independent KKT system: b_k^3 = 1/(2 lambda u_k)
  CHECK(s.b_opt[0] == doctest::Approx(0.18593667871678665).epsilon(1e-10));
  CHECK(s.b_opt[1] == doctest::Approx(0.2002942153883791).epsilon(1e-10));
  double spend = u[0] * s.b_opt[0] * s.b_opt[0] + u[1] * s.b_opt[1] * s.b_opt[1];
  CHECK(relative_error(spend, s.budget) <= 1e-10);
  for (int k = 0; k < 2; ++k) {
    CHECK(std::fabs(kkt1_residual(s, u, model, k)) <= 1e-8 * s.lambda_dual);
  }
  auto bis = solve_by_bisection(u, 1.0, 1.0, 3.0, model);
  for (int k = 0; k < 2; ++k) {
    CHECK(relative_error(s.b_opt[k], bis.b_opt[k]) <= 1e-8);
  }
  CHECK(relative_error(s.lambda_dual, bis.lambda_dual) <= 1e-8);
}

TEST_CASE("power-law: equal coefficients give the symmetric solution") {
  Eigen::VectorXd u = Eigen::VectorXd::Constant(5, 0.8);
  auto model = EffortModel::power_law(2.0, 0.5);
  auto s = optimal_b_powerlaw(u, 1.0, 1.0, 4.0, model);
  double expect = std::sqrt(s.budget / (5.0 * 0.8));
  for (int k = 0; k < 5; ++k) CHECK(s.b_opt[k] == doctest::Approx(expect).epsilon(1e-12));
  // b* decreasing in u
  Eigen::VectorXd u2(3);
  u2 << 0.5, 1.0, 4.0;
  auto s2 = optimal_b_powerlaw(u2, 1.0, 1.0, 4.0, model);
  CHECK(s2.b_opt[0] > s2.b_opt[1]);
  CHECK(s2.b_opt[1] > s2.b_opt[2]);
}

TEST_CASE("constant baseline: binding budget, optimal when u is flat") {
  auto model = EffortModel::power_law(1.0, 1.0);
  auto s = constant_b_baseline(u_case(), 1.0, 1.0, 3.0, model);
  CHECK(s.b_opt[0] == doctest::Approx(std::sqrt(1.0 / 27.0)).epsilon(1e-14));
  CHECK(s.b_opt[0] == doctest::Approx(0.19245008972987526).epsilon(1e-12));
  CHECK(s.b_opt[1] == s.b_opt[0]);
  double spend = u_case()[0] * s.b_opt[0] * s.b_opt[0] + u_case()[1] * s.b_opt[1] * s.b_opt[1];
  CHECK(relative_error(spend, s.budget) <= 1e-12);

  Eigen::VectorXd flat = Eigen::VectorXd::Constant(4, 1.5);
  auto cb = constant_b_baseline(flat, 1.0, 1.0, 2.0, model);
  auto ob = optimal_b_powerlaw(flat, 1.0, 1.0, 2.0, model);
  CHECK(relative_error(cb.eta_total, ob.eta_total) <= 1e-12);
}

TEST_CASE("optimal eta-total never exceeds the constant baseline") {
  // iOGM-4 amplification coefficients over a K grid
  for (int K : {10, 30, 60, 100}) {
    auto sched = schedule_ogm_a(4.0, K);
    auto u = u_igogm(sched, 1.0);
    double AK = sched.A[K];
    for (double c2 : {0.5, 1.0, 2.0, 4.0}) {
      auto model = EffortModel::power_law(1.0, c2);
      auto copt = optimal_b_powerlaw(u, 1.0, 1.0, AK, model);
      auto cbase = constant_b_baseline(u, 1.0, 1.0, AK, model);
      CHECK(copt.eta_total <= cbase.eta_total + 1e-12);
      CHECK(copt.eta_total < cbase.eta_total);  // u is non-constant here
    }
    auto em = EffortModel::exponential(1.0, std::exp(1.0));
    auto eopt = optimal_b_exponential(u, 1.0, 1.0, AK, em);
    auto ebase = constant_b_baseline(u, 1.0, 1.0, AK, em);
    CHECK(eopt.eta_total <= ebase.eta_total + 1e-12);
  }
}

TEST_CASE("exponential clamp: loose budget pins eta at zero and redistributes") {
  Eigen::VectorXd u(3);
  u << 2.0, 0.001, 0.002;  // tiny u would ask for b > q1
  auto model = EffortModel::exponential(0.5, 2.0);
  auto s = optimal_b_exponential(u, 1.0, 1.0, 1.0, model);  // budget = 1/4
  CHECK(s.clamped);
  for (int k = 0; k < 3; ++k) {
    CHECK(s.b_opt[k] <= model.q1 * (1.0 + 1e-12));
    CHECK(s.eta[k] >= 0.0);
  }
  KahanSum spend;
  for (int k = 0; k < 3; ++k) spend.add(u[k] * s.b_opt[k] * s.b_opt[k]);
  CHECK(spend.value() <= s.budget * (1.0 + 1e-10));
  // the unclamped coordinate still satisfies stationarity
  CHECK(std::fabs(kkt1_residual(s, u, model, 0)) <= 1e-6 * s.lambda_dual);

  // budget so loose that even b = q1 everywhere fits: constraint is slack
  Eigen::VectorXd tiny = Eigen::VectorXd::Constant(2, 1e-6);
  auto s2 = optimal_b_exponential(tiny, 1.0, 10.0, 1.0, model);
  CHECK(s2.clamped);
  CHECK(s2.eta_total == 0.0);
}

TEST_CASE("eta_complexity matches the solution totals and validates range") {
  auto model = EffortModel::power_law(1.0, 1.0);
  auto s = optimal_b_powerlaw(u_case(), 1.0, 1.0, 3.0, model);
  CHECK(relative_error(eta_complexity(s, model), s.eta_total) <= 1e-12);
  for (int k = 0; k < 2; ++k) {
    CHECK(relative_error(s.eta[k], 1.0 / s.b_opt[k]) <= 1e-12);
  }
  auto exp = EffortModel::exponential(0.1, 2.0);
  ScheduleSolution bad = s;  // b ~ 0.2 > q1 = 0.1
  CHECK_THROWS_AS(eta_complexity(bad, exp), InvalidParameterError);
}

TEST_CASE("scheduler rejects invalid coefficients") {
  Eigen::VectorXd u(2);
  u << 1.0, 0.0;
  auto model = EffortModel::exponential(1.0, 2.0);
  CHECK_THROWS_AS(optimal_b_exponential(u, 1.0, 1.0, 1.0, model), InvalidParameterError);
  CHECK_THROWS_AS(optimal_b_powerlaw(u_case(), 1.0, 1.0, 3.0, model), InvalidParameterError);
}

TEST_CASE("schedule CSV schema with footer") {
  auto model = EffortModel::power_law(1.0, 1.0);
  auto opt = optimal_b_powerlaw(u_case(), 1.0, 1.0, 3.0, model);
  auto base = constant_b_baseline(u_case(), 1.0, 1.0, 3.0, model);
  std::string csv = schedule_solution_to_csv(u_case(), base, opt);
  CHECK(csv.rfind("k,u_k,b_const,b_opt,eta_const,eta_opt\n", 0) == 0);
  CHECK(csv.find("eta_total_const=") != std::string::npos);
  CHECK(csv.find(",improvement_ratio=") != std::string::npos);
}
