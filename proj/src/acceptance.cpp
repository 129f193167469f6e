#include "ipep/acceptance.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ipep/algorithms.hpp"
#include "ipep/bounds.hpp"
#include "ipep/certificate.hpp"
#include "ipep/errors.hpp"
#include "ipep/numerics.hpp"
#include "ipep/oracles.hpp"
#include "ipep/problems.hpp"
#include "ipep/rng.hpp"
#include "ipep/scheduler.hpp"

namespace ipep {

namespace {

struct Checker {
  bool ok = true;
  int checks = 0;
  std::ostringstream why;

  void expect(bool cond, const std::string& msg) {
    ++checks;
    if (!cond && ok) {
      ok = false;
      why << msg;
    }
  }
  std::string detail(const std::string& summary) const {
    return ok ? summary + " (" + std::to_string(checks) + " checks)" : why.str();
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

StepsizeSchedule random_schedule(int K, std::uint64_t seed, double lo, double hi) {
  RandomStream rs(seed);
  std::vector<double> lam(K);
  for (int i = 0; i < K; ++i) lam[i] = rs.uniform(lo, hi);
  return schedule_from_lambda(lam, K);
}

// ---- criterion 1: constant-step specialization --------------------------

CriterionResult criterion_constant_step() {
  Checker c;
  for (double L : {0.5, 1.0, 10.0}) {
    for (int K = 1; K <= 100; ++K) {
      auto u = u_igogm(schedule_constant(K), L);
      KahanSum sum;
      for (int k = 0; k < K; ++k) {
        double expect = 3.0 * (2.0 * K - k + 1.0) / (4.0 * L * (K + 1.0));
        c.expect(relative_error(u[k], expect) <= 1e-12,
                 "u mismatch at K=" + std::to_string(K) + " k=" + std::to_string(k) + " L=" +
                     fmt(L) + ": got " + fmt(u[k]) + " want " + fmt(expect));
        sum.add(u[k]);
      }
      double bbar = 0.37;
      c.expect(relative_error(sum.value() * bbar * bbar, 9.0 * K * bbar * bbar / (8.0 * L)) <=
                   1e-12,
               "sum mismatch at K=" + std::to_string(K) + " L=" + fmt(L));
    }
  }
  return {1, "constant-step u and accumulated error", c.ok,
          c.detail("u_k = 3(2K-k+1)/(4L(K+1)) and sum = 9K b^2/(8L), K<=100, L in {0.5,1,10}")};
}

// ---- criterion 2: OGM-4 closed form --------------------------------------

CriterionResult criterion_ogm4() {
  Checker c;
  const double L = 1.0;
  for (int K = 1; K <= 200; ++K) {
    auto simplified = u_ogm4_simplified(K, L);
    KahanSum sum;
    for (int k = 0; k < K; ++k) sum.add(simplified[k]);
    c.expect(relative_error(sum.value(), u_ogm4_simplified_sum(K, L, 1.0)) <= 1e-9,
             "closed-form sum mismatch at K=" + std::to_string(K));
    auto exact = u_igogm(schedule_ogm_a(4.0, K), L);
    for (int k = 0; k < K; ++k) {
      c.expect(exact[k] <= simplified[k] * (1.0 + 1e-12),
               "u^{Thm1} > u^{simplified} at K=" + std::to_string(K) + " k=" +
                   std::to_string(k));
    }
  }
  c.expect(relative_error(u_ogm4_simplified_sum(10, 1.0, 1.0), 779280.0 / 8640.0) <= 1e-12,
           "spot value K=10 mismatch: " + fmt(u_ogm4_simplified_sum(10, 1.0, 1.0)));
  return {2, "OGM-4 simplified coefficients and quartic sum", c.ok,
          c.detail("sum u = K(12K^3+303K^2+2687K+8758)/(480L(K+8)), K<=200; spot 90.1944")};
}

// ---- criterion 3: P-identity oracle --------------------------------------

CriterionResult criterion_p_identity() {
  Checker c;
  RandomStream rs(2024);
  for (int trial = 0; trial < 50; ++trial) {
    int K = 2 + static_cast<int>(rs.next_u64() % 29);  // up to 30
    double L = rs.uniform(0.5, 4.0);
    auto s = random_schedule(K, 9000 + trial, 0.05, 0.95);
    auto u = u_igogm(s, L);
    Eigen::MatrixXd P = p_coefficients(s, L);
    for (int k = 0; k < K; ++k) {
      double combo = P(k, k);
      for (int i = 0; i < k; ++i) combo += 0.5 * P(k, i);
      for (int i = k + 1; i < K; ++i) combo += 0.5 * P(i, k);
      combo /= s.A[K];
      c.expect(relative_error(u[k], combo) <= 1e-12,
               "P-identity broke at trial " + std::to_string(trial) + " k=" + std::to_string(k) +
                   ": " + fmt(u[k]) + " vs " + fmt(combo));
    }
  }
  return {3, "u equals the P-coefficient combination", c.ok,
          c.detail("50 random schedules, K <= 30, rel err <= 1e-12")};
}

// ---- criteria 4 + 6: certificate feasibility, printed K=3 matrices, -----
// ---- dual equality residual ----------------------------------------------

void check_feasibility(Checker& c, Checker& c6, const StepsizeSchedule& s, double L,
                       const std::string& tag) {
  auto u = u_igogm(s, L);
  auto rep = verify_certificate(s, L, u);
  c.expect(rep.min_eig_M >= -1e-8 * rep.fro_norm_M,
           tag + ": min eig " + fmt(rep.min_eig_M) + " vs fro " + fmt(rep.fro_norm_M));
  c.expect(rep.min_row_sum_S >= -1e-10, tag + ": S row sum " + fmt(rep.min_row_sum_S));
  c6.expect(rep.equality_residual <= 1e-14,
            tag + ": equality residual " + fmt(rep.equality_residual));
}

// The printed K=3 matrices, entry by entry, against the construction.
void check_printed_k3(Checker& c, const StepsizeSchedule& s, double L) {
  const auto& a = s.alpha;
  const auto& A = s.A;
  const double A3 = A[3];
  GramIndexing idx{3};
  Eigen::VectorXd u(3);
  u << 0.9, 1.1, 1.3;
  Eigen::MatrixXd M = build_M(s, L, u);

  auto near = [&](double got, double want, const std::string& where) {
    c.expect(std::fabs(got - want) <= 1e-12 * std::fmax(1.0, std::fabs(want)),
             "printed-matrix mismatch at " + where + ": " + fmt(got) + " vs " + fmt(want));
  };

  // M, row by row of the printed display
  near(M(0, 0), L / (4 * A3), "M[tau,tau]");
  for (int i = 0; i < 3; ++i) near(M(0, idx.e(i)), 0.0, "M[tau,e]");
  for (int j = 0; j <= 3; ++j) near(M(0, idx.g(j)), -a[j] / (2 * A3), "M[tau,g]");
  near(M(idx.e(0), idx.e(0)), u[0], "M[e0,e0]");
  near(M(idx.e(0), idx.g(1)), (1 + 2 * a[1]) / (2 * L * A3), "M[e0,g1]");
  near(M(idx.e(0), idx.g(2)), a[2] / (L * A3), "M[e0,g2]");
  near(M(idx.e(0), idx.g(3)), a[3] / (L * A3), "M[e0,g3]");
  near(M(idx.e(1), idx.g(2)), (2 * a[1] * a[2] + A[1]) / (2 * L * A3), "M[e1,g2]");
  near(M(idx.e(1), idx.g(3)), a[1] * a[3] / (L * A3), "M[e1,g3]");
  near(M(idx.e(2), idx.g(3)), (2 * a[2] * a[3] + A[2]) / (2 * L * A3), "M[e2,g3]");
  for (int i = 0; i < 3; ++i) {
    near(M(idx.e(i), idx.g(0)), 0.0, "M[e,g0]");
    for (int j = 1; j <= i; ++j) near(M(idx.e(i), idx.g(j)), 0.0, "M[e,g<=i]");
  }
  for (int r = 0; r <= 3; ++r) {
    near(M(idx.g(r), idx.g(r)), A[r] / (L * A3), "M[gr,gr]");
    for (int cc = r + 1; cc <= 3; ++cc) {
      near(M(idx.g(r), idx.g(cc)), a[r] * a[cc] / (L * A3), "M[gr,gc]");
    }
  }

  // R: zero border, same e/B block, diagonal residual
  Eigen::MatrixXd R = build_R(s, L, u);
  for (int i = 0; i < R.rows(); ++i) {
    near(R(0, i), 0.0, "R[0,*]");
    near(R(i, 0), 0.0, "R[*,0]");
  }
  for (int i = 0; i < 3; ++i) {
    near(R(idx.e(i), idx.e(i)), u[i], "R[e,e]");
    for (int j = i + 1; j <= 3; ++j) {
      near(R(idx.e(i), idx.g(j)), M(idx.e(i), idx.g(j)), "R[e,g] = M[e,g]");
    }
  }
  for (int r = 0; r <= 3; ++r) {
    for (int cc = 0; cc <= 3; ++cc) {
      double want = r == cc ? (A[r] - a[r] * a[r]) / (L * A3) : 0.0;
      near(R(idx.g(r), idx.g(cc)), want, "R[g,g]");
    }
  }

  // S for a nondegenerate schedule: the printed general formulas
  if (s.strictly_nondegenerate()) {
    Eigen::MatrixXd S = build_S(s, L, u);
    for (int r = 0; r < 3; ++r) {
      int i = r + 1;
      double diag = u[r] - std::pow(A[i - 1] + 2 * a[i - 1] * a[i], 2) /
                               (4 * L * A3 * (A[i] - a[i] * a[i]));
      for (int k = i; k <= 2; ++k) {
        diag -= a[i - 1] * a[i - 1] * a[k + 1] * a[k + 1] /
                (L * A3 * (A[k + 1] - a[k + 1] * a[k + 1]));
      }
      near(S(r, r), diag, "S[i,i]");
      for (int q = 0; q < r; ++q) {
        int j = q + 1;
        double off = -a[i] * a[j - 1] * (A[i - 1] + 2 * a[i - 1] * a[i]) /
                     (2 * L * A3 * (A[i] - a[i] * a[i]));
        for (int k = i; k <= 2; ++k) {
          off -= a[i - 1] * a[j - 1] * a[k + 1] * a[k + 1] /
                 (L * A3 * (A[k + 1] - a[k + 1] * a[k + 1]));
        }
        near(S(r, q), off, "S[i,j]");
        near(S(q, r), off, "S[j,i]");
      }
    }
  }
}

std::pair<CriterionResult, CriterionResult> criterion_certificates() {
  Checker c, c6;
  for (double a : {3.0, 4.0, 10.0, 100.0}) {
    for (int K : {2, 5, 10, 17, 25}) {
      check_feasibility(c, c6, schedule_ogm_a(a, K), 1.0, "ogm-" + fmt(a) + " K=" +
                                                              std::to_string(K));
    }
  }
  RandomStream rs(777);
  for (int trial = 0; trial < 50; ++trial) {
    int K = 2 + static_cast<int>(rs.next_u64() % 24);  // up to 25
    auto s = random_schedule(K, 100 + trial, 0.05, 0.95);
    check_feasibility(c, c6, s, 1.0, "random " + std::to_string(trial));
  }
  check_printed_k3(c, schedule_from_lambda({1.0, 1.0, 1.0}, 3), 1.0);
  check_printed_k3(c, schedule_ogm_a(4.0, 3), 2.0);

  CriterionResult r4{4, "dual certificate feasibility at u = u_hat", c.ok,
                     c.detail("OGM-a, 50 random schedules, K <= 25; printed K=3 matrices")};
  CriterionResult r6{6, "dual equality residual", c6.ok,
                     c6.detail("max |coefficient| <= 1e-14 on every tested certificate")};
  return {r4, r6};
}

// ---- criterion 5: degenerate regime --------------------------------------

CriterionResult criterion_degenerate() {
  Checker c;
  for (int K = 2; K <= 10; ++K) {
    auto s = schedule_from_lambda(std::vector<double>(K, 1.0), K);
    for (double level : {1.0, 50.0}) {
      auto rep = verify_certificate(s, 1.0, Eigen::VectorXd::Constant(K, level).eval());
      c.expect(rep.min_eig_M < 0.0, "K=" + std::to_string(K) + " u=" + fmt(level) +
                                        ": min eig " + fmt(rep.min_eig_M) + " not negative");
      c.expect(!rep.psd_M, "K=" + std::to_string(K) + ": psd test passed unexpectedly");
    }
    bool threw = false;
    try {
      u_igogm(s, 1.0);
    } catch (const DegenerateStepsizeError&) {
      threw = true;
    }
    c.expect(threw, "u_igogm failed to throw at K=" + std::to_string(K));
  }
  return {5, "lambda = 1 admits no finite certificate", c.ok,
          c.detail("min eig M < 0 for K in {2..10}; u_igogm raises the degenerate error")};
}

// ---- criterion 7: empirical bound validity --------------------------------

CriterionResult criterion_empirical() {
  Checker c;
  const int K = 25;
  int instances = 0;
  for (const char* name :
       {"quadratic-random", "least-squares", "log-sum-exp", "quadratic-worstcase-ill"}) {
    for (auto policy : {ErrorPolicy::RandomUnitSphere, ErrorPolicy::FixedDirection,
                        ErrorPolicy::GradientAligned, ErrorPolicy::GradientOpposed}) {
      for (double b : {0.0, 0.001, 0.01, 0.1}) {
        for (std::uint64_t lam_seed : {0ull, 1ull, 2ull, 3ull}) {
          int d = 10 + static_cast<int>((instances * 7) % 41);  // up to 50
          auto p = builtin_problem(name, d, 555 + instances);
          auto s = random_schedule(K, 3000 + instances, 0.1, 0.9);
          Eigen::VectorXd x0 =
              *p.minimizer + RandomStream(40 + lam_seed).unit_vector(d) * 1.5;
          double R = (x0 - *p.minimizer).norm();
          double scale = bound_scale(p.lipschitz, R);
          InexactGradientOracle oracle(p, policy, InexactnessSchedule::constant(b, K),
                                       70 + instances);

          auto tg = run_igogm(p, oracle, s, K, x0);
          auto ug = u_igogm(s, p.lipschitz);
          KahanSum rhs_g;
          rhs_g.add(p.lipschitz * R * R / (4.0 * s.A[K]));
          for (int k = 0; k < K; ++k) rhs_g.add(ug[k] * tg.e[k].squaredNorm());
          c.expect(tg.measure[K] <= rhs_g.value() + 1e-9 * scale,
                   std::string("igogm bound violated: ") + name + " policy=" +
                       to_string(policy) + " b=" + fmt(b) + " margin=" +
                       fmt(rhs_g.value() - tg.measure[K]));

          auto tf = run_igfgm(p, oracle, s, K, x0);
          auto uf = u_igfgm(s, p.lipschitz);
          KahanSum rhs_f;
          rhs_f.add(p.lipschitz * R * R / (2.0 * s.A[K]));
          for (int k = 0; k < K; ++k) rhs_f.add(uf[k] * tf.e[k].squaredNorm());
          c.expect(tf.measure[K] <= rhs_f.value() + 1e-9 * scale,
                   std::string("igfgm bound violated: ") + name + " policy=" +
                       to_string(policy) + " b=" + fmt(b) + " margin=" +
                       fmt(rhs_f.value() - tf.measure[K]));
          ++instances;
        }
      }
    }
  }
  return {7, "empirical bound validity on the instance grid", c.ok,
          c.detail(std::to_string(instances) + " instances x 2 methods, zero violations")};
}

// ---- criterion 8: trajectory equivalences ---------------------------------

CriterionResult criterion_equivalences() {
  Checker c;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    int K = seed == 0 ? 50 : 10 + static_cast<int>(seed) * 7;
    int d = seed == 0 ? 50 : 8;
    auto p = builtin_problem(seed % 2 ? "least-squares" : "quadratic-random", d, seed);
    Eigen::VectorXd x0 = RandomStream(seed).normal_vector(d);
    auto s = random_schedule(K, 600 + seed, 0.1, 0.9);
    InexactGradientOracle oracle(p, ErrorPolicy::RandomUnitSphere,
                                 InexactnessSchedule::constant(0.02, K), seed + 1);

    auto tg = run_igogm(p, oracle, s, K, x0);
    auto to = run_igfo(p, theta_ogm(s), K, tg.e, x0);
    auto tf = run_igfgm(p, oracle, s, K, x0);
    auto tff = run_igfo(p, theta_fgm(s), K, tf.e, x0);
    for (int k = 0; k <= K; ++k) {
      double sg = std::fmax(1.0, tg.x[k].norm());
      c.expect((to.x[k] - tg.x[k]).norm() / sg <= 1e-8,
               "igogm/igfo deviation at seed " + std::to_string(seed) + " k=" +
                   std::to_string(k));
      double sf = std::fmax(1.0, tf.x[k].norm());
      c.expect((tff.x[k] - tf.x[k]).norm() / sf <= 1e-8,
               "igfgm/igfo deviation at seed " + std::to_string(seed) + " k=" +
                   std::to_string(k));
    }

    // iSTM vs iFGM on the alpha_k^2 = A_k stepsize
    auto sl = schedule_from_lambda(std::vector<double>(K + 1, 1.0), K + 1);
    std::vector<double> alpha(K + 2);
    for (int k = 0; k <= K + 1; ++k) alpha[k] = sl.alpha[k];
    auto ts = run_istm(p, oracle, alpha, K, FeasibleSet::whole_space(), x0);
    auto tfgm = run_ifgm(p, oracle, alpha, K, FeasibleSet::whole_space(), x0);
    for (int k = 0; k <= K; ++k) {
      double sy = std::fmax(1.0, tfgm.y[k + 1].norm());
      c.expect((ts.y[k] - tfgm.y[k + 1]).norm() / sy <= 1e-10,
               "istm/ifgm y deviation at seed " + std::to_string(seed) + " k=" +
                   std::to_string(k));
    }
  }
  return {8, "trajectory equivalences", c.ok,
          c.detail("igogm==igfo(theta_ogm), igfgm==igfo(theta_fgm) <= 1e-8; istm==ifgm <= 1e-10")};
}

// ---- criterion 9: scheduler ------------------------------------------------

CriterionResult criterion_scheduler() {
  Checker c;
  auto exp_model = EffortModel::exponential(1.0, std::exp(1.0));
  double prev_ratio = 0.0;
  std::vector<double> eta_by_c2;
  for (int K = 10; K <= 100; K += 10) {
    auto sched = schedule_ogm_a(4.0, K);
    auto u = u_igogm(sched, 1.0);
    double AK = sched.A[K];

    for (double c2 : {0.5, 1.0, 2.0, 4.0}) {
      auto model = EffortModel::power_law(1.0, c2);
      auto opt = optimal_b_powerlaw(u, 1.0, 1.0, AK, model);
      auto base = constant_b_baseline(u, 1.0, 1.0, AK, model);
      auto bis = solve_by_bisection(u, 1.0, 1.0, AK, model);

      KahanSum spend;
      for (int k = 0; k < K; ++k) spend.add(u[k] * opt.b_opt[k] * opt.b_opt[k]);
      c.expect(relative_error(spend.value(), opt.budget) <= 1e-10,
               "power budget not binding at K=" + std::to_string(K) + " c2=" + fmt(c2));
      for (int k = 0; k < K; ++k) {
        double res = model.h_inverse_grad(opt.b_opt[k]) +
                     2.0 * opt.lambda_dual * opt.b_opt[k] * u[k];
        c.expect(std::fabs(res) <= 1e-8 * opt.lambda_dual,
                 "power KKT residual at K=" + std::to_string(K) + " k=" + std::to_string(k));
        c.expect(relative_error(opt.b_opt[k], bis.b_opt[k]) <= 1e-8,
                 "closed form vs bisection at K=" + std::to_string(K) + " k=" +
                     std::to_string(k));
      }
      c.expect(opt.eta_total <= base.eta_total + 1e-12,
               "optimized worse than constant at K=" + std::to_string(K));
      if (K == 50) eta_by_c2.push_back(opt.eta_total);
      if (c2 == 1.0) {
        double ratio = base.eta_total / opt.eta_total;
        if (K > 10) {
          c.expect(ratio >= prev_ratio * (1.0 - 1e-9),
                   "improvement ratio not growing at K=" + std::to_string(K) + ": " +
                       fmt(ratio) + " < " + fmt(prev_ratio));
        }
        prev_ratio = ratio;
      }
    }

    auto eopt = optimal_b_exponential(u, 1.0, 1.0, AK, exp_model);
    auto ebase = constant_b_baseline(u, 1.0, 1.0, AK, exp_model);
    auto ebis = solve_by_bisection(u, 1.0, 1.0, AK, exp_model);
    KahanSum espend;
    for (int k = 0; k < K; ++k) espend.add(u[k] * eopt.b_opt[k] * eopt.b_opt[k]);
    c.expect(relative_error(espend.value(), eopt.budget) <= 1e-10,
             "exp budget not binding at K=" + std::to_string(K));
    for (int k = 0; k < K; ++k) {
      double res = exp_model.h_inverse_grad(eopt.b_opt[k]) +
                   2.0 * eopt.lambda_dual * eopt.b_opt[k] * u[k];
      c.expect(std::fabs(res) <= 1e-8 * eopt.lambda_dual,
               "exp KKT residual at K=" + std::to_string(K));
      c.expect(relative_error(eopt.b_opt[k], ebis.b_opt[k]) <= 1e-8,
               "exp closed form vs bisection at K=" + std::to_string(K));
    }
    c.expect(eopt.eta_total <= ebase.eta_total + 1e-12,
             "exp optimized worse than constant at K=" + std::to_string(K));
  }
  for (std::size_t i = 1; i < eta_by_c2.size(); ++i) {
    c.expect(eta_by_c2[i] < eta_by_c2[i - 1],
             "eta-total not decreasing in c2: " + fmt(eta_by_c2[i - 1]) + " -> " +
                 fmt(eta_by_c2[i]));
  }
  return {9, "inexactness scheduling optimality", c.ok,
          c.detail("KKT <= 1e-8, binding <= 1e-10, bisection agreement <= 1e-8, orderings")};
}

// ---- criterion 10: rate/error tradeoff -------------------------------------

CriterionResult criterion_tradeoff() {
  Checker c;
  const int K = 30;
  std::vector<double> a_grid{3.0, 4.0, 10.0, 100.0, 1e6};
  std::vector<Eigen::VectorXd> u_by_a;
  std::vector<double> tau_by_a;
  for (double a : a_grid) {
    auto s = schedule_ogm_a(a, K);
    u_by_a.push_back(u_igogm(s, 1.0));
    tau_by_a.push_back(1.0 / (4.0 * s.A[K]));
  }
  for (std::size_t i = 1; i < a_grid.size(); ++i) {
    c.expect(tau_by_a[i] > tau_by_a[i - 1], "tau not increasing at a=" + fmt(a_grid[i]));
    for (int k = 0; k < K; ++k) {
      c.expect(u_by_a[i][k] < u_by_a[i - 1][k],
               "u_k not decreasing at a=" + fmt(a_grid[i]) + " k=" + std::to_string(k));
    }
  }
  for (int Kb : {10, 25, 50, 75, 100}) {
    auto s = schedule_ogm_a(1e6, Kb);
    auto u = u_igogm(s, 1.0);
    KahanSum sum;
    for (int k = 0; k < Kb; ++k) sum.add(u[k]);
    double linear = 9.0 * Kb / 8.0;
    c.expect(sum.value() >= 0.5 * linear && sum.value() <= 2.0 * linear,
             "sum u at a=1e6 K=" + std::to_string(Kb) + " is " + fmt(sum.value()) +
                 ", linear reference " + fmt(linear));
  }
  return {10, "rate/error tradeoff across OGM-a", c.ok,
          c.detail("u_k decreasing and tau increasing in a; near-linear error growth at a=1e6")};
}

// ---- criterion 11: zero-order oracles --------------------------------------

CriterionResult criterion_zero_order() {
  Checker c;
  {  // equality case at b_f = 0
    const int d = 7;
    const double L = 2.0, l = 0.125;
    SmoothConvexProblem iso;
    iso.dimension = d;
    iso.lipschitz = L;
    iso.eval = [L](const Eigen::VectorXd& x) { return 0.5 * L * x.squaredNorm(); };
    iso.grad = [L](const Eigen::VectorXd& x) { return (L * x).eval(); };
    RandomStream rs(88);
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd x = rs.normal_vector(d);
      double err = (forward_fd_gradient(iso, x, l) - iso.grad(x)).norm();
      double want = std::sqrt(double(d)) * L * l / 2.0;
      c.expect(std::fabs(err - want) <= 1e-10,
               "FD equality case off by " + fmt(err - want));
    }
    const double b_f = 0.003;
    double bound = std::sqrt(double(d)) * L * l / 2.0 + 2.0 * std::sqrt(double(d)) * b_f / l;
    for (auto& noise : {sinusoidal_value_noise(b_f), uniform_value_noise(b_f, 5)}) {
      for (int trial = 0; trial < 40; ++trial) {
        Eigen::VectorXd x = rs.normal_vector(d);
        double err = (forward_fd_gradient(iso, x, l, noise) - iso.grad(x)).norm();
        c.expect(err <= bound + 1e-12, "FD noisy bound violated: " + fmt(err) + " > " +
                                           fmt(bound));
      }
    }
  }
  {  // Gaussian smoothing mean bias over 200 seeds
    const int d = 2;
    const double L = 1.0, l = 0.1, b_f = 0.001;
    SmoothConvexProblem iso;
    iso.dimension = d;
    iso.lipschitz = L;
    iso.eval = [L](const Eigen::VectorXd& x) { return 0.5 * L * x.squaredNorm(); };
    iso.grad = [L](const Eigen::VectorXd& x) { return (L * x).eval(); };
    auto noise = sinusoidal_value_noise(b_f);
    Eigen::VectorXd x(d);
    x << 0.4, -0.7;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    const int seeds = 200, n = 64;
    for (int sdd = 0; sdd < seeds; ++sdd) {
      mean += gaussian_smoothing_gradient(iso, x, l, n, noise, 4000 + sdd);
    }
    mean /= seeds;
    double bias = (mean - iso.grad(x)).norm();
    double bound = std::sqrt(double(d)) * L * l + std::sqrt(double(d)) * b_f / l;
    c.expect(bias <= bound, "smoothing bias " + fmt(bias) + " above " + fmt(bound));
  }
  return {11, "zero-order gradient estimators", c.ok,
          c.detail("FD equality case to 1e-10, noisy FD bound, smoothing bias over 200 seeds")};
}

// ---- criterion 12: interpolation checker ------------------------------------

CriterionResult criterion_interpolation() {
  Checker c;
  {  // equality case: exact zero on dyadic points
    const double L = 4.0;
    std::vector<InterpolationPoint> pts;
    for (int v : {-3, -1, 0, 2, 5}) {
      InterpolationPoint p;
      p.x = Eigen::VectorXd::Constant(3, double(v));
      p.g = L * p.x;
      p.f = 0.5 * L * p.x.squaredNorm();
      pts.push_back(p);
    }
    c.expect(interpolation_check(pts, L) == 0.0, "quadratic equality case not exactly zero");
    auto corrupted = pts;
    corrupted[1].f -= 1.0;
    c.expect(interpolation_check(corrupted, L) > 0.0, "corruption not detected");
  }
  for (const char* name :
       {"quadratic-random", "least-squares", "log-sum-exp", "quadratic-worstcase-ill"}) {
    const int d = 12, K = 15;
    auto p = builtin_problem(name, d, 321);
    Eigen::VectorXd x0 = *p.minimizer + RandomStream(11).unit_vector(d);
    auto s = random_schedule(K, 50, 0.1, 0.9);
    InexactGradientOracle oracle(p, ErrorPolicy::GradientAligned,
                                 InexactnessSchedule::constant(0.05, K), 31);
    auto t = run_igogm(p, oracle, s, K, x0);
    std::vector<InterpolationPoint> pts;
    for (int k = 0; k <= K; ++k) pts.push_back({t.x[k], t.g_true[k], t.f_value[k]});
    pts.push_back({*p.minimizer, Eigen::VectorXd::Zero(d), *p.optimal_value});
    double R = (x0 - *p.minimizer).norm();
    double viol = interpolation_check(pts, p.lipschitz);
    c.expect(viol <= 1e-9 * bound_scale(p.lipschitz, R),
             std::string(name) + ": violation " + fmt(viol));
  }
  return {12, "smooth-convex interpolation checker", c.ok,
          c.detail("exact equality case, trajectory checks, corruption detected")};
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite() {
  std::vector<CriterionResult> out;
  out.push_back(criterion_constant_step());
  out.push_back(criterion_ogm4());
  out.push_back(criterion_p_identity());
  auto [r4, r6] = criterion_certificates();
  out.push_back(r4);
  out.push_back(criterion_degenerate());
  out.push_back(r6);
  out.push_back(criterion_empirical());
  out.push_back(criterion_equivalences());
  out.push_back(criterion_scheduler());
  out.push_back(criterion_tradeoff());
  out.push_back(criterion_zero_order());
  out.push_back(criterion_interpolation());
  return out;
}

int report_acceptance(const std::vector<CriterionResult>& results) {
  int failures = 0;
  for (const auto& r : results) {
    if (!r.passed) ++failures;
    std::printf("[%s] criterion %2d: %s - %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", results.size() - failures, results.size());
  return failures;
}

}  // namespace ipep
