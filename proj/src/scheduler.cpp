#include "ipep/scheduler.hpp"

#include <cmath>

#include "ipep/csv.hpp"
#include "ipep/errors.hpp"
#include "ipep/numerics.hpp"

namespace ipep {

EffortModel EffortModel::power_law(double c1, double c2) {
  if (!(c1 > 0) || !(c2 > 0)) throw InvalidParameterError("power law needs c1 > 0 and c2 > 0");
  EffortModel m;
  m.kind = Kind::PowerLaw;
  m.c1 = c1;
  m.c2 = c2;
  return m;
}

EffortModel EffortModel::exponential(double q1, double q2) {
  if (!(q1 > 0) || !(q2 > 1)) throw InvalidParameterError("exponential needs q1 > 0 and q2 > 1");
  EffortModel m;
  m.kind = Kind::Exponential;
  m.q1 = q1;
  m.q2 = q2;
  return m;
}

double EffortModel::h(double eta) const {
  return kind == Kind::PowerLaw ? c1 * std::pow(eta, -c2) : q1 * std::pow(q2, -eta);
}

double EffortModel::h_inverse(double b) const {
  if (!(b > 0)) throw InvalidParameterError("h_inverse needs b > 0");
  if (kind == Kind::PowerLaw) return std::pow(c1 / b, 1.0 / c2);
  if (b > q1 * (1.0 + 1e-12)) {
    throw InvalidParameterError("b = " + std::to_string(b) + " exceeds q1 = " +
                                std::to_string(q1) + ": effort would be negative");
  }
  return std::fmax(0.0, (std::log(q1) - std::log(b)) / std::log(q2));
}

double EffortModel::h_inverse_grad(double b) const {
  if (!(b > 0)) throw InvalidParameterError("h_inverse_grad needs b > 0");
  if (kind == Kind::PowerLaw) {
    return -std::pow(c1, 1.0 / c2) * std::pow(b, -(1.0 + c2) / c2) / c2;
  }
  return -1.0 / (b * std::log(q2));
}

namespace {

void check_inputs(const Eigen::VectorXd& u, double L, double R, double A_K) {
  if (u.size() < 1) throw InvalidParameterError("need at least one u coefficient");
  for (int k = 0; k < u.size(); ++k) {
    if (!(u[k] > 0)) {
      throw InvalidParameterError("u_" + std::to_string(k) + " must be > 0");
    }
  }
  if (!(L > 0) || !(R > 0) || !(A_K > 0)) {
    throw InvalidParameterError("L, R, A_K must be > 0");
  }
}

ScheduleSolution finish(Eigen::VectorXd b, double lambda_dual, double budget,
                        const EffortModel& model, bool clamped = false) {
  ScheduleSolution s;
  s.b_opt = std::move(b);
  s.lambda_dual = lambda_dual;
  s.budget = budget;
  s.clamped = clamped;
  s.eta.resize(s.b_opt.size());
  KahanSum total;
  for (int k = 0; k < s.b_opt.size(); ++k) {
    s.eta[k] = model.h_inverse(s.b_opt[k]);
    total.add(s.eta[k]);
  }
  s.eta_total = total.value();
  return s;
}

}  // namespace

ScheduleSolution optimal_b_exponential(const Eigen::VectorXd& u, double L, double R, double A_K,
                                       const EffortModel& model) {
  check_inputs(u, L, R, A_K);
  if (model.kind != EffortModel::Kind::Exponential) {
    throw InvalidParameterError("optimal_b_exponential needs an exponential model");
  }
  const int K = static_cast<int>(u.size());
  const double budget = L * R * R / (4.0 * A_K);
  Eigen::VectorXd b(K);
  bool clamp = false;
  for (int k = 0; k < K; ++k) {
    b[k] = std::sqrt(budget / (K * u[k]));
    if (b[k] > model.q1) clamp = true;
  }
  if (clamp) {
    // Interior solution invalid (some eta < 0): fall back to the bisection
    // solver, which pins those entries at eta = 0 and redistributes.
    return solve_by_bisection(u, L, R, A_K, model);
  }
  double lambda = 2.0 * K * A_K / (L * R * R * std::log(model.q2));
  return finish(std::move(b), lambda, budget, model);
}

ScheduleSolution optimal_b_powerlaw(const Eigen::VectorXd& u, double L, double R, double A_K,
                                    const EffortModel& model) {
  check_inputs(u, L, R, A_K);
  if (model.kind != EffortModel::Kind::PowerLaw) {
    throw InvalidParameterError("optimal_b_powerlaw needs a power-law model");
  }
  const int K = static_cast<int>(u.size());
  const double budget = L * R * R / (4.0 * A_K);
  const double c1r = std::pow(model.c1, 1.0 / model.c2);
  const double expo = (1.0 + 2.0 * model.c2) / (2.0 * model.c2);
  KahanSum usum;
  for (int k = 0; k < K; ++k) usum.add(std::pow(u[k], 1.0 / (1.0 + 2.0 * model.c2)));
  double lambda =
      c1r / (2.0 * model.c2) * std::pow(budget, -expo) * std::pow(usum.value(), expo);
  Eigen::VectorXd b(K);
  KahanSum spend;
  for (int k = 0; k < K; ++k) {
    b[k] = std::pow(2.0 * lambda * u[k] * model.c2 / c1r, -model.c2 / (1.0 + 2.0 * model.c2));
    spend.add(u[k] * b[k] * b[k]);
  }
  // Post-verify both optimality conditions before returning.
  for (int k = 0; k < K; ++k) {
    double residual = model.h_inverse_grad(b[k]) + 2.0 * lambda * b[k] * u[k];
    if (std::fabs(residual) > 1e-8 * lambda) {
      throw NumericalFailureError("power-law stationarity residual " +
                                      std::to_string(residual) + " out of tolerance",
                                  k);
    }
  }
  if (std::fabs(spend.value() - budget) > 1e-10 * budget) {
    throw NumericalFailureError("power-law budget not binding", K);
  }
  return finish(std::move(b), lambda, budget, model);
}

ScheduleSolution constant_b_baseline(const Eigen::VectorXd& u, double L, double R, double A_K,
                                     const EffortModel& model) {
  check_inputs(u, L, R, A_K);
  const double budget = L * R * R / (4.0 * A_K);
  KahanSum usum;
  for (int k = 0; k < u.size(); ++k) usum.add(u[k]);
  double bbar = std::sqrt(budget / usum.value());
  if (model.kind == EffortModel::Kind::Exponential && bbar > model.q1) {
    bbar = model.q1;  // never spend negative effort
  }
  return finish(Eigen::VectorXd::Constant(u.size(), bbar), 0.0, budget, model);
}

ScheduleSolution solve_by_bisection(const Eigen::VectorXd& u, double L, double R, double A_K,
                                    const EffortModel& model) {
  check_inputs(u, L, R, A_K);
  const int K = static_cast<int>(u.size());
  const double budget = L * R * R / (4.0 * A_K);

  // Stationarity gives b_k as a decreasing function of the multiplier; the
  // exponential model additionally caps b_k at q1 (eta >= 0).
  auto b_of_lambda = [&](double lam, int k) {
    double b;
    if (model.kind == EffortModel::Kind::PowerLaw) {
      double c1r = std::pow(model.c1, 1.0 / model.c2);
      b = std::pow(2.0 * lam * u[k] * model.c2 / c1r, -model.c2 / (1.0 + 2.0 * model.c2));
    } else {
      b = std::sqrt(1.0 / (2.0 * lam * u[k] * std::log(model.q2)));
      b = std::fmin(b, model.q1);
    }
    return b;
  };
  auto spend = [&](double lam) {
    KahanSum s;
    for (int k = 0; k < K; ++k) {
      double b = b_of_lambda(lam, k);
      s.add(u[k] * b * b);
    }
    return s.value();
  };

  // All-clamped spend is the most the exponential model can use; if even
  // that fits the budget the constraint is slack and zero effort is optimal.
  if (model.kind == EffortModel::Kind::Exponential) {
    KahanSum cap;
    for (int k = 0; k < K; ++k) cap.add(u[k] * model.q1 * model.q1);
    if (cap.value() <= budget) {
      return finish(Eigen::VectorXd::Constant(K, model.q1), 0.0, budget, model, true);
    }
  }

  double lo = 1e-300, hi = 1e300;
  for (int it = 0; it < 2000; ++it) {
    double mid = std::sqrt(lo * hi);
    (spend(mid) > budget ? lo : hi) = mid;
    if (hi / lo < 1.0 + 1e-15) break;
  }
  double lam = std::sqrt(lo * hi);
  Eigen::VectorXd b(K);
  bool clamped = false;
  for (int k = 0; k < K; ++k) {
    b[k] = b_of_lambda(lam, k);
    if (model.kind == EffortModel::Kind::Exponential && b[k] >= model.q1) clamped = true;
  }
  return finish(std::move(b), lam, budget, model, clamped);
}

double eta_complexity(const ScheduleSolution& solution, const EffortModel& model) {
  KahanSum total;
  for (int k = 0; k < solution.b_opt.size(); ++k) total.add(model.h_inverse(solution.b_opt[k]));
  return total.value();
}

std::string schedule_solution_to_csv(const Eigen::VectorXd& u, const ScheduleSolution& constant,
                                     const ScheduleSolution& optimal) {
  CsvWriter w({"k", "u_k", "b_const", "b_opt", "eta_const", "eta_opt"});
  for (int k = 0; k < u.size(); ++k) {
    w.row({static_cast<double>(k), u[k], constant.b_opt[k], optimal.b_opt[k], constant.eta[k],
           optimal.eta[k]});
  }
  double ratio = optimal.eta_total > 0 ? constant.eta_total / optimal.eta_total : 1.0;
  w.raw_row("eta_total_const=" + format_double(constant.eta_total) +
            ",eta_total_opt=" + format_double(optimal.eta_total) +
            ",improvement_ratio=" + format_double(ratio));
  return w.str();
}

}  // namespace ipep
