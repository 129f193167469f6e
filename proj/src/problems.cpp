#include "ipep/problems.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <memory>

#include "ipep/errors.hpp"
#include "ipep/rng.hpp"

namespace ipep {

SmoothConvexProblem make_quadratic_random(int dimension, std::uint64_t seed) {
  if (dimension < 1) throw InvalidParameterError("dimension must be >= 1");
  RandomStream rs(seed);
  Eigen::MatrixXd G(dimension, dimension);
  for (int i = 0; i < dimension; ++i) G.row(i) = rs.normal_vector(dimension).transpose();
  // H = G G'/d + 0.1 I keeps the spectrum away from zero.
  auto H = std::make_shared<Eigen::MatrixXd>(
      (G * G.transpose() / dimension + 0.1 * Eigen::MatrixXd::Identity(dimension, dimension))
          .eval());
  auto b = std::make_shared<Eigen::VectorXd>(rs.normal_vector(dimension));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(*H);
  double L = eig.eigenvalues().maxCoeff();
  Eigen::VectorXd xstar = H->ldlt().solve(*b);
  double fstar = 0.5 * xstar.dot(*H * xstar) - b->dot(xstar);

  SmoothConvexProblem p;
  p.name = "quadratic-random";
  p.dimension = dimension;
  p.lipschitz = L;
  p.eval = [H, b](const Eigen::VectorXd& x) { return 0.5 * x.dot(*H * x) - b->dot(x); };
  p.grad = [H, b](const Eigen::VectorXd& x) { return (*H * x - *b).eval(); };
  p.minimizer = xstar;
  p.optimal_value = fstar;
  return p;
}

SmoothConvexProblem make_least_squares(int dimension, std::uint64_t seed, double offset_scale) {
  if (dimension < 1) throw InvalidParameterError("dimension must be >= 1");
  RandomStream rs(seed);
  const int rows = dimension + 5;
  auto Amat = std::make_shared<Eigen::MatrixXd>(rows, dimension);
  for (int i = 0; i < rows; ++i) Amat->row(i) = rs.normal_vector(dimension).transpose();
  Eigen::VectorXd xhat = offset_scale * rs.normal_vector(dimension);
  auto y = std::make_shared<Eigen::VectorXd>((*Amat * xhat).eval());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Amat->transpose() * *Amat);
  double L = eig.eigenvalues().maxCoeff();

  SmoothConvexProblem p;
  p.name = "least-squares";
  p.dimension = dimension;
  p.lipschitz = L;
  p.eval = [Amat, y](const Eigen::VectorXd& x) { return 0.5 * (*Amat * x - *y).squaredNorm(); };
  p.grad = [Amat, y](const Eigen::VectorXd& x) {
    return (Amat->transpose() * (*Amat * x - *y)).eval();
  };
  p.minimizer = xhat;
  p.optimal_value = 0.0;
  return p;
}

SmoothConvexProblem make_log_sum_exp(int dimension, std::uint64_t seed, double sigma) {
  if (dimension < 1) throw InvalidParameterError("dimension must be >= 1");
  if (!(sigma > 0)) throw InvalidParameterError("sigma must be > 0");
  RandomStream rs(seed);
  const int half = dimension + 3;
  auto Amat = std::make_shared<Eigen::MatrixXd>(2 * half, dimension);
  auto c = std::make_shared<Eigen::VectorXd>(2 * half);
  for (int i = 0; i < half; ++i) {
    Eigen::VectorXd row = rs.normal_vector(dimension);
    double off = rs.uniform(-0.5, 0.5);
    Amat->row(2 * i) = row.transpose();
    Amat->row(2 * i + 1) = -row.transpose();
    (*c)[2 * i] = off;
    (*c)[2 * i + 1] = off;  // mirrored rows share the offset => grad f(0) = 0
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Amat->transpose() * *Amat);
  double L = eig.eigenvalues().maxCoeff() / sigma;

  // Stable log-sum-exp and softmax around the running maximum.
  auto lse = [Amat, c, sigma](const Eigen::VectorXd& x) {
    Eigen::VectorXd t = (*Amat * x + *c) / sigma;
    double m = t.maxCoeff();
    return sigma * (m + std::log((t.array() - m).exp().sum()));
  };
  auto softgrad = [Amat, c, sigma](const Eigen::VectorXd& x) {
    Eigen::VectorXd t = (*Amat * x + *c) / sigma;
    double m = t.maxCoeff();
    Eigen::VectorXd w = (t.array() - m).exp();
    w /= w.sum();
    return (Amat->transpose() * w).eval();
  };

  SmoothConvexProblem p;
  p.name = "log-sum-exp";
  p.dimension = dimension;
  p.lipschitz = L;
  p.eval = lse;
  p.grad = softgrad;
  p.minimizer = Eigen::VectorXd::Zero(dimension);
  p.optimal_value = lse(Eigen::VectorXd::Zero(dimension));
  return p;
}

SmoothConvexProblem make_quadratic_worstcase_ill(int dimension) {
  if (dimension < 1) throw InvalidParameterError("dimension must be >= 1");
  auto T = std::make_shared<Eigen::MatrixXd>(Eigen::MatrixXd::Zero(dimension, dimension));
  for (int i = 0; i < dimension; ++i) {
    (*T)(i, i) = 2.0;
    if (i + 1 < dimension) {
      (*T)(i, i + 1) = -1.0;
      (*T)(i + 1, i) = -1.0;
    }
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(dimension);
  b[0] = 1.0;
  auto bp = std::make_shared<Eigen::VectorXd>(b);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(*T);
  double L = eig.eigenvalues().maxCoeff();
  Eigen::VectorXd xstar = T->ldlt().solve(b);
  double fstar = 0.5 * xstar.dot(*T * xstar) - b.dot(xstar);

  SmoothConvexProblem p;
  p.name = "quadratic-worstcase-ill";
  p.dimension = dimension;
  p.lipschitz = L;
  p.eval = [T, bp](const Eigen::VectorXd& x) { return 0.5 * x.dot(*T * x) - bp->dot(x); };
  p.grad = [T, bp](const Eigen::VectorXd& x) { return (*T * x - *bp).eval(); };
  p.minimizer = xstar;
  p.optimal_value = fstar;
  return p;
}

SmoothConvexProblem builtin_problem(const std::string& name, int dimension, std::uint64_t seed) {
  if (name == "quadratic-random") return make_quadratic_random(dimension, seed);
  if (name == "least-squares") return make_least_squares(dimension, seed);
  if (name == "log-sum-exp") return make_log_sum_exp(dimension, seed);
  if (name == "quadratic-worstcase-ill") return make_quadratic_worstcase_ill(dimension);
  throw InvalidParameterError("unknown builtin problem: " + name);
}

SmoothConvexProblem problem_from_config(const std::map<std::string, std::string>& kv) {
  auto require = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw InvalidParameterError("problem config missing key '" + key + "'");
    return it->second;
  };
  auto get = [&](const std::string& key, const std::string& def) {
    auto it = kv.find(key);
    return it == kv.end() ? def : it->second;
  };

  const std::string name = require("name");
  int dimension = 0;
  std::uint64_t seed = 0;
  try {
    dimension = std::stoi(require("dimension"));
    seed = std::stoull(get("seed", "0"));
  } catch (const std::exception&) {
    throw InvalidParameterError("problem config: dimension/seed must be integers");
  }

  if (name == "log-sum-exp") {
    return make_log_sum_exp(dimension, seed, std::stod(get("sigma", "1.0")));
  }
  if (name == "least-squares") {
    return make_least_squares(dimension, seed, std::stod(get("offset_scale", "1.0")));
  }
  return builtin_problem(name, dimension, seed);
}

}  // namespace ipep
