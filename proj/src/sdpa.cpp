#include "ipep/sdpa.hpp"

#include <Eigen/Dense>
#include <sstream>

#include "ipep/certificate.hpp"
#include "ipep/csv.hpp"
#include "ipep/errors.hpp"

namespace ipep {

std::string sdpa_to_string(const SdpaProblem& p) {
  std::string out;
  for (const auto& c : p.comments) out += "\"" + c + "\n";
  out += std::to_string(p.num_constraints) + "\n";
  out += std::to_string(p.block_sizes.size()) + "\n";
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b) {
    if (b) out += ' ';
    out += std::to_string(p.block_sizes[b]);
  }
  out += '\n';
  for (std::size_t t = 0; t < p.objective.size(); ++t) {
    if (t) out += ' ';
    out += format_double(p.objective[t]);
  }
  out += '\n';
  for (const auto& e : p.entries) {
    out += std::to_string(e.constraint) + " " + std::to_string(e.block) + " " +
           std::to_string(e.i) + " " + std::to_string(e.j) + " " + format_double(e.value) + "\n";
  }
  return out;
}

SdpaProblem sdpa_parse(const std::string& text) {
  SdpaProblem p;
  std::istringstream in(text);
  std::string line;
  int stage = 0;  // 0: m, 1: nblocks, 2: sizes, 3: objective, 4: entries
  int nblocks = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '"' || line[0] == '*') {
      p.comments.push_back(line.substr(1));
      continue;
    }
    std::istringstream ls(line);
    switch (stage) {
      case 0:
        ls >> p.num_constraints;
        stage = 1;
        break;
      case 1:
        ls >> nblocks;
        stage = 2;
        break;
      case 2: {
        int s;
        while (ls >> s) p.block_sizes.push_back(s);
        if (static_cast<int>(p.block_sizes.size()) != nblocks) {
          throw InvalidParameterError("sdpa parse: block size count mismatch");
        }
        stage = 3;
        break;
      }
      case 3: {
        double c;
        while (ls >> c) p.objective.push_back(c);
        if (static_cast<int>(p.objective.size()) != p.num_constraints) {
          throw InvalidParameterError("sdpa parse: objective length mismatch");
        }
        stage = 4;
        break;
      }
      default: {
        SdpaEntry e;
        if (ls >> e.constraint >> e.block >> e.i >> e.j >> e.value) {
          p.entries.push_back(e);
        } else {
          throw InvalidParameterError("sdpa parse: bad entry line: " + line);
        }
      }
    }
  }
  if (stage < 4) throw InvalidParameterError("sdpa parse: truncated input");
  return p;
}

SdpTarget sdp_target_from_string(const std::string& name) {
  if (name == "primal-P" || name == "primal") return SdpTarget::PrimalP;
  if (name == "dual-D" || name == "dual") return SdpTarget::DualD;
  throw InvalidParameterError("unknown SDP target: " + name);
}

namespace {

// Append the upper triangle of a symmetric matrix as entries of constraint t,
// 1-based block b.
void emit_symmetric(std::vector<SdpaEntry>& out, int t, int b, const Eigen::MatrixXd& M) {
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = i; j < M.cols(); ++j) {
      if (M(i, j) != 0.0) out.push_back({t, b, i + 1, j + 1, M(i, j)});
    }
  }
}

void emit_diag(std::vector<SdpaEntry>& out, int t, int b, int index0, double value) {
  if (value != 0.0) out.push_back({t, b, index0 + 1, index0 + 1, value});
}

SdpaProblem export_dual(const StepsizeSchedule& s, double L, double R,
                        const InexactnessSchedule& bsched) {
  const int K = s.horizon;
  GramIndexing idx{K};
  ThetaTable theta = theta_ogm(s);
  const int n_y = 3 * K + 2;  // tau | v (K) | v_* (K+1) | u (K)
  const int t_tau = 1;
  auto t_v = [&](int i) { return 2 + i; };           // i = 0..K-1
  auto t_vstar = [&](int i) { return 2 + K + i; };   // i = 0..K
  auto t_u = [&](int i) { return 3 + 2 * K + i; };   // i = 0..K-1

  SdpaProblem p;
  p.comments = {"performance-estimation dual certificate data",
                "y = (tau, v_{i,i+1} i=0..K-1, v_{*,i} i=0..K, u_i i=0..K-1)",
                "blocks: [M psd " + std::to_string(idx.dim()) + "] [y >= 0] [equality +/- pairs]",
                "K=" + std::to_string(K) + " L=" + format_double(L) + " R=" + format_double(R)};
  p.num_constraints = n_y;
  p.block_sizes = {idx.dim(), -n_y, -2 * (K + 1)};

  p.objective.assign(n_y, 0.0);
  p.objective[t_tau - 1] = R * R;
  for (int i = 0; i < K; ++i) p.objective[t_u(i) - 1] = bsched.b[i] * bsched.b[i];

  // Block 1: sum y_t F_t - F0 = M(y) >= 0, so F0 = -(1/2L) gK gK'.
  emit_diag(p.entries, 0, 1, idx.g(K), -1.0 / (2.0 * L));
  {
    Eigen::MatrixXd x0x0 = Eigen::MatrixXd::Zero(idx.dim(), idx.dim());
    x0x0(idx.x0(), idx.x0()) = 1.0;
    emit_symmetric(p.entries, t_tau, 1, x0x0);
  }
  for (int i = 0; i < K; ++i) {
    emit_symmetric(p.entries, t_v(i), 1, gram_interp_matrix(idx, i, i + 1, theta, L));
  }
  for (int i = 0; i <= K; ++i) {
    emit_symmetric(p.entries, t_vstar(i), 1, gram_interp_matrix(idx, -1, i, theta, L));
  }
  for (int i = 0; i < K; ++i) emit_diag(p.entries, t_u(i), 1, idx.e(i), 1.0);

  // Block 2: y >= 0.
  for (int t = 1; t <= n_y; ++t) emit_diag(p.entries, t, 2, t - 1, 1.0);

  // Block 3: the dual equality rows, one >=0 pair per objective coordinate j:
  //   row j:      +coef(y) + const_j  (const_K = 1 from the lone f_K term)
  //   row K+1+j:  -coef(y) - const_j
  // encoded via F0 entries -const_j and +const_j respectively.
  emit_diag(p.entries, 0, 3, K, -1.0);
  emit_diag(p.entries, 0, 3, (K + 1) + K, 1.0);
  for (int i = 0; i < K; ++i) {
    emit_diag(p.entries, t_v(i), 3, i, 1.0);
    emit_diag(p.entries, t_v(i), 3, i + 1, -1.0);
    emit_diag(p.entries, t_v(i), 3, (K + 1) + i, -1.0);
    emit_diag(p.entries, t_v(i), 3, (K + 1) + i + 1, 1.0);
  }
  for (int i = 0; i <= K; ++i) {
    emit_diag(p.entries, t_vstar(i), 3, i, -1.0);
    emit_diag(p.entries, t_vstar(i), 3, (K + 1) + i, 1.0);
  }
  return p;
}

SdpaProblem export_primal(const StepsizeSchedule& s, double L, double R,
                          const InexactnessSchedule& bsched) {
  const int K = s.horizon;
  GramIndexing idx{K};
  ThetaTable theta = theta_ogm(s);
  const int m = 3 * K + 2;  // K consecutive + (K+1) optimality + 1 initial + K error norms
  const int nG = idx.dim();
  // Y = blkdiag(G, F+, F-, slack); F is split into positive parts since the
  // objective-value row vector is sign-free.
  const int b_G = 1, b_Fp = 2, b_Fm = 3, b_slack = 4;

  SdpaProblem p;
  p.comments = {"worst-case performance estimation data (optimized-gradient family)",
                "Y = blkdiag(Gram G, F+, F-, slack); constraints: consecutive, optimality, "
                "initial, error-norm",
                "K=" + std::to_string(K) + " L=" + format_double(L) + " R=" + format_double(R)};
  p.num_constraints = m;
  p.block_sizes = {nG, -(K + 1), -(K + 1), -m};
  p.objective.assign(m, 0.0);

  // F0 = objective of the file-primal: max F f_K - (1/2L) tr(G gK gK').
  emit_diag(p.entries, 0, b_G, idx.g(K), -1.0 / (2.0 * L));
  emit_diag(p.entries, 0, b_Fp, K, 1.0);
  emit_diag(p.entries, 0, b_Fm, K, -1.0);

  int t = 1;
  for (int i = 0; i < K; ++i, ++t) {  // F(f_{i+1} - f_i) + tr(G A^{i,i+1}) + slack = 0
    emit_symmetric(p.entries, t, b_G, gram_interp_matrix(idx, i, i + 1, theta, L));
    emit_diag(p.entries, t, b_Fp, i + 1, 1.0);
    emit_diag(p.entries, t, b_Fp, i, -1.0);
    emit_diag(p.entries, t, b_Fm, i + 1, -1.0);
    emit_diag(p.entries, t, b_Fm, i, 1.0);
    emit_diag(p.entries, t, b_slack, t - 1, 1.0);
  }
  for (int i = 0; i <= K; ++i, ++t) {  // F f_i + tr(G A^{*,i}) + slack = 0
    emit_symmetric(p.entries, t, b_G, gram_interp_matrix(idx, -1, i, theta, L));
    emit_diag(p.entries, t, b_Fp, i, 1.0);
    emit_diag(p.entries, t, b_Fm, i, -1.0);
    emit_diag(p.entries, t, b_slack, t - 1, 1.0);
  }
  {  // tr(G x0 x0') + slack = R^2
    emit_diag(p.entries, t, b_G, idx.x0(), 1.0);
    emit_diag(p.entries, t, b_slack, t - 1, 1.0);
    p.objective[t - 1] = R * R;
    ++t;
  }
  for (int i = 0; i < K; ++i, ++t) {  // tr(G e_i e_i') + slack = b_i^2
    emit_diag(p.entries, t, b_G, idx.e(i), 1.0);
    emit_diag(p.entries, t, b_slack, t - 1, 1.0);
    p.objective[t - 1] = bsched.b[i] * bsched.b[i];
  }
  return p;
}

}  // namespace

SdpaProblem export_sdp(const StepsizeSchedule& schedule, double L, double R,
                       const InexactnessSchedule& inexactness, SdpTarget target) {
  if (!(L > 0)) throw InvalidParameterError("Lipschitz constant must be > 0");
  if (!(R > 0)) throw InvalidParameterError("initial radius must be > 0");
  if (inexactness.horizon() != schedule.horizon) {
    throw InvalidParameterError("inexactness horizon != schedule horizon");
  }
  return target == SdpTarget::DualD ? export_dual(schedule, L, R, inexactness)
                                    : export_primal(schedule, L, R, inexactness);
}

}  // namespace ipep
