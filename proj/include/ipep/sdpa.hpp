#pragma once

#include <string>
#include <vector>

#include "ipep/schedules.hpp"

namespace ipep {

// One nonzero of a constraint matrix in SDPA sparse conventions:
// 1-based constraint (0 = the constant matrix F0), 1-based block, upper
// triangle only (i <= j).
struct SdpaEntry {
  int constraint = 0;
  int block = 0;
  int i = 0;
  int j = 0;
  double value = 0.0;

  friend bool operator==(const SdpaEntry&, const SdpaEntry&) = default;
};

// A problem in SDPA sparse form. The file encodes the pair
//   (file-dual)   min  c'y           s.t.  sum_t y_t F_t - F0 >= 0
//   (file-primal) max  tr(F0 Y)      s.t.  tr(F_t Y) = c_t,  Y >= 0.
struct SdpaProblem {
  std::vector<std::string> comments;  // emitted with a leading '"'
  int num_constraints = 0;
  std::vector<int> block_sizes;  // negative size = diagonal block
  std::vector<double> objective;
  std::vector<SdpaEntry> entries;
};

std::string sdpa_to_string(const SdpaProblem& p);
SdpaProblem sdpa_parse(const std::string& text);

enum class SdpTarget { PrimalP, DualD };
SdpTarget sdp_target_from_string(const std::string& name);

// Export the performance-estimation pair for the optimized-gradient family
// with the given schedule.
//
// DualD: variables y = (tau, v_{0,1..K-1,K}, v_{*,0..K}, u_0..u_{K-1}),
// objective tau R^2 + sum u_i b_i^2, blocks [PSD 2K+2 | y >= 0 | equality
// rows as +/- pairs]. The file-dual side is exactly the certificate problem.
//
// PrimalP: variable Y = blkdiag(G, F+, F-, slacks) with the K consecutive,
// K+1 optimality, 1 initial and K error-norm constraints; the file-primal
// side is exactly the worst-case estimation problem.
SdpaProblem export_sdp(const StepsizeSchedule& schedule, double L, double R,
                       const InexactnessSchedule& inexactness, SdpTarget target);

}  // namespace ipep
