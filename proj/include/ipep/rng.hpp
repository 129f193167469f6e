#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace ipep {

// Deterministic, platform-independent random stream.
//
// The engine is std::mt19937_64 (fully specified by the standard) and all
// floating-point draws are derived from raw 64-bit words by hand, because the
// std::*_distribution classes are implementation-defined. Substreams are
// keyed by index with a splitmix64 hash, so the draws consumed at iteration k
// never depend on how many values earlier iterations used.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed);

  // Independent stream for a sub-task (e.g. one iteration index).
  RandomStream substream(std::uint64_t index) const;

  // Uniform on [0,1) with 53 random bits.
  double uniform01();
  double uniform(double lo, double hi);

  // Standard normal via Box-Muller on (0,1] uniforms.
  double normal();

  Eigen::VectorXd normal_vector(int d);
  // Uniform on the unit sphere in R^d.
  Eigen::VectorXd unit_vector(int d);

  std::uint64_t next_u64();

private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace ipep
