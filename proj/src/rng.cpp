#include "ipep/rng.hpp"

#include <cmath>

namespace ipep {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

RandomStream RandomStream::substream(std::uint64_t index) const {
  return RandomStream(splitmix64(seed_ ^ splitmix64(index + 1)));
}

std::uint64_t RandomStream::next_u64() { return gen_(); }

double RandomStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double RandomStream::normal() {
  // (0,1] to keep log() finite.
  double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Eigen::VectorXd RandomStream::normal_vector(int d) {
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v[i] = normal();
  return v;
}

Eigen::VectorXd RandomStream::unit_vector(int d) {
  Eigen::VectorXd v = normal_vector(d);
  double n = v.norm();
  while (n < 1e-12) {  // astronomically unlikely; redraw
    v = normal_vector(d);
    n = v.norm();
  }
  return v / n;
}

}  // namespace ipep
