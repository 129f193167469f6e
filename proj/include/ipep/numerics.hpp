#pragma once

#include <cmath>
#include <cstddef>

namespace ipep {

// Kahan compensated accumulator. The u_k tail sums span several orders of
// magnitude for long horizons, so plain accumulation loses digits there.
class KahanSum {
public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

private:
  double s_ = 0.0;
  double c_ = 0.0;
};

inline double relative_error(double got, double want) {
  double denom = std::fmax(std::fabs(want), 1e-300);
  return std::fabs(got - want) / denom;
}

// Problem scale used by the empirical bound checks: max(1, L R^2).
inline double bound_scale(double lipschitz, double radius) {
  return std::fmax(1.0, lipschitz * radius * radius);
}

}  // namespace ipep
