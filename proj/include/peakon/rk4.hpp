#ifndef PEAKON_RK4_HPP_
#define PEAKON_RK4_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

namespace peakon {

/// Classical fixed-step Runge-Kutta on a flat state vector. `Rhs` is called
/// as rhs(t, y, dydt) and must fully overwrite dydt.
class Rk4Stepper {
 public:
  template <class Rhs>
  void step(Rhs&& rhs, double t, double dt, std::vector<double>& y) {
    const std::size_t n = y.size();
    k1_.resize(n);
    k2_.resize(n);
    k3_.resize(n);
    k4_.resize(n);
    tmp_.resize(n);
    rhs(t, y, k1_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * dt * k1_[i];
    rhs(t + 0.5 * dt, tmp_, k2_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * dt * k2_[i];
    rhs(t + 0.5 * dt, tmp_, k3_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + dt * k3_[i];
    rhs(t + dt, tmp_, k4_);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += dt / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }
  }

 private:
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

/// Number of equal steps not longer than dt that cover `span`.
inline std::size_t step_count(double span, double dt) {
  if (span <= 0.0) return 0;
  const double r = span / dt;
  const double nearest = static_cast<double>(static_cast<long long>(r + 0.5));
  if (nearest >= 1.0 && std::abs(r - nearest) <= 1e-9 * nearest) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(r) + 1;
}

}  // namespace peakon

#endif  // PEAKON_RK4_HPP_
