#ifndef PEAKON_INITIAL_CONDITION_HPP_
#define PEAKON_INITIAL_CONDITION_HPP_

// Perturbation profiles v0 on the circle:
//
//   v0(x) = sum_k a_k cos(k x) + sum_k b_k sin(k x) + beta * psi(x),
//
// where psi(x) = x (2 pi - x) / (2 pi) on [0, 2 pi], extended periodically.
// psi is continuous with psi(0) = 0 and one-sided slopes psi'(0+) = 1,
// psi'(0-) = psi'(2 pi-) = -1, so beta controls the slope jump at the peak.
// Coefficient index k is the wavenumber; sine_coeffs[0] is unused.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "peakon/kernel.hpp"

namespace peakon {

class InitialCondition {
 public:
  InitialCondition() = default;
  InitialCondition(std::vector<double> cosine_coeffs, std::vector<double> sine_coeffs,
                   double bump_amplitude = 0.0)
      : cos_(std::move(cosine_coeffs)), sin_(std::move(sine_coeffs)), bump_(bump_amplitude) {
    for (double c : cos_) check_finite(c);
    for (double c : sin_) check_finite(c);
    check_finite(bump_);
  }

  static InitialCondition zero() { return {}; }
  static InitialCondition sine(double amplitude = 1.0, std::size_t k = 1) {
    std::vector<double> b(k + 1, 0.0);
    b[k] = amplitude;
    return {{}, std::move(b)};
  }
  static InitialCondition cosine(double amplitude = 1.0, std::size_t k = 1) {
    std::vector<double> a(k + 1, 0.0);
    a[k] = amplitude;
    return {std::move(a), {}};
  }
  static InitialCondition bump(double amplitude) { return {{}, {}, amplitude}; }

  const std::vector<double>& cosine_coeffs() const { return cos_; }
  const std::vector<double>& sine_coeffs() const { return sin_; }
  double bump_amplitude() const { return bump_; }

  InitialCondition scaled(double factor) const {
    InitialCondition out = *this;
    for (double& c : out.cos_) c *= factor;
    for (double& c : out.sin_) c *= factor;
    out.bump_ *= factor;
    return out;
  }

  InitialCondition with_bump(double amplitude) const {
    InitialCondition out = *this;
    out.bump_ = amplitude;
    return out;
  }

  bool is_zero() const {
    for (double c : cos_) if (c != 0.0) return false;
    for (double c : sin_) if (c != 0.0) return false;
    return bump_ == 0.0;
  }

  double value(double x) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < cos_.size(); ++k) sum += cos_[k] * std::cos(kd(k) * x);
    for (std::size_t k = 1; k < sin_.size(); ++k) sum += sin_[k] * std::sin(kd(k) * x);
    if (bump_ != 0.0) {
      const double y = wrap(x);
      sum += bump_ * (y - y * y / two_pi);
    }
    return sum;
  }

  /// v0'(x); at x = 0 mod 2 pi the side selects the one-sided limit.
  double slope(double x, Side side = Side::interior) const {
    double sum = 0.0;
    for (std::size_t k = 1; k < cos_.size(); ++k) sum -= kd(k) * cos_[k] * std::sin(kd(k) * x);
    for (std::size_t k = 1; k < sin_.size(); ++k) sum += kd(k) * sin_[k] * std::cos(kd(k) * x);
    if (bump_ != 0.0) {
      const double y = wrap(x);
      double d;
      if (y == 0.0) {
        d = side == Side::right ? 1.0 : side == Side::left ? -1.0 : 0.0;
      } else {
        d = 1.0 - y / pi;
      }
      sum += bump_ * d;
    }
    return sum;
  }

  /// Slope on the characteristic frame: s = 0 is the right side of the peak,
  /// s = 2 pi the left side.
  double slope_on_period(double s) const {
    if (s <= 0.0) return slope(0.0, Side::right);
    if (s >= two_pi) return slope(0.0, Side::left);
    return slope(s);
  }

  /// w0(x) = integral of v0 from 0 to x, in closed form (any real x).
  double antiderivative(double x) const {
    double sum = cos_.empty() ? 0.0 : cos_[0] * x;
    for (std::size_t k = 1; k < cos_.size(); ++k) sum += cos_[k] * std::sin(kd(k) * x) / kd(k);
    for (std::size_t k = 1; k < sin_.size(); ++k) {
      sum += sin_[k] * (1.0 - std::cos(kd(k) * x)) / kd(k);
    }
    if (bump_ != 0.0) {
      const double periods = std::floor(x / two_pi);
      const double y = x - periods * two_pi;
      // one full period of psi integrates to 2 pi * (pi / 3)
      sum += bump_ * (periods * two_pi * pi / 3.0 + y * y / 2.0 - y * y * y / (6.0 * pi));
    }
    return sum;
  }

  double at_peak() const { return value(0.0); }
  double slope_right() const { return slope(0.0, Side::right); }
  double slope_left() const { return slope(0.0, Side::left); }
  /// Mean over the circle: a_0 + beta pi / 3.
  double mean() const { return (cos_.empty() ? 0.0 : cos_[0]) + bump_ * pi / 3.0; }

 private:
  static double kd(std::size_t k) { return static_cast<double>(k); }
  static double wrap(double x) {
    double y = std::fmod(x, two_pi);
    if (y < 0.0) y += two_pi;
    return y;
  }
  static void check_finite(double c) {
    if (!std::isfinite(c)) throw std::invalid_argument("initial condition coefficients must be finite");
  }

  std::vector<double> cos_;
  std::vector<double> sin_;
  double bump_ = 0.0;
};

}  // namespace peakon

#endif  // PEAKON_INITIAL_CONDITION_HPP_
