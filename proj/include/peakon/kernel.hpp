#ifndef PEAKON_KERNEL_HPP_
#define PEAKON_KERNEL_HPP_

// Periodic Green function of (1 - d^2/dx^2) phi = 2 delta_0 on the 2*pi circle:
//
//   phi(x) = cosh(pi - |x|) / sinh(pi),   x in [-pi, pi],
//
// extended periodically. phi is even, has a corner at x = 0 with
// phi'(0+) = -1, phi'(0-) = +1, and smooth minima at x = +-pi.

#include <cmath>
#include <numbers>

namespace peakon {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Peak height M = phi(0) = coth(pi); also the speed of the peaked wave.
inline const double kPeakHeight = 1.0 / std::tanh(pi);
/// Trough height m = phi(+-pi) = csch(pi).
inline const double kTroughHeight = 1.0 / std::sinh(pi);

struct GreenKernel {
  double peak_height = kPeakHeight;
  double trough_height = kTroughHeight;
};

/// Which one-sided limit to take where phi' jumps (x = 0 mod 2*pi).
/// `interior` gives the mean of the two limits, i.e. 0.
enum class Side { left, right, interior };

struct KernelValue {
  double value;
  double derivative;
};

/// Reduces x to [-pi, pi] with the IEEE remainder (ties to even).
inline double reduce_angle(double x) { return std::remainder(x, two_pi); }

inline KernelValue phi_eval(double x, Side side = Side::interior) {
  const double r = reduce_angle(x);
  const double a = std::abs(r);
  const double value = a == 0.0 ? kPeakHeight : kTroughHeight * std::cosh(pi - a);
  double derivative;
  if (r == 0.0) {
    derivative = side == Side::right ? -1.0 : side == Side::left ? 1.0 : 0.0;
  } else {
    derivative = -std::copysign(kTroughHeight * std::sinh(pi - a), r);
  }
  return {value, derivative};
}

inline double phi(double x) { return phi_eval(x).value; }

// On the characteristic frame x in [0, 2*pi] the peak sits at both ends, so
// phi(x) = m cosh(pi - x) with no modulus. The endpoints are pinned to M
// exactly so that 0 and 2*pi stay fixed points of dX/dt = phi(X) - M.

inline double phi_on_period(double x) {
  if (x <= 0.0 || x >= two_pi) return kPeakHeight;
  return kTroughHeight * std::cosh(pi - x);
}

/// phi' on [0, 2*pi]: right limit -1 at x = 0, left limit +1 at x = 2*pi.
inline double dphi_on_period(double x) {
  if (x <= 0.0) return -1.0;
  if (x >= two_pi) return 1.0;
  return -kTroughHeight * std::sinh(pi - x);
}

/// Closed form of (phi * phi^2)(x) for x in [0, 2*pi]:
///   m^2/3 [3 + 4 cosh(pi) cosh(pi - x) - cosh(2 pi - 2x)].
inline double phi_conv_phi_squared_exact(double x) {
  const double r = reduce_angle(x);
  const double y = r < 0.0 ? r + two_pi : r;
  const double m2 = kTroughHeight * kTroughHeight;
  return m2 / 3.0 *
         (3.0 + 4.0 * std::cosh(pi) * std::cosh(pi - y) - std::cosh(two_pi - 2.0 * y));
}

/// |-M phi + phi^2/2 + (3/4) conv - m^2| for a supplied value of (phi * phi^2)(x).
inline double stationary_gap(double x, double phi_conv_phi_squared) {
  const double p = phi(x);
  const double m2 = kTroughHeight * kTroughHeight;
  return std::abs(-kPeakHeight * p + 0.5 * p * p + 0.75 * phi_conv_phi_squared - m2);
}

}  // namespace peakon

#endif  // PEAKON_KERNEL_HPP_
