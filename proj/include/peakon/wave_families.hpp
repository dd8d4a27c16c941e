#ifndef PEAKON_WAVE_FAMILIES_HPP_
#define PEAKON_WAVE_FAMILIES_HPP_

// Traveling waves u = f(x - ct) reduce to
//
//   (f')^2 - f^2 - 2a/(c - f) = b,
//
// a particle in the potential -f^2 - 2a/(c - f). Its critical points solve
// f (c - f)^2 + a = 0 with f != c, and the sign of a sorts the family:
// a = 0 peaked, a > 0 cusped, a < 0 smooth orbits inside a homoclinic loop.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "peakon/kernel.hpp"

namespace peakon {

enum class WaveKind { peaked, cusped, smooth_candidate };

inline const char* to_string(WaveKind k) {
  switch (k) {
    case WaveKind::peaked: return "peaked";
    case WaveKind::cusped: return "cusped";
    case WaveKind::smooth_candidate: return "smooth_candidate";
  }
  return "unknown";
}

struct WaveFamily {
  double a = 0.0;
  double b = std::numeric_limits<double>::quiet_NaN();  // not fixed by (a, c)
  double c = 0.0;
  std::vector<double> critical_points;  // increasing
  WaveKind family = WaveKind::peaked;
  /// a < 0 but |a| >= 4c^3/27: the two roots below c have merged or gone
  /// complex, so there is no loop to host smooth waves.
  bool degenerate = false;
};

namespace detail {

inline double critical_cubic(double f, double a, double c) { return f * (c - f) * (c - f) + a; }

inline double bisect_root(double lo, double hi, double a, double c) {
  double glo = critical_cubic(lo, a, c);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) return mid;
    const double gm = critical_cubic(mid, a, c);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  throw std::runtime_error("critical point bisection did not converge");
}

}  // namespace detail

inline WaveFamily classify(double a, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("wave speed must be positive");
  if (!std::isfinite(a)) throw std::invalid_argument("a must be finite");
  WaveFamily w;
  w.a = a;
  w.c = c;
  if (a == 0.0) {
    w.family = WaveKind::peaked;
    w.critical_points = {0.0};
    return w;
  }
  w.family = a > 0.0 ? WaveKind::cusped : WaveKind::smooth_candidate;
  const double fold = 4.0 * c * c * c / 27.0;
  if (a < 0.0 && -a >= fold * (1.0 - 1e-12)) w.degenerate = true;

  // Every real root lies within |a|^(1/3) + 2c of the origin, and the cubic
  // is monotone between its turning points c/3 and c, so each piece holds at
  // most one sign change.
  const double reach = std::max(10.0 * c, std::cbrt(std::abs(a)) + 2.0 * c);
  const double cuts[4] = {-reach, c / 3.0, c, reach};
  for (int i = 0; i < 3; ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    const double glo = detail::critical_cubic(lo, a, c);
    const double ghi = detail::critical_cubic(hi, a, c);
    if (glo == 0.0 && lo != c && i == 0) w.critical_points.push_back(lo);
    if (ghi == 0.0 && hi != c) {
      w.critical_points.push_back(hi);
    } else if (glo != 0.0 && (glo < 0.0) != (ghi < 0.0)) {
      w.critical_points.push_back(detail::bisect_root(lo, hi, a, c));
    }
  }
  std::sort(w.critical_points.begin(), w.critical_points.end());

  const std::size_t expected = a > 0.0 ? 1 : (w.degenerate ? 0 : 3);
  if (expected != 0 && w.critical_points.size() != expected) {
    throw std::runtime_error("critical point search found " + std::to_string(w.critical_points.size()) +
                             " roots, expected " + std::to_string(expected));
  }
  return w;
}

/// m cosh(pi - |x|) on the circle, speed m cosh(pi), b = -m^2.
struct PeakedMember {
  double trough = kTroughHeight;
  double c = kPeakHeight;
  double b = -kTroughHeight * kTroughHeight;

  double value(double x) const {
    const double r = std::abs(reduce_angle(x));
    return trough * std::cosh(pi - r);
  }
  /// Analytic slope away from the crest (x = 0 mod 2 pi).
  double slope(double x) const {
    const double r = reduce_angle(x);
    return -std::copysign(trough * std::sinh(pi - std::abs(r)), r);
  }
  double operator()(double x) const { return value(x); }
};

inline PeakedMember peaked_member(double m_phi) {
  if (!(m_phi > 0.0) || !std::isfinite(m_phi)) throw std::invalid_argument("peaked member needs m_phi > 0");
  return {m_phi, m_phi * std::cosh(pi), -m_phi * m_phi};
}

namespace detail {

inline double first_order_gap(double f, double df, double a, double b, double c) {
  if (f == c) throw std::domain_error("first-order form is singular where the profile equals c");
  return std::abs(df * df - f * f - 2.0 * a / (c - f) - b);
}

}  // namespace detail

/// Residual with the slope from central differences, step 1e-6.
inline double first_order_residual(const std::function<double(double)>& profile, double a, double b, double c,
                                   double x) {
  const double h = 1e-6;
  const double df = (profile(x + h) - profile(x - h)) / (2.0 * h);
  return detail::first_order_gap(profile(x), df, a, b, c);
}

/// Residual with the analytic slope of a peaked member.
inline double first_order_residual(const PeakedMember& member, double a, double b, double c, double x) {
  return detail::first_order_gap(member.value(x), member.slope(x), a, b, c);
}

}  // namespace peakon

#endif  // PEAKON_WAVE_FAMILIES_HPP_
