#ifndef PEAKON_LINEAR_DYNAMICS_HPP_
#define PEAKON_LINEAR_DYNAMICS_HPP_

// Linearized perturbation dynamics around the peaked wave, along the
// characteristics dX/dt = phi(X) - M:
//
//   dV/dt = phi(X) W - pi m^2 vbar sinh X
//   dW/dt = phi'(X) W + pi m^2 vbar (1 - cosh X)
//   dU/dt = phi'(X) (W - U) + phi(X) V - pi m^2 vbar cosh X
//   dJ/dt = phi'(X) J
//
// together with the closed-form solution of the same system.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "peakon/energetics.hpp"
#include "peakon/initial_condition.hpp"
#include "peakon/kernel.hpp"
#include "peakon/parallel.hpp"
#include "peakon/quadrature.hpp"
#include "peakon/rk4.hpp"
#include "peakon/state.hpp"
#include "peakon/trajectory.hpp"

namespace peakon {

struct CharacteristicPoint {
  double X;      // position
  double Xs;     // dX/ds
  double Y;      // d/ds log(dX/ds)
  double dY_ds;  // d/ds Y
};

/// Closed-form characteristic through s at time t >= 0, s in [0, 2 pi].
inline CharacteristicPoint exact_characteristic(double t, double s) {
  if (!(t >= 0.0)) throw std::invalid_argument("exact_characteristic needs t >= 0");
  if (!(s >= 0.0 && s <= two_pi)) throw std::out_of_range("characteristic parameter outside [0, 2 pi]");
  const double e = std::exp(-t);
  const double a = std::exp(s) * std::expm1(two_pi - s);
  const double b = std::expm1(s);
  const double near = a + e * b;
  const double far = a + std::exp(two_pi - t) * b;
  const double g = std::expm1(two_pi);
  CharacteristicPoint p{};
  if (s == 0.0) {
    p.X = 0.0;
  } else if (s == two_pi) {
    p.X = two_pi;
  } else {
    p.X = std::log(far / near);
  }
  p.Xs = g * g * std::exp(s - t) / (near * far);

  // Y written with half-angles so that no term grows like e^{2 pi}.
  const double A = pi - 0.5 * s;
  const double B = 0.5 * s;
  const double shA = std::sinh(A), chA = std::cosh(A);
  const double shB = std::sinh(B), chB = std::cosh(B);
  const double c = 2.0 * (std::cosh(pi) - 1.0);
  const double num = (1.0 - e) * (shA * chA + e * shB * chB);
  const double sum = shA + e * shB;
  const double den = sum * sum + c * e * shB * shA;
  const double dnum = 0.5 * (1.0 - e) * (e * std::cosh(2.0 * B) - std::cosh(2.0 * A));
  const double dden = 2.0 * sum * (-0.5 * chA + 0.5 * e * chB) + c * e * 0.5 * (chB * shA - shB * chA);
  p.Y = num / den;
  p.dY_ds = (dnum * den - num * dden) / (den * den);
  return p;
}

namespace detail {

inline double forcing_scale() { return pi * kTroughHeight * kTroughHeight; }

// Bracket of the W and V solutions: w0(s) - pi m^2 vbar (cosh s - 1)(1 - e^{-t}).
inline double linear_bracket(double t, double s, const InitialCondition& ic) {
  return ic.antiderivative(s) - forcing_scale() * ic.mean() * (std::cosh(s) - 1.0) * (-std::expm1(-t));
}

}  // namespace detail

inline double exact_W(double t, double s, const InitialCondition& ic) {
  if (s == 0.0) return 0.0;
  if (s == two_pi) return two_pi * ic.mean();
  return exact_characteristic(t, s).Xs * detail::linear_bracket(t, s, ic);
}

inline double exact_V(double t, double s, const InitialCondition& ic) {
  if (s == 0.0 || s == two_pi) return ic.at_peak();
  const auto p = exact_characteristic(t, s);
  const double decay = -std::expm1(-t);
  return ic.value(s) - detail::forcing_scale() * ic.mean() * std::sinh(s) * decay +
         detail::linear_bracket(t, s, ic) * p.Y;
}

struct PeakSlopes {
  double right;
  double left;
};

/// One-sided slopes of v at the peak.
inline PeakSlopes peak_slopes_exact(double t, const InitialCondition& ic) {
  if (!(t >= 0.0)) throw std::invalid_argument("peak_slopes_exact needs t >= 0");
  const double drive = kPeakHeight * ic.at_peak() - detail::forcing_scale() * ic.mean();
  return {std::exp(t) * ic.slope_right() + drive * std::expm1(t),
          std::exp(-t) * ic.slope_left() - drive * std::expm1(-t)};
}

/// v_x(t, X(t, s)) = dV/ds / Xs.
inline double exact_U(double t, double s, const InitialCondition& ic) {
  if (s == 0.0) return peak_slopes_exact(t, ic).right;
  if (s == two_pi) return peak_slopes_exact(t, ic).left;
  const auto p = exact_characteristic(t, s);
  const double k = detail::forcing_scale() * ic.mean();
  const double decay = -std::expm1(-t);
  const double bracket = detail::linear_bracket(t, s, ic);
  const double dbracket = ic.value(s) - k * std::sinh(s) * decay;
  const double dV = ic.slope(s) - k * std::cosh(s) * decay + dbracket * p.Y + bracket * p.dY_ds;
  return dV / p.Xs;
}

/// Closed-form state on the given characteristic grid.
inline CharacteristicState exact_state(double t, const InitialCondition& ic, const Grid& grid) {
  CharacteristicState st;
  const std::size_t n = grid.size();
  st.t = t;
  st.s.assign(grid.nodes().begin(), grid.nodes().end());
  st.X.resize(n);
  st.V.resize(n);
  st.W.resize(n);
  st.U.resize(n);
  st.J.resize(n);
  st.v_peak = ic.at_peak();
  st.vbar = ic.mean();
  parallel_for(
      n,
      [&](std::size_t j) {
        const double s = st.s[j];
        const auto p = exact_characteristic(t, s);
        st.X[j] = p.X;
        st.J[j] = p.Xs;
        st.W[j] = exact_W(t, s, ic);
        st.V[j] = exact_V(t, s, ic);
        st.U[j] = exact_U(t, s, ic);
      },
      256);
  return st;
}

/// Right side of the linear system in packed layout [X | V | W | U | J].
/// The peak images stay fixed and V, W keep their boundary values there.
inline void linear_rhs(double vbar, std::span<const double> y, std::span<double> dy) {
  const std::size_t n = y.size() / 5;
  const double k = detail::forcing_scale() * vbar;
  const double* X = y.data();
  const double* V = X + n;
  const double* W = V + n;
  const double* U = W + n;
  const double* J = U + n;
  double* dX = dy.data();
  double* dV = dX + n;
  double* dW = dV + n;
  double* dU = dW + n;
  double* dJ = dU + n;
  for (std::size_t j = 0; j < n; ++j) {
    const bool end = j == 0 || j == n - 1;
    const double x = end ? (j == 0 ? 0.0 : two_pi) : X[j];
    const double ph = phi_on_period(x);
    const double dph = dphi_on_period(x);
    const double ch = std::cosh(x);
    dX[j] = end ? 0.0 : ph - kPeakHeight;
    dV[j] = end ? 0.0 : ph * W[j] - k * std::sinh(x);
    dW[j] = end ? 0.0 : dph * W[j] + k * (1.0 - ch);
    dU[j] = dph * (W[j] - U[j]) + ph * V[j] - k * ch;
    dJ[j] = dph * J[j];
  }
}

/// RK4 on the linear system with n_chars characteristics on the
/// cosine-stretched grid.
inline Trajectory integrate_linear(const InitialCondition& ic, double t_end, double dt, std::size_t n_chars,
                                   const RecordPlan& plan = {}) {
  detail::check_run(t_end, dt, n_chars);
  const Grid grid = Grid::chebyshev(n_chars - 1);
  CharacteristicState st = initial_state(ic, grid);
  const double vbar = st.vbar;
  Trajectory traj;
  traj.push(st);
  std::vector<double> y;
  detail::pack(st, y);
  auto rhs = [vbar](double, const std::vector<double>& in, std::vector<double>& out) {
    linear_rhs(vbar, in, out);
  };
  Rk4Stepper rk;
  const std::size_t stride = std::max<std::size_t>(plan.stride, 1);
  std::size_t count = 0;
  double t = 0.0;
  for (const auto& [seg_end, steps] : detail::segments(t_end, dt, plan)) {
    const double t0 = t;
    const double h = steps ? (seg_end - t0) / static_cast<double>(steps) : 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
      const double t_prev = t;
      rk.step(rhs, t, h, y);
      t = k == steps ? seg_end : t0 + h * static_cast<double>(k);
      for (double v : y) {
        if (!std::isfinite(v)) throw IntegrationError("non-finite state in linear integration", t_prev);
      }
      ++count;
      const bool keep = plan.sample_times.empty() ? (count % stride == 0 || (k == steps)) : k == steps;
      if (keep) {
        detail::unpack(y, st);
        st.t = t;
        traj.push(st);
      }
    }
  }
  return traj;
}

/// Closed-form H^1 energy law E(t) = C_+ e^t + C_0 + C_- e^{-t}.
struct H1Law {
  double P0 = 0.0;
  double S0 = 0.0;
  double E0 = 0.0;
  double C1 = 0.0;  // M E - 2 P, conserved
  double C2 = 0.0;
  double C3 = 0.0;
  double S_plus = 0.0;
  double S_minus = 0.0;
  double C_plus = 0.0;
  double C_zero = 0.0;
  double C_minus = 0.0;

  double P(double t) const {
    return kPeakHeight * (-S_plus * std::exp(t) + S_minus * std::exp(-t) + C3);
  }
  double S(double t) const { return S_plus * std::exp(t) + S_minus * std::exp(-t); }
  double energy(double t) const { return (2.0 * P(t) + C1) / kPeakHeight; }
};

/// Builds the law from P, S, E of the initial profile, integrated on a
/// cosine-stretched grid with `panels` panels.
inline H1Law h1_law(const InitialCondition& ic, std::size_t panels = 512) {
  const Grid grid = Grid::chebyshev(panels);
  const EnergyReport r = energies(initial_state(ic, grid), grid);
  const double M = kPeakHeight;
  const double m2 = kTroughHeight * kTroughHeight;
  const double vbar = ic.mean();
  const double v0 = ic.at_peak();
  H1Law law;
  law.P0 = r.P;
  law.S0 = r.S;
  law.E0 = r.E_v;
  law.C1 = M * r.E_v - 2.0 * r.P;
  law.C2 = 2.0 * pi * pi * m2 * M * vbar * vbar + M * v0 * v0 - 2.0 * pi * m2 * vbar * v0;
  law.C3 = m2 * law.C1 / (2.0 * M) + law.C2;
  law.S_plus = 0.5 * (r.S - r.P / M + law.C3);
  law.S_minus = 0.5 * (r.S + r.P / M - law.C3);
  law.C_plus = -2.0 * law.S_plus;
  law.C_minus = 2.0 * law.S_minus;
  law.C_zero = 2.0 * law.C3 + law.C1 / M;
  return law;
}

inline double h1_forecast(const InitialCondition& ic, double t, std::size_t panels = 512) {
  return h1_law(ic, panels).energy(t);
}

}  // namespace peakon

#endif  // PEAKON_LINEAR_DYNAMICS_HPP_
