#ifndef PEAKON_NONLINEAR_DYNAMICS_HPP_
#define PEAKON_NONLINEAR_DYNAMICS_HPP_

// Full perturbation dynamics along dX/dt = phi(X) - M + V - v_peak:
//
//   dV/dt = phi(X) W - pi m^2 vbar sinh X - Q[v](X)
//   dW/dt = phi'(X) W - pi m^2 vbar (cosh X - 1) + (V^2 - v_peak^2)/2 - P[v](X) + P[v](0)
//   dU/dt = phi'(X) (W - U) + phi(X) V - pi m^2 vbar cosh X - U^2/2 + V^2 - P[v](X)
//   dJ/dt = (phi'(X) + U) J
//
// Q and P are taken in the characteristic frame with weight J. The peak value
// moves by dv_peak/dt = -Q[v](0).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

// Boost 1.74 pchip calls isnan unqualified; math.h puts it in the global namespace.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include "peakon/initial_condition.hpp"
#include "peakon/kernel.hpp"
#include "peakon/linear_dynamics.hpp"
#include "peakon/nonlocal.hpp"
#include "peakon/quadrature.hpp"
#include "peakon/rk4.hpp"
#include "peakon/state.hpp"
#include "peakon/trajectory.hpp"

namespace peakon {

namespace detail {

/// Packed right side; `conv` and `density` are scratch reused across calls.
inline void nonlinear_rhs(const Grid& grid, double vbar, std::span<const double> y, std::span<double> dy,
                          KernelConvolver& conv, std::vector<double>& density) {
  const std::size_t n = y.size() / 5;
  const double k = forcing_scale() * vbar;
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
  density.resize(n);
  for (std::size_t j = 0; j < n; ++j) density[j] = (V[j] * V[j] + 0.5 * U[j] * U[j]) * J[j];
  conv.load(grid, std::span<const double>(X, n), density);
  const ConvolutionValue at_peak = conv.at_node(0);
  const double q0 = 0.5 * at_peak.dphi;
  const double p0 = 0.5 * at_peak.phi;
  const double vp = V[0];
  for (std::size_t j = 0; j < n; ++j) {
    const bool end = j == 0 || j == n - 1;
    const double x = end ? (j == 0 ? 0.0 : two_pi) : X[j];
    const double ph = phi_on_period(x);
    const double dph = dphi_on_period(x);
    const double ch = std::cosh(x);
    const double p = end ? p0 : 0.5 * conv.at_node(j).phi;
    if (end) {
      dX[j] = 0.0;
      dV[j] = -q0;
      dW[j] = 0.0;
    } else {
      const ConvolutionValue c = conv.at_node(j);
      dX[j] = ph - kPeakHeight + V[j] - vp;
      dV[j] = ph * W[j] - k * std::sinh(x) - 0.5 * c.dphi;
      dW[j] = dph * W[j] - k * (ch - 1.0) + 0.5 * (V[j] * V[j] - vp * vp) - p + p0;
    }
    dU[j] = dph * (W[j] - U[j]) + ph * V[j] - k * ch - 0.5 * U[j] * U[j] + V[j] * V[j] - p;
    dJ[j] = (dph + U[j]) * J[j];
  }
}

inline StateDerivative to_derivative(const std::vector<double>& dy, std::size_t n) {
  StateDerivative d;
  auto field = [&](std::size_t k, std::vector<double>& out) {
    out.assign(dy.begin() + static_cast<std::ptrdiff_t>(k * n),
               dy.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
  };
  field(0, d.X);
  field(1, d.V);
  field(2, d.W);
  field(3, d.U);
  field(4, d.J);
  d.v_peak = d.V.front();
  return d;
}

// P[v](0) of a packed state.
inline double peak_pressure(const Grid& grid, const std::vector<double>& y, KernelConvolver& conv,
                            std::vector<double>& density) {
  const std::size_t n = y.size() / 5;
  density.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double v = y[n + j];
    const double u = y[3 * n + j];
    density[j] = (v * v + 0.5 * u * u) * y[4 * n + j];
  }
  conv.load(grid, std::span<const double>(y.data(), n), density);
  return 0.5 * conv.at_node(0).phi;
}

}  // namespace detail

inline StateDerivative nl_rhs(const CharacteristicState& state) {
  const std::string bad = state.invariant_violation(1e-6);
  if (!bad.empty()) throw std::invalid_argument("nl_rhs: " + bad);
  const Grid grid = Grid::from_nodes(state.s);
  std::vector<double> y, dy;
  detail::pack(state, y);
  dy.resize(y.size());
  KernelConvolver conv;
  std::vector<double> density;
  detail::nonlinear_rhs(grid, state.vbar, y, dy, conv, density);
  return detail::to_derivative(dy, state.size());
}

/// The linear system's right side on the same state, for comparison.
inline StateDerivative linearized_rhs(const CharacteristicState& state) {
  std::vector<double> y, dy;
  detail::pack(state, y);
  dy.resize(y.size());
  linear_rhs(state.vbar, y, dy);
  return detail::to_derivative(dy, state.size());
}

enum class RunStatus { completed, blew_up };

/// Peak data recorded after every step.
struct PeakSample {
  double t = 0.0;
  double v_peak = 0.0;
  double pressure = 0.0;  // P[v](0)
  double u_plus = 0.0;    // U at s = 0
  double u_minus = 0.0;   // U at s = 2 pi
  double u_first = 0.0;   // U on the first interior characteristic
  double u_last = 0.0;    // U on the last interior characteristic
  double forcing = 0.0;   // M v_peak - pi m^2 vbar + v_peak^2 - P[v](0)
  double max_abs_slope = 0.0;
};

struct BlowupReport {
  RunStatus status = RunStatus::completed;
  double t_stop = 0.0;
  double max_abs_slope = 0.0;
  /// (t, U) on the first interior characteristic.
  std::vector<std::pair<double, double>> u_plus_history;
  /// First time max|U| >= 1, NaN if never.
  double t_slope_one = std::numeric_limits<double>::quiet_NaN();
  /// max(0, sup forcing) over the steps below the slope threshold. Only an
  /// upper bound enters the Riccati comparison; negative forcing speeds
  /// breaking up. The step that crosses the threshold is left out: its
  /// slopes are unresolved and the pressure there is noise.
  double forcing_bound = 0.0;
};

struct NonlinearOptions {
  double slope_threshold = 1e6;
  RecordPlan record;
};

struct NonlinearRun {
  Trajectory trajectory;
  BlowupReport report;
  std::vector<PeakSample> peak_series;
};

/// RK4 on the full system. Stops at t_end, when max|U| reaches the
/// threshold, or when a step produces non-finite values; in that case the
/// last finite state is kept and max_abs_slope is reported as infinite.
inline NonlinearRun integrate_nonlinear(const InitialCondition& ic, double t_end, double dt, std::size_t n_chars,
                                        const NonlinearOptions& opts = {}) {
  detail::check_run(t_end, dt, n_chars);
  if (!(opts.slope_threshold > 0.0)) throw std::invalid_argument("slope threshold must be positive");
  const Grid grid = Grid::chebyshev(n_chars - 1);
  CharacteristicState st = initial_state(ic, grid);
  const double vbar = st.vbar;
  const std::size_t n = st.size();

  NonlinearRun run;
  run.trajectory.push(st);
  std::vector<double> y, prev;
  detail::pack(st, y);

  KernelConvolver conv, probe;
  std::vector<double> density, probe_density;
  auto rhs = [&](double, const std::vector<double>& in, std::vector<double>& out) {
    detail::nonlinear_rhs(grid, vbar, in, out, conv, density);
  };

  BlowupReport& rep = run.report;
  auto sample = [&](double t) {
    PeakSample p;
    p.t = t;
    p.v_peak = y[n];
    p.pressure = detail::peak_pressure(grid, y, probe, probe_density);
    p.u_plus = y[3 * n];
    p.u_minus = y[4 * n - 1];
    p.u_first = y[3 * n + 1];
    p.u_last = y[4 * n - 2];
    p.forcing = kPeakHeight * p.v_peak - detail::forcing_scale() * vbar + p.v_peak * p.v_peak - p.pressure;
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::abs(y[3 * n + j]));
    p.max_abs_slope = m;
    run.peak_series.push_back(p);
    rep.u_plus_history.emplace_back(t, p.u_first);
    if (m < opts.slope_threshold) rep.forcing_bound = std::max(rep.forcing_bound, p.forcing);
    rep.max_abs_slope = m;
    if (m >= 1.0 && std::isnan(rep.t_slope_one)) rep.t_slope_one = t;
    return m;
  };
  sample(0.0);

  Rk4Stepper rk;
  const std::size_t stride = std::max<std::size_t>(opts.record.stride, 1);
  std::size_t count = 0;
  double t = 0.0;
  bool stopped = false;
  auto record = [&](double at) {
    detail::unpack(y, st);
    st.t = at;
    run.trajectory.push(st);
  };

  for (const auto& [seg_end, steps] : detail::segments(t_end, dt, opts.record)) {
    if (stopped) break;
    const double t0 = t;
    const double h = steps ? (seg_end - t0) / static_cast<double>(steps) : 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
      prev = y;
      const double t_prev = t;
      rk.step(rhs, t, h, y);
      const bool finite = std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
      if (!finite) {
        y = prev;
        t = t_prev;
        rep.status = RunStatus::blew_up;
        rep.max_abs_slope = std::numeric_limits<double>::infinity();
        if (run.trajectory.times.back() < t) record(t);
        stopped = true;
        break;
      }
      t = k == steps ? seg_end : t0 + h * static_cast<double>(k);
      ++count;
      const double m = sample(t);
      const bool hit = m >= opts.slope_threshold;
      const bool keep = hit || (opts.record.sample_times.empty() ? (count % stride == 0 || k == steps) : k == steps);
      if (keep) record(t);
      if (hit) {
        rep.status = RunStatus::blew_up;
        stopped = true;
        break;
      }
    }
  }
  rep.t_stop = t;
  return run;
}

/// Negative root of U - U^2/2 + f = 0 (the stable equilibrium for f >= 0).
inline double riccati_equilibrium(double forcing) {
  return -2.0 * forcing / (1.0 + std::sqrt(1.0 + 2.0 * forcing));
}

/// Escape time to -infinity of dU/dt = U - U^2/2 + f from U(0) = u0;
/// infinite when u0 is at or above the negative equilibrium.
inline double riccati_blowup_time(double u0, double forcing) {
  if (!(forcing >= 0.0)) throw std::invalid_argument("riccati forcing must be non-negative");
  const double r1 = riccati_equilibrium(forcing);
  const double r2 = 1.0 + std::sqrt(1.0 + 2.0 * forcing);
  if (!(u0 < r1)) return std::numeric_limits<double>::infinity();
  return 2.0 / (r2 - r1) * std::log((r2 - u0) / (r1 - u0));
}

/// Solution of the same Riccati equation at time t (-infinity past escape).
inline double riccati_supersolution(double u0, double forcing, double t) {
  if (!(forcing >= 0.0)) throw std::invalid_argument("riccati forcing must be non-negative");
  const double r1 = riccati_equilibrium(forcing);
  const double r2 = 1.0 + std::sqrt(1.0 + 2.0 * forcing);
  if (u0 == r1) return r1;
  if (u0 == r2) return r2;
  if (t >= riccati_blowup_time(u0, forcing)) return -std::numeric_limits<double>::infinity();
  const double R = (u0 - r1) / (u0 - r2) * std::exp(0.5 * (r2 - r1) * t);
  return (r1 - R * r2) / (1.0 - R);
}

struct SlopeForecast {
  std::vector<double> times;
  std::vector<double> u_plus;
  std::vector<double> u_minus;
  double residual_plus = 0.0;   // max |forecast - U on first interior characteristic|
  double residual_minus = 0.0;  // max |forecast - U on last interior characteristic|
};

/// Integrates the scalar peak-slope laws
///   dU+-/dt = +-U+- + M v_peak - pi m^2 vbar - (U+-)^2/2 + v_peak^2 - P[v](0)
/// with v_peak and P[v](0) taken from the series (linear in time between
/// samples). `linearized` drops the quadratic terms.
inline SlopeForecast peak_slope_forecast(double u_plus_0, double u_minus_0, const std::vector<PeakSample>& series,
                                         double vbar, bool linearized = false) {
  SlopeForecast out;
  if (series.empty()) return out;
  const double k = detail::forcing_scale() * vbar;
  auto drive = [&](double vp, double p) {
    return linearized ? kPeakHeight * vp - k : kPeakHeight * vp - k + vp * vp - p;
  };
  auto quad = [&](double u) { return linearized ? 0.0 : 0.5 * u * u; };
  double up = u_plus_0;
  double um = u_minus_0;
  auto push = [&](const PeakSample& s) {
    out.times.push_back(s.t);
    out.u_plus.push_back(up);
    out.u_minus.push_back(um);
    out.residual_plus = std::max(out.residual_plus, std::abs(up - s.u_first));
    out.residual_minus = std::max(out.residual_minus, std::abs(um - s.u_last));
  };
  push(series.front());
  for (std::size_t i = 1; i < series.size(); ++i) {
    const PeakSample& a = series[i - 1];
    const PeakSample& b = series[i];
    const double h = b.t - a.t;
    const double f0 = drive(a.v_peak, a.pressure);
    const double f1 = drive(b.v_peak, b.pressure);
    const double fm = 0.5 * (f0 + f1);
    auto fp = [&](double u, double f) { return u + f - quad(u); };
    auto fmn = [&](double u, double f) { return -u + f - quad(u); };
    auto rk = [&](auto&& g, double u) {
      const double k1 = g(u, f0);
      const double k2 = g(u + 0.5 * h * k1, fm);
      const double k3 = g(u + 0.5 * h * k2, fm);
      const double k4 = g(u + h * k3, f1);
      return u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };
    up = rk(fp, up);
    um = rk(fmn, um);
    push(b);
  }
  return out;
}

struct Reconstruction {
  std::vector<double> u;
  double peak_shift_rate = 0.0;  // da/dt = v_peak
};

/// u = phi + v on the comoving interval [0, 2 pi], with v interpolated
/// monotonically from the (X, V) samples.
inline Reconstruction reconstruct_u(const CharacteristicState& state, std::span<const double> x_grid) {
  for (double x : x_grid) {
    if (!(x >= 0.0 && x <= two_pi)) throw std::out_of_range("reconstruct_u: x outside [0, 2 pi]");
  }
  std::vector<double> xs(state.X.begin(), state.X.end());
  std::vector<double> vs(state.V.begin(), state.V.end());
  using boost::math::interpolators::pchip;
  const pchip<std::vector<double>> spline(std::move(xs), std::move(vs));
  Reconstruction r;
  r.u.reserve(x_grid.size());
  for (double x : x_grid) r.u.push_back(phi_on_period(x) + spline(x));
  r.peak_shift_rate = state.v_peak;
  return r;
}

}  // namespace peakon

#endif  // PEAKON_NONLINEAR_DYNAMICS_HPP_
