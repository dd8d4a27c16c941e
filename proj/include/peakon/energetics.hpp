#ifndef PEAKON_ENERGETICS_HPP_
#define PEAKON_ENERGETICS_HPP_

// Energy functionals of u = phi + v and of the perturbation v, all integrated
// in the characteristic parameter with weight J:
//
//   E(f) = int (f^2 + f_x^2),     F(f) = int f (f^2 + f_x^2),
//   P = int phi (v^2 + v_x^2/2),  S = int phi' (v^2 + v_x^2/2).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "peakon/kernel.hpp"
#include "peakon/quadrature.hpp"
#include "peakon/state.hpp"

namespace peakon {

/// E(phi) = m^2 sinh(2 pi) = 2 M.
inline double phi_energy() { return 2.0 * kPeakHeight; }

/// F(phi) = m^3 (sinh(3 pi)/3 + sinh(pi)), from int cosh(y) cosh(2y) over [-pi, pi].
inline double phi_cubic_energy() {
  const double m = kTroughHeight;
  return m * m * m * (std::sinh(3.0 * pi) / 3.0 + std::sinh(pi));
}

struct EnergyReport {
  double t = 0.0;
  double E_v = 0.0;
  double F_v = 0.0;
  double P = 0.0;
  double S = 0.0;
  double E_u = 0.0;
  double F_u = 0.0;
  double v_peak = 0.0;
  double vbar = 0.0;
  double combo_linear = 0.0;     // 2P - M E(v)
  double combo_nonlinear = 0.0;  // 2P - M E(v) - [E(u) - E(phi)] E(v)/4 + E(v)^2/8 + F(v)
};

inline EnergyReport energies(const CharacteristicState& st, const Grid& grid) {
  grid.check_size(st.X);
  const std::size_t n = st.size();
  std::vector<double> ev(n), fv(n), p(n), s(n), eu(n), fu(n), mean(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = st.X[j];
    const double ph = phi_on_period(x);
    const double dph = dphi_on_period(x);
    const double v = st.V[j];
    const double vx = st.U[j];
    const double jac = st.J[j];
    const double q = v * v + 0.5 * vx * vx;
    const double u = ph + v;
    const double ux = dph + vx;
    ev[j] = (v * v + vx * vx) * jac;
    fv[j] = v * (v * v + vx * vx) * jac;
    p[j] = ph * q * jac;
    s[j] = dph * q * jac;
    eu[j] = (u * u + ux * ux) * jac;
    fu[j] = u * (u * u + ux * ux) * jac;
    mean[j] = v * jac;
  }
  EnergyReport r;
  r.t = st.t;
  r.E_v = grid.integrate(ev);
  r.F_v = grid.integrate(fv);
  r.P = grid.integrate(p);
  r.S = grid.integrate(s);
  r.E_u = grid.integrate(eu);
  r.F_u = grid.integrate(fu);
  r.vbar = grid.integrate(mean) / two_pi;
  r.v_peak = st.V.front();
  r.combo_linear = 2.0 * r.P - kPeakHeight * r.E_v;
  r.combo_nonlinear = r.combo_linear - 0.25 * (r.E_u - phi_energy()) * r.E_v + 0.125 * r.E_v * r.E_v + r.F_v;
  return r;
}

inline EnergyReport energies(const CharacteristicState& st) { return energies(st, Grid::from_nodes(st.s)); }

/// |x - x0| / |x0|, or the absolute change when |x0| < 1e-12.
inline double relative_change(double x0, double x) {
  const double d = std::abs(x - x0);
  return std::abs(x0) < 1e-12 ? d : d / std::abs(x0);
}

struct ConservationDrifts {
  double combo_linear = 0.0;
  double combo_nonlinear = 0.0;
  double E_u = 0.0;
  double F_u = 0.0;
  double vbar = 0.0;
};

/// Largest relative change from the first report, per conserved quantity.
inline ConservationDrifts check_conserved(std::span<const EnergyReport> series) {
  if (series.empty()) throw std::invalid_argument("empty energy series");
  ConservationDrifts d;
  const EnergyReport& r0 = series.front();
  for (const EnergyReport& r : series) {
    d.combo_linear = std::max(d.combo_linear, relative_change(r0.combo_linear, r.combo_linear));
    d.combo_nonlinear = std::max(d.combo_nonlinear, relative_change(r0.combo_nonlinear, r.combo_nonlinear));
    d.E_u = std::max(d.E_u, relative_change(r0.E_u, r.E_u));
    d.F_u = std::max(d.F_u, relative_change(r0.F_u, r.F_u));
    d.vbar = std::max(d.vbar, relative_change(r0.vbar, r.vbar));
  }
  return d;
}

}  // namespace peakon

#endif  // PEAKON_ENERGETICS_HPP_
