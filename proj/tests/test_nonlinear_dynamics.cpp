#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "peakon/energetics.hpp"
#include "peakon/linear_dynamics.hpp"
#include "peakon/nonlinear_dynamics.hpp"

using namespace peakon;

namespace {

const InitialCondition kMixed({0.2, 0.5, 0.0, -0.1}, {0.0, 0.7, 0.3}, 0.4);

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double g = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]));
  return g;
}

// Bump-dominated small data: v0 = -kappa psi with the whole H1 + slope budget
// delta spent on the right slope at the peak.
InitialCondition breaking_data(double delta) {
  const double norm = std::sqrt(4.0 * pi * pi * pi / 15.0 + 2.0 * pi / 3.0);
  return InitialCondition::bump(-0.999 * delta / (norm + 1.0));
}

}  // namespace

TEST(NonlinearRhs, ZeroStateReducesToCharacteristics) {
  const Grid g = Grid::chebyshev(64);
  const auto st = initial_state(InitialCondition::zero(), g);
  const auto d = nl_rhs(st);
  for (std::size_t j = 0; j < st.size(); ++j) {
    EXPECT_EQ(d.V[j], 0.0);
    EXPECT_EQ(d.W[j], 0.0);
    EXPECT_EQ(d.U[j], 0.0);
    EXPECT_NEAR(d.X[j], phi_on_period(st.s[j]) - kPeakHeight, 1e-15);
    EXPECT_NEAR(d.J[j], dphi_on_period(st.s[j]), 1e-15);
  }
  EXPECT_EQ(d.v_peak, 0.0);
}

TEST(NonlinearRhs, DiffersFromLinearAtSecondOrder) {
  const Grid g = Grid::chebyshev(256);
  auto gap = [&](double a) {
    const auto st = exact_state(0.8, kMixed.scaled(a), g);
    const auto n = nl_rhs(st);
    const auto l = linearized_rhs(st);
    return std::max({max_gap(n.V, l.V), max_gap(n.W, l.W), max_gap(n.U, l.U)});
  };
  const double r1 = gap(1e-2) / gap(5e-3);
  const double r2 = gap(5e-3) / gap(2.5e-3);
  EXPECT_NEAR(r1, 4.0, 0.05);
  EXPECT_NEAR(r2, 4.0, 0.05);
}

TEST(NonlinearRhs, PeakEndpoints) {
  const Grid g = Grid::chebyshev(512);
  const auto st = initial_state(kMixed, g);
  const auto d = nl_rhs(st);
  auto q = [&](double y) {
    const double v = kMixed.value(y);
    const double vx = kMixed.slope(y);
    return v * v + 0.5 * vx * vx;
  };
  const double q0 = 0.5 * oracle::convolve(oracle::dphi, q, 0.0);
  EXPECT_EQ(d.X.front(), 0.0);
  EXPECT_EQ(d.X.back(), 0.0);
  EXPECT_EQ(d.W.front(), 0.0);
  EXPECT_EQ(d.W.back(), 0.0);
  EXPECT_NEAR(d.V.front(), -q0, 1e-8);
  // fourth-order quadrature: doubling the grid cuts the gap sixteenfold
  const double coarse = std::abs(nl_rhs(initial_state(kMixed, Grid::chebyshev(256))).V.front() + q0);
  const double fine = std::abs(d.V.front() + q0);
  EXPECT_NEAR(coarse / fine, 16.0, 2.0);
  EXPECT_EQ(d.V.back(), d.V.front());
  EXPECT_EQ(d.v_peak, d.V.front());
}

TEST(NonlinearRhs, RejectsBrokenState) {
  const Grid g = Grid::chebyshev(32);
  auto st = initial_state(kMixed, g);
  st.J[4] = -1.0;
  EXPECT_THROW(nl_rhs(st), std::invalid_argument);
}

TEST(IntegrateNonlinear, ZeroData) {
  const auto run = integrate_nonlinear(InitialCondition::zero(), 2.0, 1e-3, 129, {1e6, RecordPlan{{1.0, 2.0}}});
  EXPECT_EQ(run.report.status, RunStatus::completed);
  EXPECT_DOUBLE_EQ(run.report.t_stop, 2.0);
  for (const auto& st : run.trajectory.states) {
    for (std::size_t j = 0; j < st.size(); ++j) {
      EXPECT_EQ(st.V[j], 0.0);
      EXPECT_NEAR(st.X[j], exact_characteristic(st.t, st.s[j]).X, 1e-8);
    }
  }
}

TEST(IntegrateNonlinear, CloseToLinearForSmallData) {
  // C measured once at 0.373 (eps = 1e-2, 257 characteristics); frozen with margin.
  const double eps = 1e-3;
  const auto ic = InitialCondition::sine(eps);
  const auto run = integrate_nonlinear(ic, 1.0, 1e-3, 257, {1e6, RecordPlan{{1.0}}});
  const auto& st = run.trajectory.back();
  double dev = 0.0;
  for (std::size_t j = 0; j < st.size(); ++j) dev = std::max(dev, std::abs(st.V[j] - exact_V(1.0, st.s[j], ic)));
  EXPECT_LT(dev, 0.5 * eps * eps);
  EXPECT_GT(dev, 0.1 * eps * eps);
}

TEST(IntegrateNonlinear, InvariantsAndConservation) {
  const auto ic = InitialCondition({0.0, 0.01}, {0.0, 0.01, 0.005}, 0.002);
  const auto run = integrate_nonlinear(ic, 2.0, 1e-3, 257, {1e6, RecordPlan{{}, 100}});
  ASSERT_EQ(run.report.status, RunStatus::completed);
  const Grid g = Grid::chebyshev(256);
  std::vector<EnergyReport> reports;
  for (const auto& st : run.trajectory.states) {
    EXPECT_TRUE(st.invariant_violation(1e-9).empty()) << st.invariant_violation(1e-9);
    reports.push_back(energies(st, g));
    EXPECT_NEAR(reports.back().vbar, ic.mean(), 1e-6);
  }
  const auto d = check_conserved(reports);
  EXPECT_LT(d.E_u, 1e-5);
  EXPECT_LT(d.F_u, 1e-5);
  EXPECT_LT(d.combo_nonlinear, 1e-5);
}

TEST(IntegrateNonlinear, JacobianMatchesDifferencedPositions) {
  auto err = [](std::size_t n) {
    const auto run = integrate_nonlinear(kMixed.scaled(0.05), 1.0, 1e-3, n, {1e6, RecordPlan{{1.0}}});
    const auto& st = run.trajectory.back();
    double e = 0.0;
    for (std::size_t j = 1; j + 1 < st.size(); ++j) {
      // three-point derivative on the non-uniform parameter grid
      const double h0 = st.s[j] - st.s[j - 1];
      const double h1 = st.s[j + 1] - st.s[j];
      const double d = (-h1 / (h0 * (h0 + h1))) * st.X[j - 1] + ((h1 - h0) / (h0 * h1)) * st.X[j] +
                       (h0 / (h1 * (h0 + h1))) * st.X[j + 1];
      e = std::max(e, std::abs(d - st.J[j]));
    }
    return e;
  };
  const double coarse = err(65);
  const double fine = err(129);
  EXPECT_LT(fine, 1e-2);
  EXPECT_GT(coarse / fine, 3.0);
}

TEST(IntegrateNonlinear, FourthOrderInTime) {
  const auto ic = kMixed.scaled(0.2);
  auto final_v = [&](double dt) {
    return integrate_nonlinear(ic, 1.0, dt, 65, {1e6, RecordPlan{{1.0}}}).trajectory.back().V;
  };
  const auto a = final_v(0.04);
  const auto b = final_v(0.02);
  const auto c = final_v(0.01);
  const double ratio = max_gap(a, b) / max_gap(b, c);
  EXPECT_GT(ratio, 13.0);
  EXPECT_LT(ratio, 19.0);
}

TEST(IntegrateNonlinear, Errors) {
  EXPECT_THROW(integrate_nonlinear(kMixed, 1.0, 0.0, 65), std::invalid_argument);
  EXPECT_THROW(integrate_nonlinear(kMixed, 1.0, 1e-3, 8), std::invalid_argument);
  EXPECT_THROW(integrate_nonlinear(kMixed, 1.0, 1e-3, 65, {0.0, {}}), std::invalid_argument);
}

TEST(Breaking, SmallDataBreaksBeforeLinearTime) {
  const auto ic = breaking_data(0.01);
  const double u0 = ic.slope_right();
  const auto run = integrate_nonlinear(ic, 20.0, 1e-3, 257, {1e6, RecordPlan{{}, 1000}});
  const auto& r = run.report;
  EXPECT_EQ(r.status, RunStatus::blew_up);
  EXPECT_GE(r.max_abs_slope, 1e6);
  ASSERT_FALSE(std::isnan(r.t_slope_one));
  // -log(C eps) with v0'(0+) = -2 C eps
  EXPECT_LT(r.t_slope_one, -std::log(-0.5 * u0));
  EXPECT_LT(r.t_slope_one, r.t_stop);
  const double bound = riccati_blowup_time(u0, r.forcing_bound);
  EXPECT_LE(r.t_stop, bound + 1e-3);
  // comparison with the supersolution along the whole run
  for (const auto& p : run.peak_series) {
    if (p.max_abs_slope >= 1e6) continue;  // the unresolved final step
    EXPECT_LE(p.u_plus, riccati_supersolution(u0, r.forcing_bound, p.t) + 1e-9) << p.t;
  }
  EXPECT_EQ(r.u_plus_history.size(), run.peak_series.size());
  EXPECT_EQ(run.trajectory.back().t, r.t_stop);
}

TEST(PeakSlopeForecast, ZeroPerturbation) {
  const auto run = integrate_nonlinear(InitialCondition::zero(), 1.0, 1e-2, 33);
  const auto f = peak_slope_forecast(0.0, 0.0, run.peak_series, 0.0);
  EXPECT_EQ(f.residual_plus, 0.0);
  EXPECT_EQ(f.residual_minus, 0.0);
}

TEST(PeakSlopeForecast, SelfConsistentForSmallSine) {
  const auto ic = InitialCondition::sine(0.05);
  const auto run = integrate_nonlinear(ic, 1.0, 1e-3, 257);
  const auto f = peak_slope_forecast(ic.slope_right(), ic.slope_left(), run.peak_series, ic.mean());
  EXPECT_LT(f.residual_plus, 5e-3);
  EXPECT_LT(f.residual_minus, 5e-3);
  // node s = 0 obeys the peak law exactly
  for (std::size_t i = 0; i < run.peak_series.size(); i += 100) {
    EXPECT_NEAR(f.u_plus[i], run.peak_series[i].u_plus, 1e-8);
  }
}

TEST(PeakSlopeForecast, LinearizedReproducesGrowthLaws) {
  std::vector<PeakSample> series;
  for (int i = 0; i <= 300; ++i) {
    PeakSample p;
    p.t = 0.01 * i;
    p.v_peak = kMixed.at_peak();
    series.push_back(p);
  }
  const auto f = peak_slope_forecast(kMixed.slope_right(), kMixed.slope_left(), series, kMixed.mean(), true);
  for (std::size_t i = 0; i < series.size(); i += 50) {
    const auto e = peak_slopes_exact(series[i].t, kMixed);
    EXPECT_NEAR(f.u_plus[i], e.right, 1e-9 * (1 + std::abs(e.right)));
    EXPECT_NEAR(f.u_minus[i], e.left, 1e-9);
  }
}

TEST(Riccati, EquilibriumNeverBreaks) {
  for (double f : {0.0, 0.1, 2.0}) {
    const double r = riccati_equilibrium(f);
    EXPECT_NEAR(r - 0.5 * r * r + f, 0.0, 1e-14);
    EXPECT_LE(r, 0.0);
    EXPECT_GE(r, -f);
    EXPECT_TRUE(std::isinf(riccati_blowup_time(r, f)));
    EXPECT_TRUE(std::isinf(riccati_blowup_time(0.5, f)));
    EXPECT_EQ(riccati_supersolution(r, f, 3.0), r);
  }
  EXPECT_THROW(riccati_blowup_time(-1.0, -0.1), std::invalid_argument);
}

TEST(Riccati, EscapeTimeAgainstIntegration) {
  const double t = riccati_blowup_time(-3.0, 0.0);
  EXPECT_NEAR(t, std::log(5.0 / 3.0), 1e-14);
  // integrate until U < -1e6, then add the 2/|U| tail
  double u = -3.0, s = 0.0;
  const double h = 1e-6;
  while (u > -1e6) {
    auto f = [](double x) { return x - 0.5 * x * x; };
    const double k1 = f(u), k2 = f(u + 0.5 * h * k1), k3 = f(u + 0.5 * h * k2), k4 = f(u + h * k3);
    u += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    s += h;
  }
  EXPECT_NEAR(s + 2.0 / std::abs(u), t, 1e-3);
}

TEST(Riccati, SupersolutionDominatesForcedSlope) {
  const double forcing = 0.1;
  const double u0 = 2.0 * riccati_equilibrium(forcing);
  const double T = riccati_blowup_time(u0, forcing);
  ASSERT_TRUE(std::isfinite(T));
  // dU/dt = U - U^2/2 + f(t) with f <= forcing escapes no later than T
  double u = u0, t = 0.0;
  const double h = 1e-5;
  auto g = [&](double tt, double x) { return x - 0.5 * x * x + forcing * std::cos(tt) * std::cos(tt); };
  while (u > -1e7 && t < 2 * T) {
    const double k1 = g(t, u), k2 = g(t + h / 2, u + h / 2 * k1), k3 = g(t + h / 2, u + h / 2 * k2),
                 k4 = g(t + h, u + h * k3);
    u += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    t += h;
    if (t < T - 1e-3) EXPECT_LE(u, riccati_supersolution(u0, forcing, t) + 1e-9);
  }
  EXPECT_LE(t, T);
  // the closed form solves its own equation
  const double a = 0.3 * T, d = 1e-6;
  const double ub = riccati_supersolution(u0, forcing, a);
  const double du = (riccati_supersolution(u0, forcing, a + d) - riccati_supersolution(u0, forcing, a - d)) / (2 * d);
  EXPECT_NEAR(du, ub - 0.5 * ub * ub + forcing, 1e-6);
  EXPECT_TRUE(std::isinf(riccati_supersolution(u0, forcing, T + 1.0)));
}

TEST(Reconstruction, ZeroPerturbationGivesPhi) {
  const Grid g = Grid::chebyshev(64);
  const auto st = initial_state(InitialCondition::zero(), g);
  std::vector<double> x;
  for (int i = 0; i <= 100; ++i) x.push_back(two_pi * i / 100.0);
  const auto r = reconstruct_u(st, x);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(r.u[i], phi_on_period(x[i]));
  EXPECT_EQ(r.peak_shift_rate, 0.0);
  // traveling wave: the crest of u = phi moves at u(crest) = M
  EXPECT_EQ(r.u.front(), kPeakHeight);
  EXPECT_THROW(reconstruct_u(st, std::vector<double>{-0.1}), std::out_of_range);
  EXPECT_THROW(reconstruct_u(st, std::vector<double>{7.0}), std::out_of_range);
}

TEST(Reconstruction, CrestStaysAtPeakImage) {
  const auto ic = InitialCondition::sine(0.05).with_bump(0.02);
  const auto run = integrate_nonlinear(ic, 1.5, 1e-3, 129, {1e6, RecordPlan{{0.5, 1.5}}});
  std::vector<double> x;
  for (int i = 0; i <= 400; ++i) x.push_back(two_pi * i / 400.0);
  for (const auto& st : run.trajectory.states) {
    const auto r = reconstruct_u(st, x);
    std::size_t best = 0;
    for (std::size_t i = 1; i < r.u.size(); ++i) {
      if (r.u[i] > r.u[best]) best = i;
    }
    EXPECT_TRUE(best == 0 || best == x.size() - 1) << st.t << " argmax at " << x[best];
    EXPECT_EQ(r.peak_shift_rate, st.v_peak);
    // interpolation reproduces the nodes
    const auto at_nodes = reconstruct_u(st, st.X);
    for (std::size_t j = 0; j < st.size(); ++j) EXPECT_NEAR(at_nodes.u[j], phi_on_period(st.X[j]) + st.V[j], 1e-12);
  }
}
