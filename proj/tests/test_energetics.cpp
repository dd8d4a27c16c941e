#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "peakon/energetics.hpp"
#include "peakon/linear_dynamics.hpp"

using namespace peakon;

namespace {

const InitialCondition kMixed({0.2, 0.5, 0.0, -0.1}, {0.0, 0.7, 0.3}, 0.4);

}  // namespace

TEST(Energetics, PhiConstantsAgainstQuadrature) {
  auto e = [](double x) { return oracle::phi(x) * oracle::phi(x) + oracle::dphi(x) * oracle::dphi(x); };
  auto f = [&](double x) { return oracle::phi(x) * e(x); };
  EXPECT_NEAR(phi_energy(), oracle::gauss(e, 0.0, 2 * oracle::pi, 400), 1e-12);
  EXPECT_NEAR(phi_cubic_energy(), oracle::gauss(f, 0.0, 2 * oracle::pi, 400), 1e-12);
  EXPECT_NEAR(phi_energy(), kTroughHeight * kTroughHeight * std::sinh(two_pi), 1e-13);
}

TEST(Energetics, ZeroPerturbation) {
  const Grid g = Grid::chebyshev(256);
  const auto r = energies(initial_state(InitialCondition::zero(), g), g);
  EXPECT_EQ(r.E_v, 0.0);
  EXPECT_EQ(r.P, 0.0);
  EXPECT_NEAR(r.E_u, 2.0 * kPeakHeight, 1e-12);
  EXPECT_NEAR(r.F_u, phi_cubic_energy(), 1e-11);
  EXPECT_EQ(r.combo_linear, 0.0);
}

TEST(Energetics, ExpansionsAroundPhi) {
  const Grid g = Grid::chebyshev(512);
  const double m2 = kTroughHeight * kTroughHeight;
  for (double t : {0.0, 0.7, 2.0}) {
    for (const auto& ic : {kMixed, InitialCondition::sine(0.3), InitialCondition::cosine(-0.2).with_bump(0.1)}) {
      const auto st = exact_state(t, ic, g);
      const auto r = energies(st, g);
      EXPECT_NEAR(r.E_u - phi_energy() - 4.0 * r.v_peak - r.E_v, 0.0, 1e-10) << t;
      const double v0 = r.v_peak;
      const double f_expected = phi_cubic_energy() + 4.0 * kPeakHeight * v0 + 2.0 * pi * m2 * r.vbar + 2.0 * r.P +
                                2.0 * v0 * v0 + r.F_v;
      EXPECT_NEAR(r.F_u, f_expected, 1e-9 * (1 + std::abs(r.F_u))) << t;
      EXPECT_GE(r.E_v, 0.0);
      EXPECT_GT(r.P, 0.0);
      EXPECT_GE(r.E_u, 0.0);
    }
  }
}

TEST(Energetics, MeasuredMeanMatchesClosedForm) {
  const Grid g = Grid::chebyshev(256);
  const auto r = energies(exact_state(1.5, kMixed, g), g);
  EXPECT_NEAR(r.vbar, kMixed.mean(), 1e-12);
  EXPECT_EQ(r.t, 1.5);
}

TEST(Energetics, PandSObeyTheirLinearSystem) {
  const Grid g = Grid::chebyshev(512);
  const H1Law law = h1_law(kMixed, 512);
  const double h = 1e-4;
  for (double t : {0.5, 1.0, 2.0}) {
    const auto a = energies(exact_state(t - h, kMixed, g), g);
    const auto b = energies(exact_state(t + h, kMixed, g), g);
    const auto c = energies(exact_state(t, kMixed, g), g);
    const double scale = 1.0 + std::abs(c.S) + std::abs(c.P);
    EXPECT_NEAR((b.P - a.P) / (2 * h), -kPeakHeight * c.S, 1e-6 * scale) << t;
    EXPECT_NEAR((b.S - a.S) / (2 * h), -c.P / kPeakHeight + law.C3, 1e-6 * scale) << t;
    EXPECT_NEAR(c.S, law.S(t), 1e-9 * scale) << t;
    EXPECT_NEAR(c.P, law.P(t), 1e-9 * scale) << t;
  }
}

TEST(Energetics, CheckConserved) {
  EXPECT_THROW(check_conserved(std::vector<EnergyReport>{}), std::invalid_argument);
  EnergyReport r;
  r.combo_linear = 3.0;
  r.combo_nonlinear = -2.0;
  r.E_u = 2.0;
  r.F_u = 5.0;
  r.vbar = 0.0;
  const std::vector<EnergyReport> flat(4, r);
  const auto d = check_conserved(flat);
  EXPECT_EQ(d.combo_linear, 0.0);
  EXPECT_EQ(d.combo_nonlinear, 0.0);
  EXPECT_EQ(d.E_u, 0.0);
  EXPECT_EQ(d.F_u, 0.0);
  EXPECT_EQ(d.vbar, 0.0);
  auto moved = flat;
  moved[2].combo_linear = 3.3;
  moved[3].vbar = 1e-9;
  const auto e = check_conserved(moved);
  EXPECT_NEAR(e.combo_linear, 0.1, 1e-12);
  EXPECT_NEAR(e.vbar, 1e-9, 1e-20);
}

TEST(Energetics, LinearComboConservedAlongClosedForm) {
  const Grid g = Grid::chebyshev(512);
  std::vector<EnergyReport> reports;
  for (double t = 0.0; t <= 2.0; t += 0.25) reports.push_back(energies(exact_state(t, InitialCondition::sine(), g), g));
  EXPECT_LT(check_conserved(reports).combo_linear, 1e-6);
}
