// Short tour: linear slope growth, the H1 law, nonlinear breaking of small
// data, and the traveling-wave families.

#include <cmath>
#include <cstdio>

#include "peakon/peakon.hpp"

using namespace peakon;

int main() {
  std::printf("peaked wave: M = %.12f, m = %.12f\n\n", kPeakHeight, kTroughHeight);

  const auto sine = InitialCondition::sine();
  std::printf("linear flow from v0 = sin x\n");
  std::printf("%6s %14s %14s %12s %14s\n", "t", "slope right", "slope left", "max|v|", "E(v)");
  const H1Law law = h1_law(sine);
  const Grid grid = Grid::chebyshev(512);
  for (double t : {0.0, 1.0, 2.0, 4.0, 8.0}) {
    const auto p = peak_slopes_exact(t, sine);
    const auto st = exact_state(t, sine, grid);
    double vmax = 0.0;
    for (double v : st.V) vmax = std::max(vmax, std::abs(v));
    std::printf("%6.1f %14.6e %14.6e %12.6f %14.6e\n", t, p.right, p.left, vmax, law.energy(t));
  }

  const double norm = std::sqrt(4.0 * pi * pi * pi / 15.0 + 2.0 * pi / 3.0);
  const auto small = InitialCondition::bump(-0.999 * 0.01 / (norm + 1.0));
  std::printf("\nnonlinear flow from v0 = %.5f x(2pi - x)/(2pi)\n", small.bump_amplitude());
  const auto run = integrate_nonlinear(small, 20.0, 1e-3, 257, {1e6, RecordPlan{{}, 1000}});
  const auto& r = run.report;
  std::printf("  slope at peak starts at %.4e\n", small.slope_right());
  std::printf("  |v_x| reaches 1 at t = %.4f\n", r.t_slope_one);
  std::printf("  %s at t = %.4f with max|v_x| = %.3e\n", r.status == RunStatus::blew_up ? "breaks" : "survives",
              r.t_stop, r.max_abs_slope);
  std::printf("  Riccati escape time with forcing bound %.3e: %.4f\n", r.forcing_bound,
              riccati_blowup_time(small.slope_right(), r.forcing_bound));

  std::printf("\ntraveling waves at c = 1\n");
  for (double a : {0.1, 0.0, -0.01, -0.2}) {
    const auto w = classify(a, 1.0);
    std::printf("  a = %6.3f  %-16s", a, to_string(w.family));
    for (double f : w.critical_points) std::printf(" %10.6f", f);
    std::printf("%s\n", w.degenerate ? "  (no loop)" : "");
  }
  return 0;
}
