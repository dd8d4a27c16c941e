#ifndef PEAKON_STATE_HPP_
#define PEAKON_STATE_HPP_

// Solution along characteristics s in [0, 2 pi]: positions X, values V = v(X),
// antiderivatives W = w(X), slopes U = v_x(X) and stretching J = dX/ds.
// Node 0 is the right side of the peak, the last node its left side.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "peakon/initial_condition.hpp"
#include "peakon/kernel.hpp"
#include "peakon/quadrature.hpp"

namespace peakon {

struct CharacteristicState {
  double t = 0.0;
  std::vector<double> s, X, V, W, U, J;
  double v_peak = 0.0;
  double vbar = 0.0;

  std::size_t size() const { return s.size(); }

  /// Empty string when the invariants hold to `tol`, else the first violation.
  std::string invariant_violation(double tol = 1e-9) const {
    const std::size_t n = s.size();
    if (n < 2 || X.size() != n || V.size() != n || W.size() != n || U.size() != n || J.size() != n) {
      return "array length mismatch";
    }
    if (X.front() != 0.0 || X.back() != two_pi) return "peak images moved";
    for (std::size_t j = 1; j < n; ++j) {
      if (!(X[j] > X[j - 1])) return "X not strictly increasing at node " + std::to_string(j);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!(J[j] > 0.0)) return "J not positive at node " + std::to_string(j);
    }
    if (std::abs(W.front()) > tol) return "W(t,0) != 0";
    if (std::abs(W.back() - two_pi * vbar) > tol) return "W(t,2pi) != 2 pi vbar";
    if (V.front() != v_peak || V.back() != v_peak) return "V at peak images differs from v_peak";
    return {};
  }

  double max_abs_slope() const {
    double m = 0.0;
    for (double u : U) m = std::max(m, std::abs(u));
    return m;
  }

  double max_abs_value() const {
    double m = 0.0;
    for (double v : V) m = std::max(m, std::abs(v));
    return m;
  }

  bool finite() const {
    auto ok = [](const std::vector<double>& a) {
      return std::all_of(a.begin(), a.end(), [](double x) { return std::isfinite(x); });
    };
    return ok(X) && ok(V) && ok(W) && ok(U) && ok(J);
  }
};

inline CharacteristicState initial_state(const InitialCondition& ic, const Grid& grid) {
  CharacteristicState st;
  const std::size_t n = grid.size();
  st.s.assign(grid.nodes().begin(), grid.nodes().end());
  st.X = st.s;
  st.V.resize(n);
  st.W.resize(n);
  st.U.resize(n);
  st.J.assign(n, 1.0);
  st.v_peak = ic.at_peak();
  st.vbar = ic.mean();
  for (std::size_t j = 0; j < n; ++j) {
    st.V[j] = ic.value(st.s[j]);
    st.W[j] = ic.antiderivative(st.s[j]);
    st.U[j] = ic.slope_on_period(st.s[j]);
  }
  st.V.front() = st.V.back() = st.v_peak;
  st.W.front() = 0.0;
  st.W.back() = two_pi * st.vbar;
  return st;
}

/// Time derivative of the characteristic fields.
struct StateDerivative {
  std::vector<double> X, V, W, U, J;
  double v_peak = 0.0;
};

// Packing used by the time integrators: [X | V | W | U | J].
namespace detail {

inline void pack(const CharacteristicState& st, std::vector<double>& y) {
  const std::size_t n = st.size();
  y.resize(5 * n);
  std::copy(st.X.begin(), st.X.end(), y.begin());
  std::copy(st.V.begin(), st.V.end(), y.begin() + n);
  std::copy(st.W.begin(), st.W.end(), y.begin() + 2 * n);
  std::copy(st.U.begin(), st.U.end(), y.begin() + 3 * n);
  std::copy(st.J.begin(), st.J.end(), y.begin() + 4 * n);
}

inline void unpack(const std::vector<double>& y, CharacteristicState& st) {
  const std::size_t n = st.size();
  auto field = [&](std::size_t k, std::vector<double>& out) {
    out.assign(y.begin() + static_cast<std::ptrdiff_t>(k * n),
               y.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
  };
  field(0, st.X);
  field(1, st.V);
  field(2, st.W);
  field(3, st.U);
  field(4, st.J);
  st.v_peak = st.V.front();
}

}  // namespace detail
}  // namespace peakon

#endif  // PEAKON_STATE_HPP_
