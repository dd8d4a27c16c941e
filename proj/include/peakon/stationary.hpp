#ifndef PEAKON_STATIONARY_HPP_
#define PEAKON_STATIONARY_HPP_

// Quadrature checks of the peaked wave phi against its own convolution
// identities: phi * 1 = 2 and -M phi + phi^2/2 + (3/4) phi * phi^2 = m^2.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "peakon/kernel.hpp"
#include "peakon/nonlocal.hpp"
#include "peakon/quadrature.hpp"

namespace peakon {

/// (phi * f)(x) with f sampled on `nodes` uniform panels of [0, 2 pi].
/// f may have a corner at 0 mod 2 pi; f(0) and f(2 pi) are sampled as given.
inline double convolve_with_phi(const std::function<double(double)>& f, double x, std::size_t nodes) {
  const Grid grid = Grid::uniform(nodes);
  std::vector<double> samples(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) samples[j] = f(grid.node(j));
  KernelConvolver conv;
  conv.load(grid, grid.nodes(), samples);
  const double r = reduce_angle(x);
  return conv.at(r < 0.0 ? r + two_pi : r).phi;
}

inline double stationary_residual(double x, std::size_t quadrature_nodes) {
  if (quadrature_nodes < 64) throw std::invalid_argument("stationary_residual needs >= 64 nodes");
  const double conv = convolve_with_phi([](double y) { return phi_on_period(y) * phi_on_period(y); }, x,
                                        quadrature_nodes);
  return stationary_gap(x, conv);
}

}  // namespace peakon

#endif  // PEAKON_STATIONARY_HPP_
