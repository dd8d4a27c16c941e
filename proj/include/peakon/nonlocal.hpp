#ifndef PEAKON_NONLOCAL_HPP_
#define PEAKON_NONLOCAL_HPP_

// Nonlocal operators of the perturbation dynamics,
//
//   Q[v](x) = 1/2 int phi'(x - y) q[v](y) dy,   P[v](x) = 1/2 int phi(x - y) q[v](y) dy,
//   q[v] = v^2 + v_x^2 / 2,
//
// evaluated either on an x-grid or on a characteristic grid, where
// y = X(sigma) and dy = J(sigma) dsigma.
//
// On [0, 2 pi] the kernels are sums of e^{+-(x - y)}, so each convolution
// splits into integrals of e^{+-y} f(y) below and above the target. Those are
// prefix and suffix sums of panel integrals, which places the kernel break
// exactly at the target and costs O(n) for all node targets together.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "peakon/initial_condition.hpp"
#include "peakon/kernel.hpp"
#include "peakon/quadrature.hpp"

namespace peakon {

struct ConvolutionValue {
  double phi;   // int phi(x - y) f(y) dy
  double dphi;  // int phi'(x - y) f(y) dy
};

class KernelConvolver {
 public:
  /// `positions` are the images X(sigma_j) of the grid nodes (pass the grid
  /// nodes themselves on an x-grid); `weighted` holds f(X(sigma_j)) J(sigma_j).
  void load(const Grid& grid, std::span<const double> positions, std::span<const double> weighted) {
    grid.check_size(positions);
    grid.check_size(weighted);
    grid_ = &grid;
    const std::size_t n = grid.size();
    pos_.assign(positions.begin(), positions.end());
    identity_ = std::equal(positions.begin(), positions.end(), grid.nodes().begin());
    grow_.resize(n);
    decay_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      grow_[j] = std::exp(pos_[j]) * weighted[j];
      decay_[j] = std::exp(-pos_[j]) * weighted[j];
    }
    prefix_grow_.assign(n, 0.0);
    prefix_decay_.assign(n, 0.0);
    suffix_grow_.assign(n, 0.0);
    suffix_decay_.assign(n, 0.0);
    panel_grow_.assign(n, 0.0);
    panel_decay_.assign(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
      panel_grow_[j] = grid.integrate_panel(j, grow_);
      panel_decay_[j] = grid.integrate_panel(j, decay_);
      prefix_grow_[j] = prefix_grow_[j - 1] + panel_grow_[j];
      prefix_decay_[j] = prefix_decay_[j - 1] + panel_decay_[j];
    }
    for (std::size_t j = n - 1; j-- > 0;) {
      suffix_grow_[j] = suffix_grow_[j + 1] + panel_grow_[j + 1];
      suffix_decay_[j] = suffix_decay_[j + 1] + panel_decay_[j + 1];
    }
  }

  std::size_t size() const { return pos_.size(); }

  ConvolutionValue at_node(std::size_t i) const {
    return combine(pos_[i], prefix_grow_[i], prefix_decay_[i], suffix_grow_[i], suffix_decay_[i]);
  }

  /// Any target in [0, 2 pi]; off-node targets split their panel at the
  /// parameter value whose image is x.
  ConvolutionValue at(double x) const {
    if (!(x >= 0.0 && x <= two_pi)) throw std::out_of_range("convolution target outside [0, 2 pi]");
    auto it = std::lower_bound(pos_.begin(), pos_.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - pos_.begin());
    if (hi < pos_.size() && pos_[hi] == x) return at_node(hi);
    const std::size_t j = std::max<std::size_t>(hi, 1);
    const double sigma = identity_ ? x : invert_on_panel(j, x);
    const double below_grow = grid_->integrate_partial(j, sigma, grow_);
    const double below_decay = grid_->integrate_partial(j, sigma, decay_);
    return combine(x, prefix_grow_[j - 1] + below_grow, prefix_decay_[j - 1] + below_decay,
                   suffix_grow_[j] + (panel_grow_[j] - below_grow),
                   suffix_decay_[j] + (panel_decay_[j] - below_decay));
  }

 private:
  // A = int_0^x e^{y-x} f, B = int_0^x e^{x-y} f, C = int_x^{2pi} e^{x-y} f, D = int_x^{2pi} e^{y-x} f.
  static ConvolutionValue combine(double x, double below_grow, double below_decay,
                                  double above_grow, double above_decay) {
    const double ex = std::exp(x);
    const double emx = std::exp(-x);
    const double a = emx * below_grow;
    const double b = ex * below_decay;
    const double c = ex * above_decay;
    const double d = emx * above_grow;
    const double epi = std::exp(pi);
    const double empi = std::exp(-pi);
    const double half_m = 0.5 * kTroughHeight;
    return {half_m * (epi * (a + c) + empi * (b + d)), half_m * (epi * (c - a) + empi * (b - d))};
  }

  double invert_on_panel(std::size_t j, double x) const {
    double lo = grid_->node(j - 1);
    double hi = grid_->node(j);
    for (int it = 0; it < 80 && hi - lo > 1e-16 * (1.0 + hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (grid_->interpolate(j, mid, pos_) < x) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }

  const Grid* grid_ = nullptr;
  bool identity_ = true;
  std::vector<double> pos_, grow_, decay_;
  std::vector<double> panel_grow_, panel_decay_;
  std::vector<double> prefix_grow_, prefix_decay_, suffix_grow_, suffix_decay_;
};

/// Samples of v and v_x on increasing positions covering [0, 2 pi]. When
/// `jacobian` is set the positions are images X(sigma) of the characteristic
/// parameters in `parameters`, and integrals are taken in sigma with weight J.
struct DensitySample {
  std::vector<double> nodes;
  std::vector<double> v;
  std::vector<double> vx;
  std::vector<double> jacobian;
  std::vector<double> parameters;

  bool characteristic_frame() const { return !jacobian.empty(); }

  void validate() const {
    const std::size_t n = nodes.size();
    if (n < 4) throw std::invalid_argument("density sample needs at least 4 nodes");
    if (v.size() != n || vx.size() != n) throw std::invalid_argument("density sample length mismatch");
    if (nodes.front() != 0.0 || std::abs(nodes.back() - two_pi) > 1e-12) {
      throw std::invalid_argument("density sample must span [0, 2 pi]");
    }
    for (std::size_t j = 1; j < n; ++j) {
      if (!(nodes[j] > nodes[j - 1])) throw std::invalid_argument("density sample nodes must increase");
    }
    if (characteristic_frame()) {
      if (jacobian.size() != n || parameters.size() != n) {
        throw std::invalid_argument("jacobian/parameter length mismatch");
      }
      for (double j : jacobian) {
        if (!(j > 0.0)) throw std::invalid_argument("jacobian must be strictly positive");
      }
    }
  }

  Grid grid() const { return Grid::from_nodes(characteristic_frame() ? parameters : nodes); }
};

inline std::vector<double> q_density(const DensitySample& sample) {
  if (sample.v.size() != sample.vx.size()) throw std::invalid_argument("density sample length mismatch");
  std::vector<double> q(sample.v.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    q[j] = sample.v[j] * sample.v[j] + 0.5 * sample.vx[j] * sample.vx[j];
  }
  return q;
}

namespace detail {

inline std::vector<ConvolutionValue> convolve_q(const DensitySample& sample,
                                                std::span<const double> targets) {
  sample.validate();
  if (targets.empty()) throw std::invalid_argument("no convolution targets");
  const Grid grid = sample.grid();
  std::vector<double> weighted = q_density(sample);
  if (sample.characteristic_frame()) {
    for (std::size_t j = 0; j < weighted.size(); ++j) weighted[j] *= sample.jacobian[j];
  }
  KernelConvolver conv;
  conv.load(grid, sample.nodes, weighted);
  std::vector<ConvolutionValue> out;
  out.reserve(targets.size());
  for (double x : targets) out.push_back(conv.at(x));
  return out;
}

}  // namespace detail

/// Q[v] at the targets (default: the sample nodes).
inline std::vector<double> q_operator(const DensitySample& sample, std::span<const double> targets) {
  const auto c = detail::convolve_q(sample, targets);
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = 0.5 * c[i].dphi;
  return out;
}
inline std::vector<double> q_operator(const DensitySample& sample) { return q_operator(sample, sample.nodes); }

/// P[v] at the targets (default: the sample nodes).
inline std::vector<double> p_operator(const DensitySample& sample, std::span<const double> targets) {
  const auto c = detail::convolve_q(sample, targets);
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = 0.5 * c[i].phi;
  return out;
}
inline std::vector<double> p_operator(const DensitySample& sample) { return p_operator(sample, sample.nodes); }

/// Samples a profile and its one-sided slopes on a uniform x-grid.
inline DensitySample sample_profile(const InitialCondition& v, std::size_t panels) {
  const Grid grid = Grid::uniform(panels);
  DensitySample s;
  s.nodes.assign(grid.nodes().begin(), grid.nodes().end());
  s.v.resize(s.nodes.size());
  s.vx.resize(s.nodes.size());
  for (std::size_t j = 0; j < s.nodes.size(); ++j) {
    s.v[j] = v.value(s.nodes[j]);
    s.vx[j] = v.slope_on_period(s.nodes[j]);
  }
  return s;
}

/// Left minus right side of
///   [v(0) - v(x)] phi'(x) - (phi' * phi v)(x) - 1/2 (phi' * phi' v_x)(x)
///     = phi(x) int_0^x v - 1/2 m^2 sinh(x) int_T v,
/// for x in [-pi, pi], convolutions by quadrature on `nodes` uniform panels.
inline double lemma0_gap(const InitialCondition& v, double x, std::size_t nodes) {
  if (!(x >= -pi && x <= pi)) throw std::out_of_range("identity holds for x in [-pi, pi]");
  const Grid grid = Grid::uniform(nodes);
  const auto y = grid.nodes();
  std::vector<double> phi_v(y.size());
  std::vector<double> dphi_vx(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    phi_v[j] = phi_on_period(y[j]) * v.value(y[j]);
    dphi_vx[j] = dphi_on_period(y[j]) * v.slope_on_period(y[j]);
  }
  const double target = x < 0.0 ? x + two_pi : x;
  KernelConvolver conv;
  conv.load(grid, y, phi_v);
  const double first = conv.at(target).dphi;
  conv.load(grid, y, dphi_vx);
  const double second = conv.at(target).dphi;
  const auto k = phi_eval(x);
  const double lhs = (v.at_peak() - v.value(x)) * k.derivative - first - 0.5 * second;
  const double m2 = kTroughHeight * kTroughHeight;
  const double rhs = k.value * v.antiderivative(x) - 0.5 * m2 * std::sinh(x) * two_pi * v.mean();
  return lhs - rhs;
}

}  // namespace peakon

#endif  // PEAKON_NONLOCAL_HPP_
