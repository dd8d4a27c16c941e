#ifndef PEAKON_QUADRATURE_HPP_
#define PEAKON_QUADRATURE_HPP_

// Integration grids on the parameter interval [0, 2*pi].
//
// Every grid carries a composite fourth-order panel rule: the integral over
// panel [s_{j-1}, s_j] is the exact integral of the cubic interpolating the
// four nearest nodes (one-sided near the ends). Panels never straddle a node,
// so integrands that are smooth between nodes keep the full order.
//
// Full-interval weights are Clenshaw-Curtis on the cosine-stretched grid and
// the summed panel weights otherwise.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "peakon/kernel.hpp"

namespace peakon {

enum class GridKind { chebyshev, uniform, custom };

class Grid {
 public:
  /// s_j = pi (1 - cos(pi j / panels)), j = 0..panels; clusters at both peak images.
  static Grid chebyshev(std::size_t panels) {
    check_panels(panels);
    std::vector<double> s(panels + 1);
    for (std::size_t j = 0; j <= panels; ++j) {
      s[j] = pi * (1.0 - std::cos(pi * static_cast<double>(j) / static_cast<double>(panels)));
    }
    s.front() = 0.0;
    s.back() = two_pi;
    return Grid(std::move(s), GridKind::chebyshev);
  }

  static Grid uniform(std::size_t panels) {
    check_panels(panels);
    std::vector<double> s(panels + 1);
    for (std::size_t j = 0; j <= panels; ++j) {
      s[j] = two_pi * static_cast<double>(j) / static_cast<double>(panels);
    }
    s.back() = two_pi;
    return Grid(std::move(s), GridKind::uniform);
  }

  /// Arbitrary strictly increasing nodes from 0 to 2*pi. Recognises the
  /// cosine-stretched layout so that it keeps Clenshaw-Curtis weights.
  static Grid from_nodes(std::vector<double> s) {
    if (s.size() < 4) throw std::invalid_argument("grid needs at least 4 nodes");
    const std::size_t panels = s.size() - 1;
    bool cheb = true;
    for (std::size_t j = 0; j <= panels && cheb; ++j) {
      const double expect =
          pi * (1.0 - std::cos(pi * static_cast<double>(j) / static_cast<double>(panels)));
      cheb = std::abs(s[j] - expect) <= 1e-13;
    }
    return Grid(std::move(s), cheb ? GridKind::chebyshev : GridKind::custom);
  }

  GridKind kind() const { return kind_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t panels() const { return nodes_.size() - 1; }
  std::span<const double> nodes() const { return nodes_; }
  double node(std::size_t j) const { return nodes_[j]; }
  std::span<const double> weights() const { return weights_; }

  /// First node of the four-point stencil used on panel j (1 <= j <= panels).
  std::size_t stencil_start(std::size_t j) const {
    const std::size_t n = panels();
    const std::size_t lo = j >= 2 ? j - 2 : 0;
    return std::min(lo, n - 3);
  }

  const std::array<double, 4>& panel_weights(std::size_t j) const { return panel_weights_[j]; }

  double integrate(std::span<const double> f) const {
    check_size(f);
    double sum = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) sum += weights_[j] * f[j];
    return sum;
  }

  double integrate_panel(std::size_t j, std::span<const double> f) const {
    const std::size_t st = stencil_start(j);
    const auto& w = panel_weights_[j];
    return w[0] * f[st] + w[1] * f[st + 1] + w[2] * f[st + 2] + w[3] * f[st + 3];
  }

  /// Integral over [s_{j-1}, upper] of the panel-j interpolating cubic.
  double integrate_partial(std::size_t j, double upper, std::span<const double> f) const {
    const auto w = partial_weights(j, upper);
    const std::size_t st = stencil_start(j);
    return w[0] * f[st] + w[1] * f[st + 1] + w[2] * f[st + 2] + w[3] * f[st + 3];
  }

  /// Value at `x` of the panel-j interpolating cubic through samples f.
  double interpolate(std::size_t j, double x, std::span<const double> f) const {
    const std::size_t st = stencil_start(j);
    double sum = 0.0;
    for (std::size_t k = 0; k < 4; ++k) sum += lagrange(st, k, x) * f[st + k];
    return sum;
  }

  /// Panel j with s_{j-1} <= x <= s_j (x clamped to [0, 2*pi]).
  std::size_t panel_of(double x) const {
    auto it = std::upper_bound(nodes_.begin() + 1, nodes_.end() - 1, x);
    return static_cast<std::size_t>(it - nodes_.begin());
  }

  void check_size(std::span<const double> f) const {
    if (f.size() != nodes_.size()) {
      throw std::invalid_argument("sample length " + std::to_string(f.size()) +
                                  " does not match grid size " + std::to_string(nodes_.size()));
    }
  }

 private:
  Grid(std::vector<double> s, GridKind kind) : nodes_(std::move(s)), kind_(kind) {
    if (nodes_.front() != 0.0 || std::abs(nodes_.back() - two_pi) > 1e-12) {
      throw std::invalid_argument("grid must start at 0 and end at 2*pi");
    }
    nodes_.back() = two_pi;
    for (std::size_t j = 1; j < nodes_.size(); ++j) {
      if (!(nodes_[j] > nodes_[j - 1])) throw std::invalid_argument("grid nodes must increase strictly");
    }
    panel_weights_.resize(nodes_.size());
    for (std::size_t j = 1; j < nodes_.size(); ++j) {
      panel_weights_[j] = partial_weights(j, nodes_[j]);
    }
    if (kind_ == GridKind::chebyshev) {
      weights_ = clenshaw_curtis(panels());
    } else {
      weights_.assign(nodes_.size(), 0.0);
      for (std::size_t j = 1; j < nodes_.size(); ++j) {
        const std::size_t st = stencil_start(j);
        for (std::size_t k = 0; k < 4; ++k) weights_[st + k] += panel_weights_[j][k];
      }
    }
  }

  static void check_panels(std::size_t panels) {
    if (panels < 3) throw std::invalid_argument("grid needs at least 3 panels");
  }

  double lagrange(std::size_t st, std::size_t k, double x) const {
    double num = 1.0;
    double den = 1.0;
    for (std::size_t i = 0; i < 4; ++i) {
      if (i == k) continue;
      num *= x - nodes_[st + i];
      den *= nodes_[st + k] - nodes_[st + i];
    }
    return num / den;
  }

  // Two-point Gauss-Legendre is exact for the cubic basis.
  std::array<double, 4> partial_weights(std::size_t j, double upper) const {
    const std::size_t st = stencil_start(j);
    const double a = nodes_[j - 1];
    const double half = 0.5 * (upper - a);
    const double mid = 0.5 * (upper + a);
    const double g = half / std::sqrt(3.0);
    std::array<double, 4> w{};
    for (std::size_t k = 0; k < 4; ++k) {
      w[k] = half * (lagrange(st, k, mid - g) + lagrange(st, k, mid + g));
    }
    return w;
  }

  // Clenshaw-Curtis weights for x_k = cos(pi k / n) on [-1, 1], scaled to [0, 2*pi].
  static std::vector<double> clenshaw_curtis(std::size_t n) {
    std::vector<double> w(n + 1, 0.0);
    const double nn = static_cast<double>(n);
    if (n % 2 == 0) {
      w[0] = w[n] = 1.0 / (nn * nn - 1.0);
    } else {
      w[0] = w[n] = 1.0 / (nn * nn);
    }
    for (std::size_t i = 1; i < n; ++i) {
      const double theta = pi * static_cast<double>(i) / nn;
      double v = 1.0;
      if (n % 2 == 0) {
        for (std::size_t k = 1; k < n / 2; ++k) {
          const double kk = static_cast<double>(k);
          v -= 2.0 * std::cos(2.0 * kk * theta) / (4.0 * kk * kk - 1.0);
        }
        v -= std::cos(nn * theta) / (nn * nn - 1.0);
      } else {
        for (std::size_t k = 1; k <= (n - 1) / 2; ++k) {
          const double kk = static_cast<double>(k);
          v -= 2.0 * std::cos(2.0 * kk * theta) / (4.0 * kk * kk - 1.0);
        }
      }
      w[i] = 2.0 * v / nn;
    }
    for (double& x : w) x *= pi;
    return w;
  }

  std::vector<double> nodes_;
  GridKind kind_;
  std::vector<std::array<double, 4>> panel_weights_;
  std::vector<double> weights_;
};

}  // namespace peakon

#endif  // PEAKON_QUADRATURE_HPP_
