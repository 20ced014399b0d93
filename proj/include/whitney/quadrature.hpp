#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "whitney/error.hpp"
#include "whitney/geometry.hpp"

namespace whitney {

/// One-dimensional rule on the reference interval [-1, 1].
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, exact for polynomials of degree <= 2n - 1.
/// Rules are computed once per n and cached.
const Rule1D& gauss_legendre(int n);

/// n >= 2 Chebyshev-Lobatto points cos(pi j / (n - 1)) on [-1, 1], ascending.
/// Endpoints are included; for n - 1 a divisor of m - 1 the n-point set is a
/// subset of the m-point set.
std::vector<double> chebyshev_lobatto(int n);

enum class QuadratureRule { gauss_legendre };

/// Resolution of every norm and integral evaluation.
///
/// `nodes_per_axis` drives the Gauss-Legendre rule used for p < inf; a single
/// entry is broadcast to every axis. `sup_points_per_axis` is the size of the
/// Chebyshev-Lobatto grid on which sup norms are taken.
struct QuadratureSpec {
  std::vector<int> nodes_per_axis{32};
  int sup_points_per_axis = 65;
  QuadratureRule rule = QuadratureRule::gauss_legendre;
  /// Gauss-Legendre nodes on each knot interval [m, m+1] of a B-spline weight.
  int bspline_nodes_per_knot = 16;
  /// Optional per-axis coordinates where the integrand is not smooth. Grids
  /// split each axis into panels at the breakpoints inside the box and share
  /// the node budget between panels in proportion to their length, with a
  /// small minimum per panel.
  std::vector<std::vector<double>> breakpoints;

  static QuadratureSpec uniform(int nodes, int sup_points = 65, int bspline_nodes = 16) {
    return QuadratureSpec{{nodes}, sup_points, QuadratureRule::gauss_legendre, bspline_nodes, {}};
  }

  int nodes(std::size_t axis) const {
    return nodes_per_axis.size() == 1 ? nodes_per_axis.front() : nodes_per_axis.at(axis);
  }
};

/// Per-axis node/weight lists mapped onto a box, iterated as a tensor product
/// in a fixed (last axis fastest) order.
class TensorGrid {
 public:
  /// Gauss-Legendre grid for integration over `box`.
  static TensorGrid gauss(const Box& box, const QuadratureSpec& quad);
  /// Chebyshev-Lobatto grid (with endpoints) for sup norms over `box`, per
  /// panel when breakpoints are given. Zero-length axes collapse to a single node.
  static TensorGrid lobatto(const Box& box, int points_per_axis,
                            const std::vector<std::vector<double>>& breakpoints = {});
  /// Grid from explicit per-axis nodes and weights.
  TensorGrid(std::vector<std::vector<double>> nodes, std::vector<std::vector<double>> weights);

  std::size_t dim() const { return nodes_.size(); }
  std::size_t size() const;
  const std::vector<double>& nodes(std::size_t axis) const { return nodes_[axis]; }
  const std::vector<double>& weights(std::size_t axis) const { return weights_[axis]; }

  /// Calls fn(point, weight) for every tensor node.
  template <class Fn>
  void for_each(Fn&& fn) const {
    const std::size_t d = dim();
    std::vector<std::size_t> idx(d, 0);
    Point x(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (nodes_[i].empty()) return;
      x[i] = nodes_[i][0];
    }
    while (true) {
      double w = 1.0;
      for (std::size_t i = 0; i < d; ++i) w *= weights_[i][idx[i]];
      fn(static_cast<const Point&>(x), w);
      std::size_t axis = d;
      while (axis > 0) {
        --axis;
        if (++idx[axis] < nodes_[axis].size()) {
          x[axis] = nodes_[axis][idx[axis]];
          break;
        }
        idx[axis] = 0;
        x[axis] = nodes_[axis][0];
        if (axis == 0) return;
      }
    }
  }

 private:
  TensorGrid() = default;
  std::vector<std::vector<double>> nodes_;
  std::vector<std::vector<double>> weights_;
};

/// Integral of f over `box` by tensor Gauss-Legendre; 0 on boxes of zero volume.
template <class F>
double integrate(F&& f, const Box& box, const QuadratureSpec& quad) {
  if (box.is_degenerate()) return 0.0;
  double sum = 0.0;
  TensorGrid::gauss(box, quad).for_each([&](const Point& x, double w) { sum += w * f(x); });
  return sum;
}

/// ||f||_{p, domain} for p in [1, inf].
///
/// Finite p uses tensor Gauss-Legendre quadrature of |f|^p. p = inf takes the
/// max of |f| over the Chebyshev-Lobatto grid of `quad.sup_points_per_axis`
/// points per axis. Sets of zero measure give 0 for finite p.
template <class F>
double lp_norm(F&& f, const Box& domain, double p, const QuadratureSpec& quad) {
  if (!(p >= 1.0)) throw PreconditionError("lp_norm: p must lie in [1, inf]");
  if (std::isinf(p)) {
    double m = 0.0;
    TensorGrid::lobatto(domain, quad.sup_points_per_axis, quad.breakpoints).for_each([&](const Point& x, double) {
      m = std::max(m, std::abs(f(x)));
    });
    return m;
  }
  if (domain.is_degenerate()) return 0.0;
  double sum = 0.0;
  const TensorGrid grid = TensorGrid::gauss(domain, quad);
  if (p == 1.0) {
    grid.for_each([&](const Point& x, double w) { sum += w * std::abs(f(x)); });
    return sum;
  }
  if (p == 2.0) {
    grid.for_each([&](const Point& x, double w) {
      const double v = f(x);
      sum += w * v * v;
    });
    return std::sqrt(sum);
  }
  grid.for_each([&](const Point& x, double w) { sum += w * std::pow(std::abs(f(x)), p); });
  return std::pow(sum, 1.0 / p);
}

/// Empty domains (nullopt) have norm 0.
template <class F>
double lp_norm(F&& f, const std::optional<Box>& domain, double p, const QuadratureSpec& quad) {
  if (!domain) return 0.0;
  return lp_norm(std::forward<F>(f), *domain, p, quad);
}

}  // namespace whitney
