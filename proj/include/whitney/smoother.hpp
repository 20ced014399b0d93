#pragma once

#include <span>
#include <string>
#include <vector>

#include "whitney/functions.hpp"
#include "whitney/geometry.hpp"
#include "whitney/quadrature.hpp"

namespace whitney {

/// Cardinal B-spline M_k with knots 0, 1, ..., k (Cox-de Boor), support [0, k],
/// unit integral. Uses half-open knot intervals, so M_1 = indicator of [0, 1).
double bspline_eval(int k, double x);

/// Direction in which an operator reaches: forward uses x + s, backward x - s.
enum class Orientation { forward, backward };

/// A linear operator acting along one axis as a finite weighted sum of shifts:
/// (A g)(x) = sum_m weight_m g(x + offset_m e_axis).
class AxisOperator {
 public:
  static AxisOperator identity();
  /// P^k_t: g + (-1)^{k+1} int_0^k Delta^k_{sigma t h} g M_k(h) dh with sigma = +-1 by orientation.
  static AxisOperator smoothing(int k, double t, Orientation orientation, int nodes_per_knot);
  /// (P^k_t g)^{(k)} = (sigma t)^{-k} sum_{j=1}^k (-1)^{j+1} j^{-k} C(k, j) Delta^k_{j sigma t} g.
  static AxisOperator kth_derivative(int k, double t, Orientation orientation);
  /// Same derivative, applied to g^{(k)} instead of g through
  /// Delta^k_s g(x) = s^k int_0^k g^{(k)}(x + s u) M_k(u) du:
  /// sum_{j=1}^k (-1)^{j+1} C(k, j) int_0^k g^{(k)}(x + j sigma t u) M_k(u) du.
  static AxisOperator kth_derivative_from_derivative(int k, double t, Orientation orientation, int nodes_per_knot);

  std::span<const double> offsets() const { return offsets_; }
  std::span<const double> weights() const { return weights_; }
  /// Largest |offset|.
  double reach() const;
  /// Shifts at which a kink of g reappears in the result: the offsets of the
  /// exact operator before its B-spline integral is discretized (always
  /// including 0).
  std::span<const double> kink_shifts() const { return kinks_; }

 private:
  std::vector<double> offsets_;
  std::vector<double> weights_;
  std::vector<double> kinks_;
};

/// Tensor product of one AxisOperator per coordinate, applied to a function of x.
class SmoothedFunction {
 public:
  SmoothedFunction(FunctionSpec f, std::vector<AxisOperator> axes, Box valid);

  double operator()(std::span<const double> x) const;
  /// Region on which the defining shifts stay inside the source box.
  const Box& valid_domain() const { return valid_; }
  const FunctionSpec& source() const { return f_; }
  /// `base` with breakpoints at the kinks of the source moved through every
  /// axis operator. The same breakpoints suit f - g, since 0 is always a shift.
  QuadratureSpec quadrature(const QuadratureSpec& base) const;

 private:
  double apply(std::size_t axis, Point& y) const;

  FunctionSpec f_;
  std::vector<AxisOperator> axes_;
  Box valid_;
};

/// t-bar_i = (b_i - a_i) / (4 r_i^2).
StepVector smoothing_limit(const MultiIndex& r, const Box& q);

/// Q_{[d]}-style domain for an orientation vector: [a_i, b_i - delta_i/4] on
/// forward axes and [a_i + delta_i/4, b_i] on backward axes.
Box smoothing_domain(const Box& q, std::span<const Orientation> orientation);

/// P^k_{t,i}(f) along one axis (forward). Throws DomainError for t > t-bar.
SmoothedFunction smooth_univariate(const FunctionSpec& f, int k, double t, std::size_t axis, const Box& q,
                                   const QuadratureSpec& quad = {});

/// P^r_t(f) = prod_i P^{r_i}_{t_i, i}(f), valid on the returned domain.
/// Default orientation is forward on every axis, valid on Q_{[d]}.
SmoothedFunction smooth_mixed(const FunctionSpec& f, const MultiIndex& r, const StepVector& t, const Box& q,
                              const QuadratureSpec& quad = {}, std::vector<Orientation> orientation = {});

/// g_t^{(r(e))} for g_t = P^r_t(f): derivative factors on the axes of e,
/// smoothing factors elsewhere. Requires t_i > 0 on e. When f has the
/// analytic derivative f^{(r(e))} the factors act on it, which avoids the
/// cancellation of high-order differences at small t; otherwise they act on
/// point values of f.
SmoothedFunction smoothed_derivative(const FunctionSpec& f, const MultiIndex& r, const StepVector& t,
                                     const SubsetMask& e, const Box& q, const QuadratureSpec& quad = {},
                                     std::vector<Orientation> orientation = {});

}  // namespace whitney
