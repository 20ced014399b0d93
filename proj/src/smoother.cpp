#include "whitney/smoother.hpp"

#include <algorithm>
#include <cmath>

#include "whitney/differences.hpp"
#include "whitney/error.hpp"

namespace whitney {

namespace {

// Shifts j * step * m for j, m = 0..k: the images of the B-spline knots
// under every dilation j * step.
std::vector<double> knot_shifts(int k, double step) {
  std::vector<double> out;
  for (int j = 0; j <= k; ++j) {
    for (int m = 0; m <= k; ++m) {
      const double s = j * m * step;
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
  }
  return out;
}

}  // namespace

AxisOperator AxisOperator::identity() {
  AxisOperator op;
  op.offsets_ = {0.0};
  op.weights_ = {1.0};
  op.kinks_ = {0.0};
  return op;
}

AxisOperator AxisOperator::smoothing(int k, double t, Orientation orientation, int nodes_per_knot) {
  if (k < 1) throw PreconditionError("smoothing operator: order must be at least 1");
  const double sigma = orientation == Orientation::forward ? 1.0 : -1.0;
  const double sign = (k + 1) % 2 ? -1.0 : 1.0;  // (-1)^{k+1}
  const Rule1D& rule = gauss_legendre(nodes_per_knot);
  AxisOperator op;
  // The j = 0 terms of every node share offset 0; their weights are folded
  // into the leading identity term.
  double centre = 1.0;
  for (int m = 0; m < k; ++m) {
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double h = m + 0.5 * (rule.nodes[q] + 1.0);
      const double w = 0.5 * rule.weights[q] * bspline_eval(k, h);
      for (int j = 0; j <= k; ++j) {
        const double c = sign * ((k - j) % 2 ? -1.0 : 1.0) * binomial(k, j) * w;
        if (j == 0) {
          centre += c;
        } else {
          op.offsets_.push_back(sigma * j * t * h);
          op.weights_.push_back(c);
        }
      }
    }
  }
  op.offsets_.insert(op.offsets_.begin(), 0.0);
  op.weights_.insert(op.weights_.begin(), centre);
  op.kinks_ = knot_shifts(k, sigma * t);
  return op;
}

AxisOperator AxisOperator::kth_derivative(int k, double t, Orientation orientation) {
  if (k < 1) throw PreconditionError("derivative operator: order must be at least 1");
  if (!(t > 0.0)) throw PreconditionError("derivative operator: need t > 0");
  const double step = orientation == Orientation::forward ? t : -t;
  AxisOperator op;
  for (int j = 1; j <= k; ++j) {
    const double c = (j % 2 ? 1.0 : -1.0) * binomial(k, j) / std::pow(j * step, k);
    // Delta^k_{j step} g(x) = sum_l (-1)^{k-l} C(k, l) g(x + l j step)
    for (int l = 0; l <= k; ++l) {
      op.offsets_.push_back(l * j * step);
      op.weights_.push_back(c * ((k - l) % 2 ? -1.0 : 1.0) * binomial(k, l));
    }
  }
  op.kinks_ = knot_shifts(k, step);
  return op;
}

AxisOperator AxisOperator::kth_derivative_from_derivative(int k, double t, Orientation orientation,
                                                          int nodes_per_knot) {
  if (k < 1) throw PreconditionError("derivative operator: order must be at least 1");
  if (!(t > 0.0)) throw PreconditionError("derivative operator: need t > 0");
  const double step = orientation == Orientation::forward ? t : -t;
  const Rule1D& rule = gauss_legendre(nodes_per_knot);
  AxisOperator op;
  for (int j = 1; j <= k; ++j) {
    const double c = (j % 2 ? 1.0 : -1.0) * binomial(k, j);
    for (int m = 0; m < k; ++m) {
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double u = m + 0.5 * (rule.nodes[q] + 1.0);
        op.offsets_.push_back(j * step * u);
        op.weights_.push_back(c * 0.5 * rule.weights[q] * bspline_eval(k, u));
      }
    }
  }
  op.kinks_ = knot_shifts(k, step);
  return op;
}

QuadratureSpec SmoothedFunction::quadrature(const QuadratureSpec& base) const {
  std::vector<std::vector<double>> shifts;
  for (const AxisOperator& a : axes_) shifts.emplace_back(a.kink_shifts().begin(), a.kink_shifts().end());
  return adapted_quadrature(base, f_, shifts);
}

double AxisOperator::reach() const {
  double r = 0.0;
  for (double o : offsets_) r = std::max(r, std::abs(o));
  return r;
}

SmoothedFunction::SmoothedFunction(FunctionSpec f, std::vector<AxisOperator> axes, Box valid)
    : f_(std::move(f)), axes_(std::move(axes)), valid_(std::move(valid)) {
  if (axes_.size() != f_.dim()) throw PreconditionError("SmoothedFunction: one operator per axis required");
}

double SmoothedFunction::operator()(std::span<const double> x) const {
  Point y(x.begin(), x.end());
  return apply(0, y);
}

double SmoothedFunction::apply(std::size_t axis, Point& y) const {
  if (axis == axes_.size()) return f_(y);
  const AxisOperator& op = axes_[axis];
  const double base = y[axis];
  double sum = 0.0;
  for (std::size_t m = 0; m < op.offsets().size(); ++m) {
    y[axis] = base + op.offsets()[m];
    sum += op.weights()[m] * apply(axis + 1, y);
  }
  y[axis] = base;
  return sum;
}

StepVector smoothing_limit(const MultiIndex& r, const Box& q) {
  std::vector<double> out(q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) out[i] = q.length(i) / (4.0 * r[i] * r[i]);
  return StepVector(std::move(out));
}

Box smoothing_domain(const Box& q, std::span<const Orientation> orientation) {
  std::vector<double> lo(q.lower().begin(), q.lower().end());
  std::vector<double> hi(q.upper().begin(), q.upper().end());
  for (std::size_t i = 0; i < q.dim(); ++i) {
    const double quarter = q.length(i) / 4.0;
    if (orientation[i] == Orientation::forward) {
      hi[i] = q.upper(i) - quarter;
    } else {
      lo[i] = q.lower(i) + quarter;
    }
  }
  return Box(std::move(lo), std::move(hi));
}

namespace {

std::vector<Orientation> resolve(std::vector<Orientation> orientation, std::size_t dim) {
  if (orientation.empty()) orientation.assign(dim, Orientation::forward);
  if (orientation.size() != dim) throw PreconditionError("smoother: orientation dimension mismatch");
  return orientation;
}

void check_limits(const MultiIndex& r, const StepVector& t, const Box& q) {
  if (r.dim() != q.dim() || t.dim() != q.dim()) throw PreconditionError("smoother: dimension mismatch");
  if (!r.is_positive()) throw PreconditionError("smoother: need r_i >= 1");
  const StepVector limit = smoothing_limit(r, q);
  for (std::size_t i = 0; i < q.dim(); ++i) {
    if (t[i] < 0.0) throw PreconditionError("smoother: t must be non-negative");
    if (t[i] > limit[i] * (1.0 + 1e-12)) {
      throw DomainError("smoother: t_" + std::to_string(i) + " = " + std::to_string(t[i]) +
                        " exceeds t-bar = " + std::to_string(limit[i]));
    }
  }
}

}  // namespace

SmoothedFunction smooth_univariate(const FunctionSpec& f, int k, double t, std::size_t axis, const Box& q,
                                   const QuadratureSpec& quad) {
  if (axis >= q.dim() || f.dim() != q.dim()) throw PreconditionError("smooth_univariate: bad axis or dimension");
  const double limit = q.length(axis) / (4.0 * k * k);
  if (t < 0.0) throw PreconditionError("smooth_univariate: t must be non-negative");
  if (t > limit * (1.0 + 1e-12)) throw DomainError("smooth_univariate: t exceeds t-bar");
  std::vector<AxisOperator> axes(q.dim(), AxisOperator::identity());
  axes[axis] = AxisOperator::smoothing(k, t, Orientation::forward, quad.bspline_nodes_per_knot);
  std::vector<double> hi(q.upper().begin(), q.upper().end());
  hi[axis] = q.upper(axis) - q.length(axis) / 4.0;
  return SmoothedFunction(f, std::move(axes), Box(std::vector<double>(q.lower().begin(), q.lower().end()), hi));
}

SmoothedFunction smooth_mixed(const FunctionSpec& f, const MultiIndex& r, const StepVector& t, const Box& q,
                              const QuadratureSpec& quad, std::vector<Orientation> orientation) {
  check_limits(r, t, q);
  orientation = resolve(std::move(orientation), q.dim());
  std::vector<AxisOperator> axes;
  for (std::size_t i = 0; i < q.dim(); ++i) {
    axes.push_back(AxisOperator::smoothing(r[i], t[i], orientation[i], quad.bspline_nodes_per_knot));
  }
  return SmoothedFunction(f, std::move(axes), smoothing_domain(q, orientation));
}

SmoothedFunction smoothed_derivative(const FunctionSpec& f, const MultiIndex& r, const StepVector& t,
                                     const SubsetMask& e, const Box& q, const QuadratureSpec& quad,
                                     std::vector<Orientation> orientation) {
  check_limits(r, t, q);
  if (e.dim() != q.dim() || e.is_empty()) throw PreconditionError("smoothed_derivative: e must be non-empty");
  orientation = resolve(std::move(orientation), q.dim());
  const MultiIndex order = project(r, e);
  const bool analytic = f.has_derivative(order);
  std::vector<AxisOperator> axes;
  for (std::size_t i = 0; i < q.dim(); ++i) {
    if (e.contains(i)) {
      if (!(t[i] > 0.0)) throw PreconditionError("smoothed_derivative: need t_i > 0 on e");
      axes.push_back(analytic ? AxisOperator::kth_derivative_from_derivative(r[i], t[i], orientation[i],
                                                                             quad.bspline_nodes_per_knot)
                              : AxisOperator::kth_derivative(r[i], t[i], orientation[i]));
    } else {
      axes.push_back(AxisOperator::smoothing(r[i], t[i], orientation[i], quad.bspline_nodes_per_knot));
    }
  }
  if (!analytic) return SmoothedFunction(f, std::move(axes), smoothing_domain(q, orientation));
  FunctionSpec source(f.id() + "^(" + order.to_string() + ")", f.dim(),
                      [f, order](std::span<const double> x) { return f.derivative(order, x); });
  return SmoothedFunction(std::move(source), std::move(axes), smoothing_domain(q, orientation));
}

}  // namespace whitney
