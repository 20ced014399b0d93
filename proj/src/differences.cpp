#include "whitney/differences.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "whitney/error.hpp"

namespace whitney {

namespace {

// Step values {0, t/(n-1), ..., t} with the last one exactly t.
std::vector<double> step_grid(double t, int n) {
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = t * k / (n - 1);
  out.back() = t;
  return out;
}

// Calls fn(h) for every h in the tensor product of per-axis value lists;
// axes with an empty list keep h_i = 0.
template <class Fn>
void for_each_step(std::size_t dim, const std::vector<std::vector<double>>& values, Fn&& fn) {
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < dim; ++i) {
    if (!values[i].empty()) active.push_back(i);
  }
  StepVector h = StepVector::constant(dim, 0.0);
  std::vector<std::size_t> idx(active.size(), 0);
  for (std::size_t a = 0; a < active.size(); ++a) h[active[a]] = values[active[a]][0];
  while (true) {
    fn(static_cast<const StepVector&>(h));
    std::size_t a = active.size();
    while (a > 0) {
      --a;
      const std::size_t axis = active[a];
      if (++idx[a] < values[axis].size()) {
        h[axis] = values[axis][idx[a]];
        break;
      }
      idx[a] = 0;
      h[axis] = values[axis][0];
      if (a == 0) return;
    }
    if (active.empty()) return;
  }
}

double difference_norm(const FunctionSpec& f, const MultiIndex& r_e, const StepVector& h, double p, const Box& q,
                       const QuadratureSpec& quad) {
  const auto domain = shifted_domain(q, scale(r_e, h));
  if (!domain) return 0.0;
  const DifferenceStencil stencil(r_e, h);
  Point scratch(q.dim());
  std::vector<std::vector<double>> shifts(q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) {
    for (int j = 0; j <= r_e[i]; ++j) shifts[i].push_back(j * h[i]);
  }
  return lp_norm([&](std::span<const double> x) { return stencil.apply(f, x, scratch); }, *domain, p,
                 adapted_quadrature(quad, f, shifts));
}

// Largest difference norm over the tensor grid `values`, then polished by
// golden-section searches along each active axis between the grid neighbours
// of the best step found so far.
double sup_over_steps(const FunctionSpec& f, const MultiIndex& r_e, const std::vector<std::vector<double>>& values,
                      double p, const Box& q, const QuadratureSpec& quad) {
  const std::size_t d = q.dim();
  double best = 0.0;
  StepVector best_h = StepVector::constant(d, 0.0);
  for_each_step(d, values, [&](const StepVector& h) {
    const double v = difference_norm(f, r_e, h, p, q, quad);
    if (v > best) {
      best = v;
      best_h = h;
    }
  });
  if (!(best > 0.0)) return best;

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < d; ++i) {
    if (values[i].size() > 1) active.push_back(i);
  }
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  const int passes = active.size() > 1 ? 2 : 1;
  for (int pass = 0; pass < passes; ++pass) {
    for (std::size_t axis : active) {
      const std::vector<double>& grid = values[axis];
      const auto it = std::lower_bound(grid.begin(), grid.end(), best_h[axis]);
      const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - grid.begin()), grid.size() - 1);
      double a = grid[k > 0 ? k - 1 : 0];
      double b = grid[std::min(k + 1, grid.size() - 1)];
      const double tol = 1e-10 * (grid.back() - grid.front());
      StepVector h = best_h;
      auto g = [&](double s) {
        h[axis] = s;
        const double v = difference_norm(f, r_e, h, p, q, quad);
        if (v > best) {
          best = v;
          best_h = h;
        }
        return v;
      };
      double c = b - inv_phi * (b - a);
      double e = a + inv_phi * (b - a);
      double fc = g(c);
      double fe = g(e);
      while (b - a > tol) {
        if (fc >= fe) {
          b = e;
          e = c;
          fe = fc;
          c = b - inv_phi * (b - a);
          fc = g(c);
        } else {
          a = c;
          c = e;
          fc = fe;
          e = a + inv_phi * (b - a);
          fe = g(e);
        }
      }
    }
  }
  return best;
}

void check_subset(const SubsetMask& e, std::size_t dim, const char* what) {
  if (e.dim() != dim) throw PreconditionError(std::string(what) + ": subset dimension mismatch");
  if (e.is_empty()) throw PreconditionError(std::string(what) + ": subset e must be non-empty");
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return std::round(out);
}

DifferenceStencil::DifferenceStencil(const MultiIndex& order, const StepVector& step) : dim_(order.dim()) {
  if (step.dim() != dim_) throw PreconditionError("DifferenceStencil: dimension mismatch");
  const std::size_t n = order.box_count();
  offsets_.assign(n * dim_, 0.0);
  coeffs_.assign(n, 1.0);
  std::vector<int> j(dim_, 0);
  for (std::size_t k = 0; k < n; ++k) {
    double c = 1.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const int m = order[i];
      c *= ((m - j[i]) % 2 ? -1.0 : 1.0) * binomial(m, j[i]);
      offsets_[k * dim_ + i] = m > 0 ? j[i] * step[i] : 0.0;
    }
    coeffs_[k] = c;
    for (std::size_t i = dim_; i > 0; --i) {
      if (++j[i - 1] <= order[i - 1]) break;
      j[i - 1] = 0;
    }
  }
}

double mixed_difference(const FunctionSpec& f, const MultiIndex& order, const StepVector& h,
                        std::span<const double> x) {
  const DifferenceStencil stencil(order, h);
  Point scratch(f.dim());
  return stencil.apply(f, x, scratch);
}

double modulus(const ModulusRequest& req) {
  const std::size_t d = req.q.dim();
  check_subset(req.e, d, "modulus");
  if (req.r.dim() != d || req.t.dim() != d || req.f.dim() != d) {
    throw PreconditionError("modulus: dimension mismatch");
  }
  if (req.h_grid < 2) throw PreconditionError("modulus: h_grid must be at least 2");
  const MultiIndex r_e = project(req.r, req.e);
  std::vector<std::vector<double>> values(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!req.e.contains(i) || r_e[i] == 0) continue;
    double t = req.t[i];
    if (t < 0.0) throw PreconditionError("modulus: t must be non-negative");
    if (t > req.q.length(i)) {
      std::clog << "[whitney] modulus: t_" << i << " = " << t << " clamped to delta = " << req.q.length(i) << '\n';
      t = req.q.length(i);
    }
    values[i] = step_grid(t, req.h_grid);
  }
  return sup_over_steps(req.f, r_e, values, req.p, req.q, req.quad);
}

double total_modulus(const FunctionSpec& f, const MultiIndex& r, const StepVector& t, double p, const Box& q,
                     int h_grid, const QuadratureSpec& quad) {
  double sum = 0.0;
  for (const SubsetMask& e : SubsetMask::all_nonempty(q.dim())) {
    sum += modulus({f, r, e, t, p, q, h_grid, quad});
  }
  return sum;
}

double p_mean_modulus(const FunctionSpec& f, const MultiIndex& r_e, const StepVector& t, double p, const Box& q,
                      const QuadratureSpec& quad, int h_grid) {
  const std::size_t d = q.dim();
  if (r_e.dim() != d || t.dim() != d || f.dim() != d) throw PreconditionError("p_mean_modulus: dimension mismatch");
  if (r_e.is_zero()) throw PreconditionError("p_mean_modulus: order r(e) must be non-zero");
  if (!(p >= 1.0)) throw PreconditionError("p_mean_modulus: p must lie in [1, inf]");

  std::vector<double> radius(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    if (r_e[i] == 0) continue;
    if (t[i] < 0.0) throw PreconditionError("p_mean_modulus: t must be non-negative");
    if (t[i] == 0.0) return 0.0;
    radius[i] = std::min(t[i], q.length(i));
  }

  if (std::isinf(p)) {
    if (h_grid < 2) throw PreconditionError("p_mean_modulus: h_grid must be at least 2");
    std::vector<std::vector<double>> values(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (r_e[i] == 0) continue;
      const std::vector<double> half = step_grid(radius[i], h_grid);
      for (auto it = half.rbegin(); it != half.rend() - 1; ++it) values[i].push_back(-*it);
      values[i].insert(values[i].end(), half.begin(), half.end());
    }
    return sup_over_steps(f, r_e, values, p, q, quad);
  }

  // Outer Gauss-Legendre rule on [-t_i, 0] and [0, t_i] separately: the
  // integrand is generally only piecewise smooth across h_i = 0.
  std::vector<std::vector<double>> values(d);
  std::vector<std::vector<double>> weights(d);
  double normalizer = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    if (r_e[i] == 0) continue;
    const Rule1D& rule = gauss_legendre(quad.nodes(i));
    const double half = 0.5 * radius[i];
    for (double sign : {-1.0, 1.0}) {
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        values[i].push_back(sign * half * (1.0 + rule.nodes[k]));
        weights[i].push_back(half * rule.weights[k]);
      }
    }
    normalizer /= t[i];
  }
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < d; ++i) {
    if (!values[i].empty()) active.push_back(i);
  }
  double sum = 0.0;
  std::vector<std::size_t> idx(active.size(), 0);
  StepVector h = StepVector::constant(d, 0.0);
  while (true) {
    double w = 1.0;
    for (std::size_t a = 0; a < active.size(); ++a) {
      h[active[a]] = values[active[a]][idx[a]];
      w *= weights[active[a]][idx[a]];
    }
    const double inner = difference_norm(f, r_e, h, p, q, quad);
    sum += w * std::pow(inner, p);
    std::size_t a = active.size();
    bool done = true;
    while (a > 0) {
      --a;
      if (++idx[a] < values[active[a]].size()) {
        done = false;
        break;
      }
      idx[a] = 0;
    }
    if (done) break;
  }
  return std::pow(normalizer * sum, 1.0 / p);
}

double total_p_mean_modulus(const FunctionSpec& f, const MultiIndex& r, const StepVector& t, double p,
                            const Box& q, const QuadratureSpec& quad, int h_grid) {
  double sum = 0.0;
  for (const SubsetMask& e : SubsetMask::all_nonempty(q.dim())) {
    sum += p_mean_modulus(f, project(r, e), t, p, q, quad, h_grid);
  }
  return sum;
}

}  // namespace whitney
