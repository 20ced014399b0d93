#include "whitney/best_approx.hpp"

#include <algorithm>
#include <cmath>

#include "whitney/error.hpp"
#include "whitney/simplex.hpp"

namespace whitney {

namespace {

// Shifted Legendre values P_k(2u - 1), k < n, at normalized coordinate u.
void legendre_values(int n, double u, std::vector<double>& out) {
  out.assign(n, 0.0);
  const double s = 2.0 * u - 1.0;
  out[0] = 1.0;
  if (n > 1) out[1] = s;
  for (int k = 2; k < n; ++k) out[k] = ((2.0 * k - 1.0) * s * out[k - 1] - (k - 1.0) * out[k - 2]) / k;
}

// Tensor basis row (last axis fastest) at x.
std::vector<double> basis_row(const MultiIndex& r, const Box& q, std::span<const double> x) {
  std::vector<double> row{1.0};
  std::vector<double> axis_values;
  for (std::size_t i = 0; i < r.dim(); ++i) {
    legendre_values(r[i], (x[i] - q.lower(i)) / q.length(i), axis_values);
    std::vector<double> next;
    next.reserve(row.size() * axis_values.size());
    for (double a : row) {
      for (double b : axis_values) next.push_back(a * b);
    }
    row = std::move(next);
  }
  return row;
}

struct Sample {
  std::vector<Point> points;
  std::vector<double> weights;
};

Sample sample(const TensorGrid& grid) {
  Sample s;
  grid.for_each([&](const Point& x, double w) {
    s.points.push_back(x);
    s.weights.push_back(w);
  });
  return s;
}

Eigen::MatrixXd design_matrix(const MultiIndex& r, const Box& q, const std::vector<Point>& points) {
  const auto n = static_cast<Eigen::Index>(basis_row(r, q, points.front()).size());
  Eigen::MatrixXd phi(static_cast<Eigen::Index>(points.size()), n);
  for (std::size_t j = 0; j < points.size(); ++j) {
    const auto row = basis_row(r, q, points[j]);
    for (Eigen::Index a = 0; a < n; ++a) phi(static_cast<Eigen::Index>(j), a) = row[a];
  }
  return phi;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

void require_optimal(const lp::Solution& sol, const char* what) {
  if (sol.status != lp::Status::optimal) {
    throw lp::SolverError(std::string(what) + ": simplex stopped (" + lp::to_string(sol.status) + ") after " +
                              std::to_string(sol.iterations) + " iterations",
                          to_std(sol.x));
  }
}

struct DiscreteFit {
  std::vector<double> coefficients;
  double discrete_error;
  int iterations;
};

// min_c max_j |f_j - (Phi c)_j| through its dual:
//   max sum_j f_j (y+_j - y-_j)  s.t.  Phi^T (y+ - y-) = 0,  sum (y+ + y-) = 1,  y >= 0.
// The multipliers of the dual rows give c (moment rows) and the optimum (last row).
DiscreteFit fit_minimax(const Eigen::MatrixXd& phi, const Eigen::VectorXd& f) {
  const Eigen::Index samples = phi.rows();
  const Eigen::Index n = phi.cols();
  lp::Problem prob;
  prob.a = Eigen::MatrixXd::Zero(n + 1, 2 * samples);
  prob.a.block(0, 0, n, samples) = phi.transpose();
  prob.a.block(0, samples, n, samples) = -phi.transpose();
  prob.a.row(n).setOnes();
  prob.b = Eigen::VectorXd::Zero(n + 1);
  prob.b(n) = 1.0;
  prob.c.resize(2 * samples);
  prob.c.head(samples) = -f;
  prob.c.tail(samples) = f;
  const lp::Solution sol = lp::solve(prob);
  require_optimal(sol, "best_approx(p=inf)");
  const Eigen::VectorXd c = -sol.duals.head(n);
  const double discrete = (f - phi * c).lpNorm<Eigen::Infinity>();
  return {to_std(c), discrete, sol.iterations};
}

// min sum_j w_j |f_j - (Phi c)_j| as  Phi c+ - Phi c- + s+ - s- = f, all variables >= 0.
DiscreteFit fit_l1(const Eigen::MatrixXd& phi, const Eigen::VectorXd& f, const Eigen::VectorXd& w) {
  const Eigen::Index samples = phi.rows();
  const Eigen::Index n = phi.cols();
  lp::Problem prob;
  prob.a = Eigen::MatrixXd::Zero(samples, 2 * n + 2 * samples);
  prob.a.block(0, 0, samples, n) = phi;
  prob.a.block(0, n, samples, n) = -phi;
  prob.a.block(0, 2 * n, samples, samples).setIdentity();
  prob.a.block(0, 2 * n + samples, samples, samples) = -Eigen::MatrixXd::Identity(samples, samples);
  prob.b = f;
  prob.c = Eigen::VectorXd::Zero(2 * n + 2 * samples);
  prob.c.segment(2 * n, samples) = w;
  prob.c.segment(2 * n + samples, samples) = w;
  const lp::Solution sol = lp::solve(prob);
  require_optimal(sol, "best_approx(p=1)");
  const Eigen::VectorXd c = sol.x.head(n) - sol.x.segment(n, n);
  const double discrete = w.dot((f - phi * c).cwiseAbs());
  return {to_std(c), discrete, sol.iterations};
}

BestApproximation fit_on_grid(const FunctionSpec& f, const MultiIndex& r, double p, const Box& q,
                              const std::vector<int>& grid, const QuadratureSpec& quad) {
  Sample s;
  const QuadratureSpec adapted = adapted_quadrature(quad, f);
  if (std::isinf(p)) {
    std::vector<std::vector<double>> nodes(q.dim());
    std::vector<std::vector<double>> weights(q.dim());
    for (std::size_t i = 0; i < q.dim(); ++i) {
      const auto ref = chebyshev_lobatto(grid[i]);
      for (double s_ref : ref) nodes[i].push_back(q.lower(i) + 0.5 * (s_ref + 1.0) * q.length(i));
      nodes[i].front() = q.lower(i);
      nodes[i].back() = q.upper(i);
      if (i < adapted.breakpoints.size()) {
        for (double c : adapted.breakpoints[i]) {
          if (c > q.lower(i) && c < q.upper(i)) nodes[i].push_back(c);
        }
        std::sort(nodes[i].begin(), nodes[i].end());
        nodes[i].erase(std::unique(nodes[i].begin(), nodes[i].end()), nodes[i].end());
      }
      weights[i].assign(nodes[i].size(), 1.0);
    }
    s = sample(TensorGrid(std::move(nodes), std::move(weights)));
  } else {
    QuadratureSpec fit_quad = adapted;
    fit_quad.nodes_per_axis = grid;
    s = sample(TensorGrid::gauss(q, fit_quad));
  }
  const Eigen::MatrixXd phi = design_matrix(r, q, s.points);
  Eigen::VectorXd values(static_cast<Eigen::Index>(s.points.size()));
  for (std::size_t j = 0; j < s.points.size(); ++j) values(static_cast<Eigen::Index>(j)) = f(s.points[j]);

  DiscreteFit fit;
  if (std::isinf(p)) {
    fit = fit_minimax(phi, values);
  } else {
    const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(s.weights.data(), static_cast<Eigen::Index>(s.weights.size()));
    fit = fit_l1(phi, values, w);
  }
  TensorPolynomial poly(r, PolyBasis::legendre_shifted, q, std::move(fit.coefficients));
  const double error =
      lp_norm([&](std::span<const double> x) { return f(x) - poly(x); }, q, p, adapted_quadrature(quad, f));
  return {std::move(poly), error, fit.discrete_error, grid, fit.iterations};
}

}  // namespace

BestApproximation best_approx(const FunctionSpec& f, const MultiIndex& r, double p, const Box& q,
                              const BestApproxOptions& options) {
  const std::size_t d = q.dim();
  if (r.dim() != d || f.dim() != d) throw PreconditionError("best_approx: dimension mismatch");
  if (!r.is_positive()) throw PreconditionError("best_approx: need r_i >= 1");

  if (p == 2.0) {
    // Orthogonal projection: c_k = <f, L_k> / <L_k, L_k>, <L_k, L_k> = prod delta_i / (2 k_i + 1).
    TensorPolynomial poly(r, PolyBasis::legendre_shifted, q);
    auto& c = poly.coefficients();
    const QuadratureSpec quad = adapted_quadrature(options.quad, f);
    TensorGrid::gauss(q, quad).for_each([&](const Point& x, double w) {
      const double fx = f(x);
      const auto row = basis_row(r, q, x);
      for (std::size_t a = 0; a < row.size(); ++a) c[a] += w * fx * row[a];
    });
    std::vector<int> k(d, 0);
    for (std::size_t a = 0; a < c.size(); ++a) {
      double norm2 = 1.0;
      for (std::size_t i = 0; i < d; ++i) norm2 *= q.length(i) / (2.0 * k[i] + 1.0);
      c[a] /= norm2;
      for (std::size_t i = d; i > 0; --i) {
        if (++k[i - 1] < r[i - 1]) break;
        k[i - 1] = 0;
      }
    }
    const double error = lp_norm([&](std::span<const double> x) { return f(x) - poly(x); }, q, 2.0, quad);
    return {std::move(poly), error, error, {}, 0};
  }

  if (p != 1.0 && !std::isinf(p)) {
    throw PreconditionError("best_approx: p must be 1, 2 or inf");
  }
  std::vector<int> grid = options.grid;
  if (grid.empty()) {
    for (std::size_t i = 0; i < d; ++i) grid.push_back(std::max(4 * r[i], 17));
  }
  if (grid.size() == 1 && d > 1) grid.assign(d, grid.front());
  if (grid.size() != d) throw PreconditionError("best_approx: grid dimension mismatch");
  for (std::size_t i = 0; i < d; ++i) {
    if (grid[i] < 2 * r[i] || grid[i] < 2) throw PreconditionError("best_approx: grid_i must be at least 2 r_i");
  }

  BestApproximation result = fit_on_grid(f, r, p, q, grid, options.quad);
  const double scale = 1e-12 * (1.0 + lp_norm(f, q, p, adapted_quadrature(options.quad, f)));
  if (options.refine && result.error > (1.0 + options.agreement) * result.discrete_error + scale) {
    // Doubling keeps Chebyshev-Lobatto grids nested: n -> 2 (n - 1) + 1.
    for (auto& g : grid) g = 2 * (g - 1) + 1;
    BestApproximation refined = fit_on_grid(f, r, p, q, grid, options.quad);
    refined.lp_iterations += result.lp_iterations;
    result = std::move(refined);
  }
  return result;
}

}  // namespace whitney
