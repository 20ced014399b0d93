#pragma once

#include <vector>

#include "whitney/functions.hpp"
#include "whitney/polynomial.hpp"
#include "whitney/quadrature.hpp"

namespace whitney {

struct BestApproxOptions {
  /// Fitting grid per axis for p in {1, inf}; empty selects max(4 r_i, 17).
  std::vector<int> grid;
  QuadratureSpec quad{};
  /// Double the grid once when the re-measured error exceeds the discrete
  /// optimum by more than `agreement`.
  bool refine = true;
  double agreement = 0.02;
};

struct BestApproximation {
  TensorPolynomial poly;
  /// ||f - poly||_{p,Q} measured by lp_norm.
  double error = 0.0;
  /// Optimum of the discrete problem (equal to `error` for p = 2).
  double discrete_error = 0.0;
  std::vector<int> grid_used;
  int lp_iterations = 0;
};

/// Best approximation of f from P_r in L_p(Q), p in {1, 2, inf}.
///
/// p = 2 projects onto the shifted Legendre basis with quadrature inner
/// products. p = inf solves the discrete minimax problem on a
/// Chebyshev-Lobatto grid and p = 1 the quadrature-weighted discrete L1
/// problem on a Gauss-Legendre grid, both with the in-repo simplex. The
/// returned error is always re-measured with lp_norm on the residual.
/// Throws lp::SolverError if the simplex stops early.
BestApproximation best_approx(const FunctionSpec& f, const MultiIndex& r, double p, const Box& q,
                              const BestApproxOptions& options = {});

/// Taylor polynomial T_k(f, x0, .) = sum_{0 <= s < k} f^{(s)}(x0) e_s(x - x0),
/// returned in the shifted monomial basis of Q.
TensorPolynomial taylor_poly(const FunctionSpec& f, const MultiIndex& k, std::span<const double> x0, const Box& q);

/// sum over non-empty e of prod_{i in e} delta_i^{r_i} ||f^{(r(e))}||_{p,Q}.
double taylor_remainder_bound(const FunctionSpec& f, const MultiIndex& r, double p, const Box& q,
                              const QuadratureSpec& quad = {});

/// ||f - T_r(f, x0, .)||_{p,Q}.
double taylor_error(const FunctionSpec& f, const MultiIndex& r, double p, const Box& q, std::span<const double> x0,
                    const QuadratureSpec& quad = {});

}  // namespace whitney
