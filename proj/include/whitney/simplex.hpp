#pragma once

#include <vector>

#include <Eigen/Dense>

#include "whitney/error.hpp"

namespace whitney::lp {

/// minimize c^T x subject to A x = b, x >= 0.
struct Problem {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(Status status);

struct Solution {
  Status status = Status::infeasible;
  Eigen::VectorXd x;
  /// Simplex multipliers pi with A^T pi <= c at optimality (valid when optimal).
  Eigen::VectorXd duals;
  double objective = 0.0;
  int iterations = 0;
};

struct Options {
  /// 0 selects the default cap of 50 * (variables + constraints).
  int max_iterations = 0;
  double tolerance = 1e-10;
  /// Consecutive degenerate pivots after which Bland's rule replaces Dantzig's.
  int bland_after = 25;
  /// Relative size of the right-hand-side perturbation that breaks ties in
  /// degenerate problems. The reported primal is recomputed from the final
  /// basis with the unperturbed right-hand side. 0 disables it.
  double perturbation = 1e-7;
};

/// Dense two-phase tableau simplex.
///
/// Columns that are already unit vectors (after flipping rows with b_i < 0)
/// seed the starting basis; the remaining rows get artificial variables.
Solution solve(const Problem& problem, const Options& options = {});

/// The solver stopped before reaching optimality; `incumbent` is the last basic solution.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, std::vector<double> incumbent)
      : Error(what), incumbent_(std::move(incumbent)) {}
  const std::vector<double>& incumbent() const { return incumbent_; }

 private:
  std::vector<double> incumbent_;
};

}  // namespace whitney::lp
