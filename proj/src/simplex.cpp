#include "whitney/simplex.hpp"

#include <cmath>
#include <limits>

namespace whitney::lp {

const char* to_string(Status status) {
  switch (status) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::iteration_limit: return "iteration limit";
  }
  return "unknown";
}

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class Tableau {
 public:
  // Rows 0..m-1 hold B^{-1}[A | I_art | b]; row m is the reduced-cost row.
  Tableau(RowMatrix t, std::vector<int> basis, int structural, double tol, int bland_after)
      : t_(std::move(t)), basis_(std::move(basis)), structural_(structural), tol_(tol), bland_after_(bland_after) {}

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int rhs() const { return static_cast<int>(t_.cols()) - 1; }
  RowMatrix& data() { return t_; }
  const std::vector<int>& basis() const { return basis_; }

  void pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (int i = 0; i < t_.rows(); ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
    }
    basis_[row] = col;
  }

  // Runs pivots until optimal over columns [0, allowed). Returns status.
  Status optimize(int allowed, int& iterations, int cap) {
    const int m = rows();
    int degenerate = 0;
    while (true) {
      const bool bland = degenerate >= bland_after_;
      int enter = -1;
      double best = -tol_;
      for (int j = 0; j < allowed; ++j) {
        const double rc = t_(m, j);
        if (rc < best) {
          enter = j;
          best = rc;
          if (bland) break;
        }
      }
      if (enter < 0) return Status::optimal;
      if (iterations >= cap) return Status::iteration_limit;

      int leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const double a = t_(i, enter);
        if (a <= tol_) continue;
        const double q = t_(i, rhs()) / a;
        if (q < ratio - tol_ || (q <= ratio + tol_ && leave >= 0 && basis_[i] < basis_[leave])) {
          ratio = std::min(q, ratio);
          leave = i;
        }
      }
      if (leave < 0) return Status::unbounded;
      degenerate = ratio <= tol_ ? degenerate + 1 : 0;
      pivot(leave, enter);
      ++iterations;
    }
  }

  // Puts c_j - c_B B^{-1} A_j into the objective row for the given cost vector.
  void load_costs(const Eigen::VectorXd& cost) {
    const int m = rows();
    t_.row(m).setZero();
    for (int j = 0; j < static_cast<int>(cost.size()); ++j) t_(m, j) = cost(j);
    for (int i = 0; i < m; ++i) {
      const int b = basis_[i];
      const double cb = b < static_cast<int>(cost.size()) ? cost(b) : 0.0;
      if (cb != 0.0) t_.row(m) -= cb * t_.row(i);
    }
  }

  Eigen::VectorXd primal(int n) const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < rows(); ++i) {
      if (basis_[i] < n) x(basis_[i]) = t_(i, rhs());
    }
    return x;
  }

  int structural() const { return structural_; }

 private:
  RowMatrix t_;
  std::vector<int> basis_;
  int structural_;
  double tol_;
  int bland_after_;
};

}  // namespace

Solution solve(const Problem& problem, const Options& options) {
  const int m = static_cast<int>(problem.a.rows());
  const int n = static_cast<int>(problem.a.cols());
  if (problem.b.size() != m || problem.c.size() != n) {
    throw PreconditionError("lp::solve: inconsistent problem dimensions");
  }
  const double tol = options.tolerance;
  const int cap = options.max_iterations > 0 ? options.max_iterations : 50 * (n + m);

  Eigen::VectorXd sign = Eigen::VectorXd::Ones(m);
  for (int i = 0; i < m; ++i) {
    if (problem.b(i) < 0.0) sign(i) = -1.0;
  }
  const Eigen::MatrixXd a = sign.asDiagonal() * problem.a;
  const Eigen::VectorXd b = sign.asDiagonal() * problem.b;
  Eigen::VectorXd b_work = b;
  for (int i = 0; i < m; ++i) {
    // Golden-ratio offsets keep the perturbed right-hand sides pairwise distinct.
    const double frac = std::fmod(0.6180339887498949 * (i + 1), 1.0);
    b_work(i) += options.perturbation * (1.0 + std::abs(b(i))) * (0.5 + frac);
  }

  // Seed the basis with existing unit columns.
  std::vector<int> basis(m, -1);
  for (int j = 0; j < n; ++j) {
    int row = -1;
    bool unit = true;
    for (int i = 0; i < m && unit; ++i) {
      const double v = a(i, j);
      if (v == 0.0) continue;
      if (v == 1.0 && row < 0) {
        row = i;
      } else {
        unit = false;
      }
    }
    if (unit && row >= 0 && basis[row] < 0) basis[row] = j;
  }
  int artificial = 0;
  for (int i = 0; i < m; ++i) {
    if (basis[i] < 0) basis[i] = n + artificial++;
  }

  RowMatrix t = RowMatrix::Zero(m + 1, n + artificial + 1);
  t.topLeftCorner(m, n) = a;
  t.block(0, n + artificial, m, 1) = b_work;
  for (int i = 0; i < m; ++i) {
    if (basis[i] >= n) t(i, basis[i]) = 1.0;
  }
  Tableau tab(std::move(t), basis, n, tol, options.bland_after);

  Solution sol;
  int iterations = 0;
  if (artificial > 0) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + artificial);
    phase1.tail(artificial).setOnes();
    tab.load_costs(phase1);
    const Status s = tab.optimize(n + artificial, iterations, cap);
    sol.iterations = iterations;
    if (s == Status::iteration_limit) {
      sol.status = s;
      sol.x = tab.primal(n);
      return sol;
    }
    const double infeasibility = -tab.data()(m, tab.rhs());
    if (infeasibility > tol * (1.0 + b.lpNorm<Eigen::Infinity>()) * std::max(1, m)) {
      sol.status = Status::infeasible;
      sol.x = tab.primal(n);
      return sol;
    }
    // Drive zero-level artificials out of the basis where possible; rows
    // where that fails are redundant and keep their artificial at zero.
    for (int i = 0; i < m; ++i) {
      if (tab.basis()[i] < n) continue;
      int col = -1;
      double best = tol;
      for (int j = 0; j < n; ++j) {
        if (std::abs(tab.data()(i, j)) > best) {
          best = std::abs(tab.data()(i, j));
          col = j;
        }
      }
      if (col >= 0) tab.pivot(i, col);
    }
  }

  tab.load_costs(problem.c);
  sol.status = tab.optimize(n, iterations, cap);
  sol.iterations = iterations;
  sol.x = tab.primal(n);
  sol.objective = problem.c.dot(sol.x);
  if (sol.status != Status::optimal) return sol;

  // Multipliers from B^T pi = c_B on the sign-normalized rows.
  Eigen::MatrixXd basis_matrix(m, m);
  Eigen::VectorXd cb(m);
  for (int i = 0; i < m; ++i) {
    const int j = tab.basis()[i];
    if (j < n) {
      basis_matrix.col(i) = a.col(j);
      cb(i) = problem.c(j);
    } else {
      basis_matrix.col(i).setZero();
      // Artificial j - n sits on the row where it was created.
      for (int r = 0; r < m; ++r) {
        if (basis[r] == j) basis_matrix(r, i) = 1.0;
      }
      cb(i) = 0.0;
    }
  }
  const auto lu = basis_matrix.partialPivLu();
  const Eigen::VectorXd pi = lu.transpose().solve(cb);
  sol.duals = sign.asDiagonal() * pi;
  if (options.perturbation > 0.0) {
    const Eigen::VectorXd xb = lu.solve(b);
    sol.x.setZero();
    for (int i = 0; i < m; ++i) {
      const int j = tab.basis()[i];
      if (j < n) sol.x(j) = std::max(0.0, xb(i));
    }
    sol.objective = problem.c.dot(sol.x);
  }
  return sol;
}

}  // namespace whitney::lp
