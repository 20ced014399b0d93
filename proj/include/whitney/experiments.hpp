#pragma once

#include <string>
#include <vector>

#include "whitney/config.hpp"
#include "whitney/report.hpp"

namespace whitney {

struct RunResult {
  std::vector<ResultRow> rows;
  /// Rows violating a hard assertion (lower Whitney margin, K bracket order).
  int hard_failures = 0;
  /// Rows with quantity `error`.
  int errors = 0;
};

/// Shrink sweep Q_k (k = 0..shrink_levels) of E_r, Omega_r(f, delta(Q_k)) and,
/// when enabled, W_r, with ratios and the exact lower-bound margin.
RunResult run_whitney(const ExperimentConfig& cfg);
/// t-sweep t_k = t-bar * factor^k of the K-functional bracket, Omega_r, the
/// smoother chain on Q_[d] and the subdivision constant.
RunResult run_johnen(const ExperimentConfig& cfg);
/// Shrink sweep of ||f - T_r f|| against the bound sum (Sobolev entries).
RunResult run_taylor(const ExperimentConfig& cfg);
/// Derivative-inequality ratios on a fixed d = 1 box for t = delta / 2^j.
RunResult run_lemma21(const ExperimentConfig& cfg);

/// omega, w per non-empty e and their sums at cfg.t (default delta(Q)).
RunResult run_modulus(const ExperimentConfig& cfg);
/// E_r for p in {1, 2, inf}.
RunResult run_bestapprox(const ExperimentConfig& cfg);
/// K bracket and Omega at cfg.t (default t-bar).
RunResult run_kfunc(const ExperimentConfig& cfg);

/// Dispatch by subcommand name; throws ConfigError for unknown names.
RunResult run_experiment(const std::string& name, const ExperimentConfig& cfg);

}  // namespace whitney
