#include "whitney/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <limits>
#include <mutex>
#include <thread>

#include "whitney/best_approx.hpp"
#include "whitney/differences.hpp"
#include "whitney/error.hpp"
#include "whitney/format.hpp"
#include "whitney/functions.hpp"
#include "whitney/kfunctional.hpp"
#include "whitney/smoother.hpp"

namespace whitney {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
// Denominators below this are treated as zero and the ratio is not applicable.
constexpr double kNegligible = 1e-12;

double ratio(double num, double den) { return den > kNegligible ? num / den : kNaN; }

bool best_approx_p(double p) { return p == 1.0 || p == 2.0 || std::isinf(p); }

std::string subset_label(const SubsetMask& e) {
  std::string s = "e=";
  for (std::size_t i : e.members()) s += std::to_string(i + 1);
  return s;
}

// Fixed fields shared by every row of one task.
struct RowStamp {
  const FunctionSpec* f = nullptr;
  MultiIndex r;
  double p = 0.0;
  Box box;
  std::string t;

  ResultRow make(std::string experiment, Quantity quantity, double value) const {
    ResultRow row;
    row.experiment = std::move(experiment);
    row.function_id = f->id();
    row.d = f->dim();
    row.r = r.to_string();
    row.p = p;
    row.box = box.to_string();
    row.t = t;
    row.quantity = quantity;
    row.value = value;
    return row;
  }
};

struct TaskOutput {
  std::vector<ResultRow> rows;
  int hard_failures = 0;
};

struct Task {
  std::string experiment;
  RowStamp stamp;
  std::function<TaskOutput()> body;
};

int worker_count(const ExperimentConfig& cfg, std::size_t tasks) {
  const int jobs = std::max(1, cfg.jobs);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs), std::max<std::size_t>(tasks, 1)));
}

RunResult execute(const std::vector<Task>& tasks, const ExperimentConfig& cfg) {
  std::vector<TaskOutput> outputs(tasks.size());
  std::vector<int> failed(tasks.size(), 0);
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& task = tasks[i];
      const auto start = std::chrono::steady_clock::now();
      try {
        outputs[i] = task.body();
      } catch (const std::exception& ex) {
        outputs[i] = {{task.stamp.make(task.experiment, Quantity::error, kNaN)}, 0};
        failed[i] = 1;
        std::lock_guard<std::mutex> lock(log_mutex);
        std::clog << "whitney-lab: " << task.experiment << " " << task.stamp.f->id() << " r=" << task.stamp.r.to_string()
                  << " p=" << format_real(task.stamp.p) << " t=" << task.stamp.t << ": " << ex.what() << "\n";
      }
      if (cfg.timing) {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        for (ResultRow& row : outputs[i].rows) row.runtime_ms = ms.count();
      }
    }
  };

  const int n = worker_count(cfg, tasks.size());
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  RunResult result;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    result.hard_failures += outputs[i].hard_failures;
    result.errors += failed[i];
    for (ResultRow& row : outputs[i].rows) result.rows.push_back(std::move(row));
  }
  return result;
}

// Calls fn(f, r, p) in config enumeration order: dimension, function, order, p.
template <class Fn>
void for_each_case(const ExperimentConfig& cfg, Fn&& fn) {
  for (std::size_t d : cfg.dimensions) {
    for (const std::string& id : cfg.function_ids) {
      const FunctionSpec& f = corpus_entry(id);
      if (f.dim() != d) continue;
      for (const MultiIndex& r : cfg.orders) {
        if (r.dim() != d) continue;
        for (double p : cfg.p_values) fn(f, r, p);
      }
    }
  }
}

BestApproxOptions fit_options(const ExperimentConfig& cfg) {
  BestApproxOptions opts;
  opts.grid = cfg.resolution.fit_grid;
  opts.quad = cfg.resolution.quad;
  return opts;
}

KFunctionalConfig k_config(const ExperimentConfig& cfg) {
  return {cfg.resolution.quad, cfg.resolution.h_grid, true};
}

StepVector step_for(const ExperimentConfig& cfg, std::size_t d, const StepVector& fallback) {
  if (!cfg.t) return fallback;
  const std::vector<double>& t = *cfg.t;
  if (t.size() == 1) return StepVector::constant(d, t.front());
  if (t.size() == d) return StepVector(t);
  throw ConfigError("'t' does not match dimension " + std::to_string(d));
}

bool is_sobolev_to(const FunctionSpec& f, const MultiIndex& r) {
  return f.smoothness() == Smoothness::sobolev && f.has_derivative(r);
}

}  // namespace

RunResult run_whitney(const ExperimentConfig& cfg) {
  std::vector<Task> tasks;
  for_each_case(cfg, [&](const FunctionSpec& f, const MultiIndex& r, double p) {
    for (int k = 0; k <= cfg.shrink_levels; ++k) {
      const Box qk = cfg.box_for(f.dim()).shrink_from_lower(k);
      RowStamp stamp{&f, r, p, qk, qk.size().to_string()};
      tasks.push_back({"whitney", stamp, [&cfg, &f, r, p, qk, stamp] {
                         TaskOutput out;
                         const StepVector delta = qk.size();
                         const auto& res = cfg.resolution;
                         const bool fit = best_approx_p(p);
                         double e_r = 0.0;
                         if (fit) {
                           e_r = best_approx(f, r, p, qk, fit_options(cfg)).error;
                           out.rows.push_back(stamp.make("whitney", Quantity::E_r, e_r));
                         }
                         const double omega = total_modulus(f, r, delta, p, qk, res.h_grid, res.quad);
                         out.rows.push_back(stamp.make("whitney", Quantity::Omega, omega));
                         double w = 0.0;
                         if (cfg.mean_modulus) {
                           w = total_p_mean_modulus(f, r, delta, p, qk, res.quad, res.h_grid);
                           out.rows.push_back(stamp.make("whitney", Quantity::W, w));
                         }
                         if (fit) {
                           const double margin = omega - whitney_lower_constant(r) * e_r;
                           out.rows.push_back(stamp.make("whitney:E/Omega", Quantity::ratio, ratio(e_r, omega)));
                           out.rows.push_back(stamp.make("whitney", Quantity::margin, margin));
                           if (margin > 1e-6 * (1.0 + omega)) ++out.hard_failures;
                           if (cfg.mean_modulus) {
                             out.rows.push_back(stamp.make("whitney:E/W", Quantity::ratio, ratio(e_r, w)));
                           }
                         }
                         if (cfg.mean_modulus) {
                           out.rows.push_back(stamp.make("whitney:W/Omega", Quantity::ratio, ratio(w, omega)));
                         }
                         return out;
                       }});
    }
  });
  return execute(tasks, cfg);
}

RunResult run_johnen(const ExperimentConfig& cfg) {
  std::vector<Task> tasks;
  for_each_case(cfg, [&](const FunctionSpec& f, const MultiIndex& r, double p) {
    const Box q = cfg.box_for(f.dim());
    const StepVector t_bar = smoothing_limit(r, q);
    for (int k = 0; k < cfg.t_sweep; ++k) {
      StepVector t = t_bar;
      for (std::size_t i = 0; i < t.dim(); ++i) t[i] *= std::pow(cfg.t_sweep_factor, k);
      RowStamp stamp{&f, r, p, q, t.to_string()};
      tasks.push_back({"johnen", stamp, [&cfg, &f, r, p, q, t, stamp] {
                         TaskOutput out;
                         const KFunctionalConfig kc = k_config(cfg);
                         const KBracket b = k_functional_bracket(f, r, t, p, q, kc);
                         out.rows.push_back(stamp.make("johnen", Quantity::K_lower, b.lower));
                         out.rows.push_back(stamp.make("johnen", Quantity::K_upper, b.upper));
                         out.rows.push_back(stamp.make("johnen", Quantity::Omega, b.omega));
                         out.rows.push_back(stamp.make("johnen:upper/Omega", Quantity::ratio, ratio(b.upper, b.omega)));
                         out.rows.push_back(stamp.make("johnen:lower_check", Quantity::ratio,
                                                       ratio(b.lower * whitney_lower_constant(r), b.omega)));
                         if (b.lower > b.upper * (1.0 + 1e-9) + 1e-12) ++out.hard_failures;

                         const SmootherTerms chain =
                             smoother_terms(f, r, t, p, q, SubsetMask::full(q.dim()), cfg.resolution.quad);
                         out.rows.push_back(
                             stamp.make("johnen:chain_residual", Quantity::ratio, ratio(chain.residual, b.omega)));
                         const auto subsets = SubsetMask::all_nonempty(q.dim());
                         for (std::size_t i = 0; i < subsets.size(); ++i) {
                           out.rows.push_back(stamp.make("johnen:chain_derivative:" + subset_label(subsets[i]),
                                                         Quantity::ratio,
                                                         ratio(chain.weighted_derivatives[i], b.omega_terms[i])));
                         }

                         const SubdivisionReport sub = subdivision_check(f, r, t, p, q, kc);
                         out.rows.push_back(stamp.make("johnen:subdivision", Quantity::ratio, sub.ratio.value_or(kNaN)));
                         return out;
                       }});
    }
  });
  return execute(tasks, cfg);
}

RunResult run_taylor(const ExperimentConfig& cfg) {
  std::vector<Task> tasks;
  for_each_case(cfg, [&](const FunctionSpec& f, const MultiIndex& r, double p) {
    if (!is_sobolev_to(f, r)) return;
    for (int k = 0; k <= cfg.shrink_levels; ++k) {
      const Box qk = cfg.box_for(f.dim()).shrink_from_lower(k);
      RowStamp stamp{&f, r, p, qk, qk.size().to_string()};
      tasks.push_back({"taylor", stamp, [&cfg, &f, r, p, qk, stamp] {
                         TaskOutput out;
                         const Point x0(qk.lower().begin(), qk.lower().end());
                         const double err = taylor_error(f, r, p, qk, x0, cfg.resolution.quad);
                         const double bound = taylor_remainder_bound(f, r, p, qk, cfg.resolution.quad);
                         out.rows.push_back(stamp.make("taylor", Quantity::taylor_err, err));
                         out.rows.push_back(stamp.make("taylor", Quantity::taylor_bound, bound));
                         out.rows.push_back(stamp.make("taylor:err/bound", Quantity::ratio, ratio(err, bound)));
                         return out;
                       }});
    }
  });
  return execute(tasks, cfg);
}

RunResult run_lemma21(const ExperimentConfig& cfg) {
  std::vector<Task> tasks;
  for_each_case(cfg, [&](const FunctionSpec& f, const MultiIndex& r, double p) {
    if (f.dim() != 1 || !is_sobolev_to(f, r)) return;
    const Box q = cfg.box_for(1);
    RowStamp stamp{&f, r, p, q, q.size().to_string()};
    tasks.push_back({"lemma21", stamp, [&cfg, &f, r, p, q, stamp] {
                       TaskOutput out;
                       const auto& quad = cfg.resolution.quad;
                       const int order = r[0];
                       auto derivative_norm = [&](int k, double norm_p) {
                         return lp_norm([&](const Point& x) { return f.derivative(MultiIndex{k}, x); }, q, norm_p,
                                        quad);
                       };
                       const double f_p = derivative_norm(0, p);
                       const double top_p = derivative_norm(order, p);
                       std::vector<double> norm_p(order), norm_inf(order);
                       for (int k = 0; k < order; ++k) {
                         norm_p[k] = derivative_norm(k, p);
                         norm_inf[k] = derivative_norm(k, kInf);
                       }
                       const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
                       for (int k = 0; k < order; ++k) {
                         for (int j = 0; j <= cfg.shrink_levels; ++j) {
                           const double t = q.length(0) / std::ldexp(1.0, j);
                           const double den = f_p + std::pow(t, order) * top_p;
                           RowStamp at = stamp;
                           at.t = format_real(t);
                           const std::string suffix = ":k=" + std::to_string(k);
                           out.rows.push_back(at.make("lemma21:deriv_p" + suffix, Quantity::ratio,
                                                      ratio(std::pow(t, k) * norm_p[k], den)));
                           out.rows.push_back(at.make("lemma21:deriv_inf" + suffix, Quantity::ratio,
                                                      ratio(std::pow(t, k + inv_p) * norm_inf[k], den)));
                         }
                       }
                       return out;
                     }});
  });
  return execute(tasks, cfg);
}

RunResult run_modulus(const ExperimentConfig& cfg) {
  std::vector<Task> tasks;
  for_each_case(cfg, [&](const FunctionSpec& f, const MultiIndex& r, double p) {
    const Box q = cfg.box_for(f.dim());
    const StepVector t = step_for(cfg, f.dim(), q.size());
    RowStamp stamp{&f, r, p, q, t.to_string()};
    tasks.push_back({"modulus", stamp, [&cfg, &f, r, p, q, t, stamp] {
                       TaskOutput out;
                       const auto& res = cfg.resolution;
                       double omega_sum = 0.0;
                       double w_sum = 0.0;
                       for (const SubsetMask& e : SubsetMask::all_nonempty(q.dim())) {
                         const double omega = modulus({f, r, e, t, p, q, res.h_grid, res.quad});
                         const double w = p_mean_modulus(f, project(r, e), t, p, q, res.quad, res.h_grid);
                         omega_sum += omega;
                         w_sum += w;
                         out.rows.push_back(stamp.make("modulus:" + subset_label(e), Quantity::omega, omega));
                         out.rows.push_back(stamp.make("modulus:" + subset_label(e), Quantity::w, w));
                       }
                       out.rows.push_back(stamp.make("modulus", Quantity::Omega, omega_sum));
                       out.rows.push_back(stamp.make("modulus", Quantity::W, w_sum));
                       return out;
                     }});
  });
  return execute(tasks, cfg);
}

RunResult run_bestapprox(const ExperimentConfig& cfg) {
  std::vector<Task> tasks;
  for_each_case(cfg, [&](const FunctionSpec& f, const MultiIndex& r, double p) {
    const Box q = cfg.box_for(f.dim());
    RowStamp stamp{&f, r, p, q, q.size().to_string()};
    tasks.push_back({"bestapprox", stamp, [&cfg, &f, r, p, q, stamp] {
                       TaskOutput out;
                       const BestApproximation best = best_approx(f, r, p, q, fit_options(cfg));
                       out.rows.push_back(stamp.make("bestapprox", Quantity::E_r, best.error));
                       return out;
                     }});
  });
  return execute(tasks, cfg);
}

RunResult run_kfunc(const ExperimentConfig& cfg) {
  std::vector<Task> tasks;
  for_each_case(cfg, [&](const FunctionSpec& f, const MultiIndex& r, double p) {
    const Box q = cfg.box_for(f.dim());
    const StepVector t = step_for(cfg, f.dim(), smoothing_limit(r, q));
    RowStamp stamp{&f, r, p, q, t.to_string()};
    tasks.push_back({"kfunc", stamp, [&cfg, &f, r, p, q, t, stamp] {
                       TaskOutput out;
                       const KBracket b = k_functional_bracket(f, r, t, p, q, k_config(cfg));
                       out.rows.push_back(stamp.make("kfunc", Quantity::K_lower, b.lower));
                       out.rows.push_back(stamp.make("kfunc", Quantity::K_upper, b.upper));
                       out.rows.push_back(stamp.make("kfunc", Quantity::Omega, b.omega));
                       if (b.lower > b.upper * (1.0 + 1e-9) + 1e-12) ++out.hard_failures;
                       return out;
                     }});
  });
  return execute(tasks, cfg);
}

RunResult run_experiment(const std::string& name, const ExperimentConfig& cfg) {
  if (name == "whitney") return run_whitney(cfg);
  if (name == "johnen") return run_johnen(cfg);
  if (name == "taylor") return run_taylor(cfg);
  if (name == "lemma21") return run_lemma21(cfg);
  if (name == "modulus") return run_modulus(cfg);
  if (name == "bestapprox") return run_bestapprox(cfg);
  if (name == "kfunc") return run_kfunc(cfg);
  throw ConfigError("unknown experiment '" + name + "'");
}

}  // namespace whitney
