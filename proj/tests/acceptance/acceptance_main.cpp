#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "whitney/best_approx.hpp"
#include "whitney/differences.hpp"
#include "whitney/experiments.hpp"
#include "whitney/functions.hpp"
#include "whitney/kfunctional.hpp"
#include "whitney/smoother.hpp"

using namespace whitney;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const std::vector<double> kPs{1.0, 2.0, kInf};

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

std::string p_name(double p) { return std::isinf(p) ? "inf" : fmt("%g", p); }

// All r with 1 <= r_i <= max_order.
std::vector<MultiIndex> orders_up_to(std::size_t d, int max_order) {
  std::vector<MultiIndex> out;
  if (d == 1) {
    for (int a = 1; a <= max_order; ++a) out.push_back(MultiIndex{a});
  } else {
    for (int a = 1; a <= max_order; ++a) {
      for (int b = 1; b <= max_order; ++b) out.push_back(MultiIndex{a, b});
    }
  }
  return out;
}

QuadratureSpec coarse_quad() { return QuadratureSpec::uniform(16, 33, 8); }
constexpr int kCoarseHGrid = 17;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------- 1
Outcome lower_whitney_bound() {
  ExperimentConfig cfg;
  cfg.dimensions = {1, 2};
  for (const auto& f : corpus()) cfg.function_ids.push_back(f.id());
  cfg.orders = orders_up_to(1, 3);
  for (const auto& r : orders_up_to(2, 3)) cfg.orders.push_back(r);
  cfg.p_values = kPs;
  cfg.shrink_levels = 4;
  cfg.mean_modulus = false;
  const auto start = std::chrono::steady_clock::now();
  const RunResult res = run_whitney(cfg);
  const double wall = seconds_since(start);

  int margins = 0;
  int violations = 0;
  double worst = -kInf;
  double omega = 0.0;
  for (const ResultRow& row : res.rows) {
    if (row.quantity == Quantity::Omega) omega = row.value;
    if (row.quantity != Quantity::margin) continue;
    ++margins;
    const double slack = row.value - 1e-6 * (1.0 + omega);
    worst = std::max(worst, slack);
    if (slack > 0.0) ++violations;
  }
  Outcome out;
  out.pass = violations == 0 && res.errors == 0 && margins > 0 && wall < 600.0;
  out.detail = fmt("%d margins, %d violations, %d failed rows, max(margin - tol) = %.3g, wall %.0f s (limit 600 s)",
                   margins, violations, res.errors, worst, wall);
  return out;
}

// ---------------------------------------------------------------- 2
Outcome annihilation() {
  int cases = 0;
  int failures = 0;
  std::string first;
  const QuadratureSpec quad = coarse_quad();
  for (const auto& f : corpus()) {
    if (!f.polynomial_degrees()) continue;
    for (const auto& r : orders_up_to(f.dim(), 3)) {
      if (!in_polynomial_space(f, r)) continue;
      for (int level : {0, 2}) {
        const Box q = Box::cube(f.dim(), -1.0, 1.0).shrink_from_lower(level);
        for (double p : kPs) {
          ++cases;
          const double e = best_approx(f, r, p, q).error;
          const double omega = total_modulus(f, r, q.size(), p, q, kCoarseHGrid, quad);
          const double w = total_p_mean_modulus(f, r, q.size(), p, q, quad, kCoarseHGrid);
          const double e_tol = p == 2.0 ? 1e-10 : 1e-8;
          if (e > e_tol || omega > 1e-10 || w > 1e-10) {
            if (failures++ == 0) {
              first = fmt(" first: %s r=%s p=%s E=%.3g Omega=%.3g W=%.3g", f.id().c_str(), r.to_string().c_str(),
                          p_name(p).c_str(), e, omega, w);
            }
          }
        }
      }
    }
  }
  return {failures == 0 && cases > 0, fmt("%d cases (f in P_r, 2 boxes, p in {1,2,inf}), %d failures", cases, failures) + first};
}

// ---------------------------------------------------------------- 3
Outcome analytic_oracles() {
  struct Check {
    std::string name;
    double got;
    double want;
  };
  std::vector<Check> checks;
  const FunctionSpec& x = corpus_entry("mono_d1_1");
  const Box unit1 = Box::unit(1);
  const MultiIndex r1{1};
  checks.push_back({"E(x; r=1, inf, [0,1])", best_approx(x, r1, kInf, unit1).error, 0.5});
  checks.push_back({"omega(x, 1)_inf", modulus({x, r1, SubsetMask::full(1), StepVector{1.0}, kInf, unit1}), 1.0});
  checks.push_back({"E(x; r=1, 2, [0,1])", best_approx(x, r1, 2.0, unit1).error, std::sqrt(1.0 / 12.0)});
  checks.push_back({"w_1(x, 1)_1", p_mean_modulus(x, r1, StepVector{1.0}, 1.0, unit1), 1.0 / 3.0});

  const FunctionSpec& x2 = corpus_entry("mono_d1_2");
  const Box sym = Box::cube(1, -1.0, 1.0);
  const BestApproximation best = best_approx(x2, MultiIndex{2}, kInf, sym);
  checks.push_back({"E(x^2; r=2, inf, [-1,1])", best.error, 0.5});
  // Equioscillation: the residual takes +-E with alternating signs at -1, 0, 1.
  double eq = 0.0;
  int sign = 0;
  bool alternates = true;
  for (double t : {-1.0, 0.0, 1.0}) {
    const Point pt{t};
    const double res = x2(pt) - best.poly(pt);
    eq = std::max(eq, std::abs(std::abs(res) - 0.5));
    const int s = res > 0 ? 1 : -1;
    if (sign != 0 && s == sign) alternates = false;
    sign = s;
  }
  checks.push_back({"equioscillation |res| at -1,0,1", 0.5 + eq, 0.5});

  const FunctionSpec& xy = corpus_entry("mono_d2_1x1");
  checks.push_back({"Omega(x1 x2; (1,1), inf)", total_modulus(xy, MultiIndex{1, 1}, StepVector{1.0, 1.0}, kInf, Box::unit(2)), 3.0});

  int bad = alternates ? 0 : 1;
  std::string detail;
  for (const auto& c : checks) {
    const double err = std::abs(c.got - c.want);
    if (err > 1e-4) ++bad;
    detail += fmt("%s%s=%.6g (err %.1e)", detail.empty() ? "" : "; ", c.name.c_str(), c.got, err);
  }
  detail += alternates ? "; signs alternate" : "; signs do NOT alternate";
  return {bad == 0, detail};
}

// ---------------------------------------------------------------- 4
std::vector<std::vector<Orientation>> all_orientations(std::size_t d) {
  std::vector<std::vector<Orientation>> out;
  for (const SubsetMask& e : SubsetMask::all(d)) {
    std::vector<Orientation> o(d);
    for (std::size_t i = 0; i < d; ++i) o[i] = e.contains(i) ? Orientation::forward : Orientation::backward;
    out.push_back(o);
  }
  return out;
}

// Central differences of sixth-order accuracy for derivatives 1..3, offsets -4..4.
const std::vector<double>& fd_stencil(int m) {
  static const std::vector<std::vector<double>> table{
      {0.0, -1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60, 0.0},
      {0.0, 1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90, 0.0},
      {-7.0 / 240, 3.0 / 10, -169.0 / 120, 61.0 / 30, 0.0, -61.0 / 30, 169.0 / 120, -3.0 / 10, 7.0 / 240},
  };
  return table[m - 1];
}

double finite_difference(const SmoothedFunction& g, const MultiIndex& order, Point x, double h, std::size_t axis = 0) {
  if (axis == x.size()) return g(x);
  if (order[axis] == 0) return finite_difference(g, order, x, h, axis + 1);
  const auto& c = fd_stencil(order[axis]);
  const double x0 = x[axis];
  double sum = 0.0;
  for (int j = -4; j <= 4; ++j) {
    if (c[j + 4] == 0.0) continue;
    x[axis] = x0 + j * h;
    sum += c[j + 4] * finite_difference(g, order, x, h, axis + 1);
  }
  return sum / std::pow(h, order[axis]);
}

Outcome smoother_correctness() {
  const QuadratureSpec quad{};
  // (a) reproduction of P_r.
  int reproduce_cases = 0;
  double reproduce_err = 0.0;
  for (const auto& f : corpus()) {
    if (!f.polynomial_degrees()) continue;
    for (const auto& r : orders_up_to(f.dim(), 3)) {
      if (!in_polynomial_space(f, r)) continue;
      const Box q = Box::unit(f.dim());
      for (const auto& orient : all_orientations(f.dim())) {
        for (double scale : {1.0, 1.0 / 3.0}) {
          StepVector t = smoothing_limit(r, q);
          for (std::size_t i = 0; i < t.dim(); ++i) t[i] *= scale;
          const SmoothedFunction g = smooth_mixed(f, r, t, q, quad, orient);
          ++reproduce_cases;
          TensorGrid::lobatto(g.valid_domain(), 5).for_each([&](const Point& x, double) {
            reproduce_err = std::max(reproduce_err, std::abs(g(x) - f(x)));
          });
        }
      }
    }
  }

  // (b) smoothed_derivative against finite differences of smooth_mixed.
  int fd_cases = 0;
  double fd_err = 0.0;
  std::mt19937 rng(20240611);
  const double h = 0.05;
  for (const char* id : {"exp_d1", "sin_d1", "exp_d2", "sin_d2"}) {
    const FunctionSpec& f = corpus_entry(id);
    const Box q = Box::unit(f.dim());
    for (const auto& r : orders_up_to(f.dim(), 3)) {
      const StepVector t = smoothing_limit(r, q);
      const SmoothedFunction g = smooth_mixed(f, r, t, q, quad);
      const Box& dom = g.valid_domain();
      std::vector<Point> points;
      for (int k = 0; k < 10; ++k) {
        Point x(f.dim());
        for (std::size_t i = 0; i < x.size(); ++i) {
          std::uniform_real_distribution<double> u(dom.lower(i), dom.upper(i));
          x[i] = u(rng);
        }
        points.push_back(x);
      }
      for (const SubsetMask& e : SubsetMask::all_nonempty(f.dim())) {
        const SmoothedFunction gd = smoothed_derivative(f, r, t, e, q, quad);
        const MultiIndex order = project(r, e);
        std::vector<double> exact, approx;
        for (const auto& x : points) {
          exact.push_back(gd(x));
          approx.push_back(finite_difference(g, order, x, h));
        }
        double scale = 0.0;
        for (double v : exact) scale = std::max(scale, std::abs(v));
        for (std::size_t k = 0; k < exact.size(); ++k) {
          const double den = std::max(std::abs(exact[k]), 1e-3 * scale);
          fd_err = std::max(fd_err, std::abs(exact[k] - approx[k]) / den);
        }
        ++fd_cases;
      }
    }
  }

  // (c) P^1_t(x) = x + t/2.
  double linear_err = 0.0;
  const FunctionSpec& x = corpus_entry("mono_d1_1");
  for (double t : {0.25, 0.1, 0.01}) {
    const SmoothedFunction g = smooth_mixed(x, MultiIndex{1}, StepVector{t}, Box::unit(1), quad);
    TensorGrid::lobatto(g.valid_domain(), 9).for_each([&](const Point& pt, double) {
      linear_err = std::max(linear_err, std::abs(g(pt) - (pt[0] + t / 2)));
    });
  }

  Outcome out;
  out.pass = reproduce_err <= 1e-9 && fd_err <= 1e-5 && linear_err <= 1e-10 && reproduce_cases > 0;
  out.detail = fmt("reproduction max err %.2e over %d cases (tol 1e-9); derivative vs FD max rel err %.2e over %d "
                   "cases x 10 points (tol 1e-5); P^1_t(x) - (x + t/2) max %.2e (tol 1e-10)",
                   reproduce_err, reproduce_cases, fd_err, fd_cases, linear_err);
  return out;
}

// ---------------------------------------------------------------- 5
std::vector<MultiIndex> sweep_orders(std::size_t d) {
  if (d == 1) return {MultiIndex{1}, MultiIndex{2}, MultiIndex{3}};
  return {MultiIndex{1, 1}, MultiIndex{2, 1}, MultiIndex{2, 2}, MultiIndex{3, 3}};
}

std::vector<StepVector> t_sweep(const MultiIndex& r, const Box& q, int points = 12) {
  const StepVector t_bar = smoothing_limit(r, q);
  std::vector<StepVector> out;
  for (int k = 0; k < points; ++k) {
    StepVector t = t_bar;
    for (std::size_t i = 0; i < t.dim(); ++i) t[i] *= std::pow(2.0, -0.5 * k);
    out.push_back(t);
  }
  return out;
}

Outcome k_functional() {
  KFunctionalConfig kc{coarse_quad(), kCoarseHGrid, true};
  int runs = 0;
  int order_violations = 0;
  int series = 0;
  int unstable = 0;
  double worst = 0.0;
  std::string worst_case;
  std::string unstable_cases;
  for (const auto& f : corpus()) {
    const Box q = Box::unit(f.dim());
    for (const auto& r : sweep_orders(f.dim())) {
      if (in_polynomial_space(f, r)) continue;
      for (double p : kPs) {
        std::vector<double> ratios;
        for (const StepVector& t : t_sweep(r, q)) {
          const KBracket b = k_functional_bracket(f, r, t, p, q, kc);
          ++runs;
          if (b.lower > b.upper * (1.0 + 1e-9) + 1e-12) ++order_violations;
          if (b.omega > 1e-12) ratios.push_back(b.upper / b.omega);
        }
        if (ratios.empty()) continue;
        ++series;
        const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
        const double spread = *hi / *lo;
        if (spread > worst) {
          worst = spread;
          worst_case = f.id() + " r=" + r.to_string() + " p=" + p_name(p);
        }
        if (spread > 10.0) {
          ++unstable;
          unstable_cases += fmt(" %s/r=%s/p=%s:%.3g", f.id().c_str(), r.to_string().c_str(), p_name(p).c_str(), spread);
        }
      }
    }
  }
  return {order_violations == 0 && unstable == 0,
          fmt("%d brackets, %d with lower > upper; %d (f,r,p) series, %d with max/min(upper/Omega) > 10; worst %.3g "
              "(%s)%s%s",
              runs, order_violations, series, unstable, worst, worst_case.c_str(),
              unstable_cases.empty() ? "" : "; unstable:", unstable_cases.c_str())};
}

// ---------------------------------------------------------------- 6
Outcome taylor_surrogate() {
  const QuadratureSpec quad{};
  int series = 0;
  int unstable = 0;
  double worst = 0.0;
  std::string worst_case;
  for (const auto& f : corpus()) {
    if (!f.is_sobolev()) continue;
    const Box base = Box::cube(f.dim(), 0.0, 1.0 / 64.0);
    for (const auto& r : orders_up_to(f.dim(), 3)) {
      if (in_polynomial_space(f, r) || !f.has_derivative(r)) continue;
      for (double p : kPs) {
        std::vector<double> ratios;
        for (int level = 0; level <= 6; ++level) {
          const Box q = base.shrink_from_lower(level);
          const Point x0(q.lower().begin(), q.lower().end());
          ratios.push_back(taylor_error(f, r, p, q, x0, quad) / taylor_remainder_bound(f, r, p, q, quad));
        }
        ++series;
        const double m = median(ratios);
        double dev = 0.0;
        for (double v : ratios) dev = std::max(dev, std::abs(v / m - 1.0));
        if (!(dev <= 0.2)) ++unstable;
        if (!(dev <= worst)) {
          worst = dev;
          worst_case = f.id() + " r=" + r.to_string() + " p=" + p_name(p);
        }
      }
    }
  }
  const FunctionSpec& ex = corpus_entry("exp_d1");
  const Box unit = Box::unit(1);
  const Point zero{0.0};
  const double err = taylor_error(ex, MultiIndex{1}, kInf, unit, zero, quad);
  const double bound = taylor_remainder_bound(ex, MultiIndex{1}, kInf, unit, quad);
  const double target = (std::exp(1.0) - 2.0) / std::exp(1.0);
  const bool exp_ok = std::abs(err / bound - target) <= 1e-3;
  return {unstable == 0 && exp_ok,
          fmt("%d series on [0,1/64]^d with 6 halvings, %d outside +-20%% of median (worst dev %.3f, %s); "
              "e^x on [0,1]: err %.6f bound %.6f ratio %.6f vs (e-2)/e = %.6f %s",
              series, unstable, worst, worst_case.c_str(), err, bound, err / bound, target,
              exp_ok ? "ok" : "MISMATCH")};
}

// ---------------------------------------------------------------- 7
Outcome mean_vs_sup_modulus() {
  const QuadratureSpec quad = coarse_quad();
  int cases = 0;
  int above = 0;
  int above_finite_p = 0;
  int inf_mismatch = 0;
  double worst_excess = 0.0;
  std::string worst_case;
  double worst_inf = 0.0;
  for (const auto& f : corpus()) {
    const Box q = Box::unit(f.dim());
    for (const auto& r : orders_up_to(f.dim(), 2)) {
      if (f.dim() == 2 && r[0] != r[1]) continue;
      for (double p : kPs) {
        const double omega = total_modulus(f, r, q.size(), p, q, kCoarseHGrid, quad);
        const double w = total_p_mean_modulus(f, r, q.size(), p, q, quad, kCoarseHGrid);
        ++cases;
        if (w > omega + 1e-8) {
          ++above;
          if (!std::isinf(p)) ++above_finite_p;
          if (w - omega > worst_excess) {
            worst_excess = w - omega;
            worst_case = f.id() + " r=" + r.to_string() + " p=" + p_name(p) + fmt(" W=%.4g Omega=%.4g", w, omega);
          }
        }
        if (std::isinf(p)) {
          const double gap = std::abs(w - omega) / (1.0 + omega);
          worst_inf = std::max(worst_inf, gap);
          if (gap > 1e-6) ++inf_mismatch;
        }
      }
    }
  }
  return {above == 0 && inf_mismatch == 0,
          fmt("%d cases; W > Omega + 1e-8 in %d (%d with p < inf; worst excess %.3g at %s); p=inf max |W-Omega|/(1+Omega) "
              "%.2e, %d above 1e-6",
              cases, above, above_finite_p, worst_excess, worst_case.c_str(), worst_inf, inf_mismatch)};
}

// ---------------------------------------------------------------- 8
bool bounded_series(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return v.back() <= 2.0 * median(v);
}

Outcome empirical_constants() {
  ExperimentConfig cfg;
  cfg.dimensions = {1};
  for (const auto& f : corpus_of_dim(1)) {
    if (f.is_sobolev()) cfg.function_ids.push_back(f.id());
  }
  cfg.orders = orders_up_to(1, 3);
  cfg.p_values = kPs;
  cfg.shrink_levels = 10;
  const RunResult lemma = run_lemma21(cfg);
  std::map<std::string, std::vector<double>> series;
  for (const ResultRow& row : lemma.rows) {
    if (row.quantity != Quantity::ratio || std::isnan(row.value)) continue;
    series[row.experiment + "|" + row.function_id + "|" + row.r + "|" + format_p(row.p)].push_back(row.value);
  }
  int lemma_growth = 0;
  double lemma_max = 0.0;
  for (const auto& [key, v] : series) {
    if (!bounded_series(v)) ++lemma_growth;
    for (double x : v) lemma_max = std::max(lemma_max, x);
  }

  KFunctionalConfig kc{coarse_quad(), kCoarseHGrid, true};
  int sub_series = 0;
  int sub_growth = 0;
  int lp_only_series = 0;
  int lp_only_growth = 0;
  double sub_max = 0.0;
  for (const auto& f : corpus()) {
    const Box q = Box::unit(f.dim());
    const std::vector<MultiIndex> orders =
        f.dim() == 1 ? std::vector<MultiIndex>{MultiIndex{1}, MultiIndex{2}} : std::vector<MultiIndex>{MultiIndex{1, 1}, MultiIndex{2, 2}};
    for (const auto& r : orders) {
      if (in_polynomial_space(f, r)) continue;
      for (double p : kPs) {
        std::vector<double> ratios;
        for (const StepVector& t : t_sweep(r, q)) {
          const SubdivisionReport rep = subdivision_check(f, r, t, p, q, kc);
          if (rep.ratio) ratios.push_back(*rep.ratio);
        }
        if (ratios.empty()) continue;
        const bool ok = bounded_series(ratios);
        if (f.is_sobolev()) {
          ++sub_series;
          if (!ok) ++sub_growth;
          for (double x : ratios) sub_max = std::max(sub_max, x);
        } else {
          ++lp_only_series;
          if (!ok) ++lp_only_growth;
        }
      }
    }
  }
  return {lemma_growth == 0 && sub_growth == 0 && lemma.errors == 0,
          fmt("derivative inequality: %zu series, %d with growth, max ratio %.3g; subdivision: %d Sobolev series, %d "
              "with growth, max ratio %.3g (Lp-only reported: %d series, %d with growth)",
              series.size(), lemma_growth, lemma_max, sub_series, sub_growth, sub_max, lp_only_series, lp_only_growth)};
}

// ---------------------------------------------------------------- 9
Outcome determinism() {
  ExperimentConfig cfg;
  cfg.dimensions = {1, 2};
  cfg.function_ids = {"exp_d1", "abspow_d1", "mono_d2_1x1", "runge_d2"};
  cfg.orders = {MultiIndex{2}, MultiIndex{1, 1}};
  cfg.p_values = kPs;
  cfg.shrink_levels = 1;
  cfg.t_sweep = 2;
  cfg.resolution.h_grid = kCoarseHGrid;
  cfg.resolution.quad = coarse_quad();
  auto run_all = [&](int jobs) {
    ExperimentConfig c = cfg;
    c.jobs = jobs;
    std::string text;
    for (const char* name : {"whitney", "johnen", "taylor", "lemma21", "modulus", "bestapprox", "kfunc"}) {
      text += to_csv(run_experiment(name, c).rows);
    }
    return text;
  };
  const std::string first = run_all(1);
  const std::string second = run_all(1);
  const std::string threaded = run_all(2);
  const bool same = first == second;
  const bool same_threaded = first == threaded;
  return {same && same_threaded, fmt("%zu bytes of CSV; consecutive runs %s; 1 vs 2 jobs %s", first.size(),
                                     same ? "identical" : "DIFFER", same_threaded ? "identical" : "DIFFER")};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "exact lower Whitney bound", lower_whitney_bound},
      {2, "annihilation of P_r", annihilation},
      {3, "analytic oracle cases", analytic_oracles},
      {4, "smoother correctness", smoother_correctness},
      {5, "K-functional bracket", k_functional},
      {6, "Taylor remainder surrogate", taylor_surrogate},
      {7, "W vs Omega", mean_vs_sup_modulus},
      {8, "empirical constants", empirical_constants},
      {9, "determinism", determinism},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    if (!out.pass) ++failed;
    std::printf("[%s] criterion %d (%s): %s [%.1f s]\n", out.pass ? "PASS" : "FAIL", c.id, c.title,
                out.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
