#include "whitney/kfunctional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "whitney/best_approx.hpp"
#include "whitney/error.hpp"

namespace whitney {

namespace {

double norm_of(const FunctionSpec& f, double p, const Box& d, const QuadratureSpec& quad) {
  return lp_norm([&](std::span<const double> x) { return f(x); }, d, p, adapted_quadrature(quad, f));
}

// g = f: sum over non-empty e of t^{r(e)} ||f^{(r(e))}||.
double self_value(const FunctionSpec& f, const MultiIndex& r, const StepVector& t, double p, const Box& d,
                  const QuadratureSpec& quad) {
  double sum = 0.0;
  for (const SubsetMask& e : SubsetMask::all_nonempty(d.dim())) {
    const MultiIndex k = project(r, e);
    sum += weight(t, r, e) *
           lp_norm([&](std::span<const double> x) { return f.derivative(k, x); }, d, p, quad);
  }
  return sum;
}

// g in P_r: every derivative term vanishes.
template <class G>
double polynomial_value(const FunctionSpec& f, const G& g, double p, const Box& d, const QuadratureSpec& quad) {
  return lp_norm([&](std::span<const double> x) { return f(x) - g(x); }, d, p, adapted_quadrature(quad, f));
}

bool within_limit(const MultiIndex& r, const StepVector& t, const Box& q) {
  const StepVector limit = smoothing_limit(r, q);
  for (std::size_t i = 0; i < q.dim(); ++i) {
    if (!(t[i] > 0.0) || t[i] > limit[i] * (1.0 + 1e-12)) return false;
  }
  return true;
}

std::vector<Orientation> orientation_for(const SubsetMask& e) {
  std::vector<Orientation> out(e.dim());
  for (std::size_t i = 0; i < e.dim(); ++i) out[i] = e.contains(i) ? Orientation::forward : Orientation::backward;
  return out;
}

Point centre(const Box& q) {
  Point x(q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) x[i] = 0.5 * (q.lower(i) + q.upper(i));
  return x;
}

void check_inputs(const FunctionSpec& f, const MultiIndex& r, const StepVector& t, const Box& q) {
  if (f.dim() != q.dim() || r.dim() != q.dim() || t.dim() != q.dim()) {
    throw PreconditionError("K-functional: dimension mismatch");
  }
  if (!r.is_positive()) throw PreconditionError("K-functional: need r_i >= 1");
  for (std::size_t i = 0; i < q.dim(); ++i) {
    if (!(t[i] > 0.0)) throw PreconditionError("K-functional: need t > 0");
  }
}

}  // namespace

double whitney_lower_constant(const MultiIndex& r) {
  double sum = 0.0;
  for (const SubsetMask& e : SubsetMask::all(r.dim())) {
    double prod = 1.0;
    for (std::size_t i : e.members()) prod *= std::ldexp(1.0, r[i]);
    sum += prod;
  }
  return sum;
}

Box quarter_subdomain(const Box& q, const SubsetMask& e) {
  std::vector<double> lo(q.dim());
  std::vector<double> hi(q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) {
    const double quarter = q.length(i) / 4.0;
    if (e.contains(i)) {
      lo[i] = q.lower(i);
      hi[i] = q.upper(i) - quarter;
    } else {
      lo[i] = q.lower(i) + quarter;
      hi[i] = q.upper(i);
    }
  }
  return Box(std::move(lo), std::move(hi));
}

double SmootherTerms::total() const {
  double sum = residual;
  for (double v : weighted_derivatives) sum += v;
  return sum;
}

SmootherTerms smoother_terms(const FunctionSpec& f, const MultiIndex& r, const StepVector& t, double p,
                             const Box& q, const SubsetMask& e, const QuadratureSpec& quad) {
  const auto orientation = orientation_for(e);
  const SmoothedFunction g = smooth_mixed(f, r, t, q, quad, orientation);
  const Box& domain = g.valid_domain();
  SmootherTerms terms;
  terms.residual =
      lp_norm([&](std::span<const double> x) { return f(x) - g(x); }, domain, p, g.quadrature(quad));
  for (const SubsetMask& s : SubsetMask::all_nonempty(q.dim())) {
    const SmoothedFunction gd = smoothed_derivative(f, r, t, s, q, quad, orientation);
    terms.weighted_derivatives.push_back(weight(t, r, s) * lp_norm(gd, domain, p, gd.quadrature(quad)));
  }
  return terms;
}

KBracket k_functional_bracket(const FunctionSpec& f, const MultiIndex& r, const StepVector& t, double p,
                              const Box& q, const KFunctionalConfig& cfg) {
  check_inputs(f, r, t, q);
  KBracket out;
  for (const SubsetMask& e : SubsetMask::all_nonempty(q.dim())) {
    out.omega_terms.push_back(modulus({f, r, e, t, p, q, cfg.h_grid, cfg.quad}));
    out.omega += out.omega_terms.back();
  }
  out.lower = out.omega / whitney_lower_constant(r);

  out.candidates.push_back({"zero", norm_of(f, p, q, cfg.quad)});
  if (f.has_derivative(r)) out.candidates.push_back({"self", self_value(f, r, t, p, q, cfg.quad)});

  if (within_limit(r, t, q)) {
    double sum = 0.0;
    for (const SubsetMask& e : SubsetMask::all(q.dim())) {
      const double v = smoother_terms(f, r, t, p, q, e, cfg.quad).total();
      out.subdomain_smoother.push_back(v);
      sum += v;
    }
    if (cfg.combine_subdomains) out.candidates.push_back({"smoother", sum});
  } else {
    // Large-t branch: polynomial candidates built from the best available
    // smooth g-bar (f itself when Sobolev, else the L2 projection).
    if (f.has_derivative(r)) {
      const TensorPolynomial taylor = taylor_poly(f, r, centre(q), q);
      out.candidates.push_back({"taylor", polynomial_value(f, taylor, p, q, cfg.quad)});
    }
    BestApproxOptions opts;
    opts.quad = cfg.quad;
    const BestApproximation proj = best_approx(f, r, 2.0, q, opts);
    out.candidates.push_back({"projection", polynomial_value(f, proj.poly, p, q, cfg.quad)});
  }

  out.upper = std::numeric_limits<double>::infinity();
  for (const auto& c : out.candidates) {
    if (c.value < out.upper) {
      out.upper = c.value;
      out.witness = c.name;
    }
  }
  return out;
}

SubdivisionReport subdivision_check(const FunctionSpec& f, const MultiIndex& r, const StepVector& t, double p,
                                    const Box& q, const KFunctionalConfig& cfg) {
  check_inputs(f, r, t, q);
  for (std::size_t i = 0; i < q.dim(); ++i) {
    if (t[i] > q.length(i) / 2.0 * (1.0 + 1e-12)) {
      throw PreconditionError("subdivision_check: need t_i <= d_i - c_i = delta_i / 2");
    }
  }
  const bool smoother_ok = within_limit(r, t, q);
  BestApproxOptions opts;
  opts.quad = cfg.quad;

  // Candidates available on an arbitrary box D.
  auto rigorous = [&](const Box& d) {
    double best = norm_of(f, p, d, cfg.quad);
    if (f.has_derivative(r)) best = std::min(best, self_value(f, r, t, p, d, cfg.quad));
    const BestApproximation proj = best_approx(f, r, 2.0, d, opts);
    best = std::min(best, polynomial_value(f, proj.poly, p, d, cfg.quad));
    return best;
  };

  SubdivisionReport report;
  report.upper = rigorous(q);
  if (f.has_derivative(r)) {
    const TensorPolynomial taylor = taylor_poly(f, r, centre(q), q);
    report.upper = std::min(report.upper, polynomial_value(f, taylor, p, q, cfg.quad));
  }
  double sum = 0.0;
  for (const SubsetMask& e : SubsetMask::all(q.dim())) {
    const Box sub = quarter_subdomain(q, e);
    double best = rigorous(sub);
    if (smoother_ok) best = std::min(best, smoother_terms(f, r, t, p, q, e, cfg.quad).total());
    report.subdomains.push_back(sub);
    report.subdomain_upper.push_back(best);
    sum += best;
  }
  const double scale = 1e-13 * (1.0 + norm_of(f, p, q, cfg.quad));
  if (sum > scale) report.ratio = report.upper / sum;
  return report;
}

}  // namespace whitney
