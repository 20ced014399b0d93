#include "whitney/functions.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "whitney/error.hpp"

namespace whitney {

namespace {

double falling_factorial(int n, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= n - i;
  return out;
}

double int_power(double x, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= x;
  return out;
}

void check_dim(std::span<const double> x, std::size_t dim) {
  if (x.size() != dim) throw PreconditionError("function evaluated at a point of the wrong dimension");
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(v[i]);
  }
  return out;
}

bool all_equal(const std::vector<int>& v) {
  for (int x : v) {
    if (x != v.front()) return false;
  }
  return true;
}

}  // namespace

FunctionSpec::FunctionSpec(std::string id, std::size_t dim, Eval eval)
    : id_(std::move(id)),
      dim_(dim),
      smoothness_(Smoothness::lp_only),
      eval_(std::move(eval)),
      max_order_(MultiIndex::zero(dim)) {}

FunctionSpec::FunctionSpec(std::string id, std::size_t dim, Eval eval, Derivative derivative,
                           MultiIndex max_order)
    : id_(std::move(id)),
      dim_(dim),
      smoothness_(Smoothness::sobolev),
      eval_(std::move(eval)),
      derivative_(std::move(derivative)),
      max_order_(std::move(max_order)) {
  if (max_order_.dim() != dim_) throw PreconditionError("FunctionSpec: max_order dimension mismatch");
}

bool FunctionSpec::has_derivative(const MultiIndex& k) const {
  if (k.dim() != dim_) return false;
  if (k.is_zero()) return true;
  return is_sobolev() && k <= max_order_;
}

double FunctionSpec::derivative(const MultiIndex& k, std::span<const double> x) const {
  if (k.is_zero() && k.dim() == dim_) return eval_(x);
  if (!has_derivative(k)) {
    throw CapabilityError("function '" + id_ + "' has no derivative of order " + k.to_string());
  }
  return derivative_(k, x);
}

FunctionSpec FunctionSpec::scaled(double c) const {
  Eval eval = [f = eval_, c](std::span<const double> x) { return c * f(x); };
  FunctionSpec out = is_sobolev()
      ? FunctionSpec(id_ + "*" + std::to_string(c), dim_, std::move(eval),
                     [d = derivative_, c](const MultiIndex& k, std::span<const double> x) { return c * d(k, x); },
                     max_order_)
      : FunctionSpec(id_ + "*" + std::to_string(c), dim_, std::move(eval));
  if (degrees_) out.degrees_ = degrees_;
  out.kinks_ = kinks_;
  return out;
}

FunctionSpec FunctionSpec::plus(const FunctionSpec& g) const {
  if (g.dim_ != dim_) throw PreconditionError("FunctionSpec::plus: dimension mismatch");
  Eval eval = [f = eval_, h = g.eval_](std::span<const double> x) { return f(x) + h(x); };
  const std::string id = id_ + "+" + g.id_;
  std::vector<std::vector<double>> kinks = kinks_;
  if (!g.kinks_.empty()) {
    kinks.resize(dim_);
    for (std::size_t i = 0; i < g.kinks_.size(); ++i) kinks[i].insert(kinks[i].end(), g.kinks_[i].begin(), g.kinks_[i].end());
  }
  if (is_sobolev() && g.is_sobolev()) {
    std::vector<int> order(dim_);
    for (std::size_t i = 0; i < dim_; ++i) order[i] = std::min(max_order_[i], g.max_order_[i]);
    return FunctionSpec(
        id, dim_, std::move(eval),
        [d1 = derivative_, d2 = g.derivative_](const MultiIndex& k, std::span<const double> x) {
          return d1(k, x) + d2(k, x);
        },
        MultiIndex(std::move(order))).with_kinks(std::move(kinks));
  }
  return FunctionSpec(id, dim_, std::move(eval)).with_kinks(std::move(kinks));
}

FunctionSpec FunctionSpec::with_kinks(std::vector<std::vector<double>> kinks) const {
  FunctionSpec out = *this;
  out.kinks_ = std::move(kinks);
  return out;
}

QuadratureSpec adapted_quadrature(const QuadratureSpec& quad, const FunctionSpec& f,
                                  const std::vector<std::vector<double>>& offsets) {
  if (f.kinks().empty()) return quad;
  QuadratureSpec out = quad;
  out.breakpoints.resize(f.dim());
  for (std::size_t i = 0; i < f.kinks().size(); ++i) {
    const std::vector<double> zero{0.0};
    const std::vector<double>& shifts = i < offsets.size() && !offsets[i].empty() ? offsets[i] : zero;
    for (double c : f.kinks()[i]) {
      for (double o : shifts) out.breakpoints[i].push_back(c - o);
    }
  }
  return out;
}

FunctionSpec FunctionSpec::with_polynomial_degrees(std::vector<int> degrees) const {
  if (degrees.size() != dim_) throw PreconditionError("polynomial degree vector has wrong dimension");
  FunctionSpec out = *this;
  out.degrees_ = std::move(degrees);
  return out;
}

// ---------------------------------------------------------------- factories

FunctionSpec tensor_polynomial(const std::vector<int>& degrees) {
  const std::size_t dim = degrees.size();
  // p_m^{(s)}(t) = sum_{k=s}^{m} k!/(k-s)! t^{k-s}
  auto factor = [](int m, int s, double t) {
    double sum = 0.0;
    for (int k = m; k >= s; --k) sum = sum * t + falling_factorial(k, s);
    return sum;
  };
  auto deriv = [degrees, dim, factor](const MultiIndex& k, std::span<const double> x) {
    check_dim(x, dim);
    double v = 1.0;
    for (std::size_t i = 0; i < dim; ++i) v *= factor(degrees[i], k[i], x[i]);
    return v;
  };
  auto eval = [degrees, dim, factor](std::span<const double> x) {
    check_dim(x, dim);
    double v = 1.0;
    for (std::size_t i = 0; i < dim; ++i) v *= factor(degrees[i], 0, x[i]);
    return v;
  };
  const std::string id = "poly_d" + std::to_string(dim) + "_deg" +
                         (all_equal(degrees) ? std::to_string(degrees.front()) : join_ints(degrees));
  return FunctionSpec(
             id, dim, eval, deriv,
             MultiIndex::constant(dim, kCorpusMaxOrder))
      .with_polynomial_degrees(degrees);
}

FunctionSpec monomial(const std::vector<int>& powers) {
  const std::size_t dim = powers.size();
  auto deriv = [powers, dim](const MultiIndex& k, std::span<const double> x) {
    check_dim(x, dim);
    double v = 1.0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (k[i] > powers[i]) return 0.0;
      v *= falling_factorial(powers[i], k[i]) * int_power(x[i], powers[i] - k[i]);
    }
    return v;
  };
  auto eval = [powers, dim](std::span<const double> x) {
    check_dim(x, dim);
    double v = 1.0;
    for (std::size_t i = 0; i < dim; ++i) v *= int_power(x[i], powers[i]);
    return v;
  };
  return FunctionSpec(
             "mono_d" + std::to_string(dim) + "_" + join_ints(powers), dim, eval, deriv,
             MultiIndex::constant(dim, kCorpusMaxOrder))
      .with_polynomial_degrees(powers);
}

FunctionSpec exponential(const std::vector<double>& a) {
  const std::size_t dim = a.size();
  auto eval = [a, dim](std::span<const double> x) {
    check_dim(x, dim);
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) s += a[i] * x[i];
    return std::exp(s);
  };
  auto deriv = [a, dim, eval](const MultiIndex& k, std::span<const double> x) {
    double c = 1.0;
    for (std::size_t i = 0; i < dim; ++i) c *= std::pow(a[i], k[i]);
    return c * eval(x);
  };
  return FunctionSpec("exp_d" + std::to_string(dim), dim, eval, deriv, MultiIndex::constant(dim, kCorpusMaxOrder));
}

FunctionSpec sine_product(const std::vector<double>& omega, const std::vector<double>& phi) {
  if (omega.size() != phi.size()) throw PreconditionError("sine_product: omega/phi size mismatch");
  const std::size_t dim = omega.size();
  auto deriv = [omega, phi, dim](const MultiIndex& k, std::span<const double> x) {
    check_dim(x, dim);
    double v = 1.0;
    for (std::size_t i = 0; i < dim; ++i) {
      v *= std::pow(omega[i], k[i]) * std::sin(omega[i] * x[i] + phi[i] + k[i] * std::numbers::pi / 2);
    }
    return v;
  };
  auto eval = [omega, phi, dim](std::span<const double> x) {
    check_dim(x, dim);
    double v = 1.0;
    for (std::size_t i = 0; i < dim; ++i) v *= std::sin(omega[i] * x[i] + phi[i]);
    return v;
  };
  return FunctionSpec("sin_d" + std::to_string(dim), dim, eval, deriv, MultiIndex::constant(dim, kCorpusMaxOrder));
}

FunctionSpec runge(std::size_t dim, double c) {
  const double s = std::sqrt(c);
  // 1/(1 + c t^2) = Re 1/(1 + i s t), so the n-th derivative is
  // Re (-1)^n n! (i s)^n / (1 + i s t)^{n+1}.
  auto factor = [s](int n, double t) {
    using C = std::complex<double>;
    const C is(0.0, s);
    const C base(1.0, s * t);
    double nf = 1.0;
    for (int i = 2; i <= n; ++i) nf *= i;
    const C num = (n % 2 ? -1.0 : 1.0) * nf * std::pow(is, n);
    return (num / std::pow(base, n + 1)).real();
  };
  auto deriv = [dim, factor](const MultiIndex& k, std::span<const double> x) {
    check_dim(x, dim);
    double v = 1.0;
    for (std::size_t i = 0; i < dim; ++i) v *= factor(k[i], x[i]);
    return v;
  };
  auto eval = [dim, c](std::span<const double> x) {
    check_dim(x, dim);
    double v = 1.0;
    for (std::size_t i = 0; i < dim; ++i) v /= 1.0 + c * x[i] * x[i];
    return v;
  };
  return FunctionSpec("runge_d" + std::to_string(dim), dim, eval, deriv, MultiIndex::constant(dim, kCorpusMaxOrder));
}

FunctionSpec abs_power(const std::vector<double>& center, double alpha) {
  const std::size_t dim = center.size();
  std::vector<std::vector<double>> kinks;
  for (double c : center) kinks.push_back({c});
  return FunctionSpec("abspow_d" + std::to_string(dim), dim, [center, alpha, dim](std::span<const double> x) {
           check_dim(x, dim);
           double v = 1.0;
           for (std::size_t i = 0; i < dim; ++i) v *= std::pow(std::abs(x[i] - center[i]), alpha);
           return v;
         }).with_kinks(std::move(kinks));
}

FunctionSpec zero_function(std::size_t dim) {
  return FunctionSpec(
             "zero_d" + std::to_string(dim), dim, [](std::span<const double>) { return 0.0; },
             [](const MultiIndex&, std::span<const double>) { return 0.0; },
             MultiIndex::constant(dim, kCorpusMaxOrder))
      .with_polynomial_degrees(std::vector<int>(dim, 0));
}

// ---------------------------------------------------------------- corpus

const std::vector<FunctionSpec>& corpus() {
  static const std::vector<FunctionSpec> entries = [] {
    std::vector<FunctionSpec> out;
    for (int m = 0; m <= 3; ++m) out.push_back(tensor_polynomial({m}));
    out.push_back(monomial({1}));
    out.push_back(monomial({2}));
    out.push_back(exponential({1.0}));
    out.push_back(sine_product({3.0}, {0.5}));
    out.push_back(runge(1));
    out.push_back(abs_power({0.3}, 0.5));

    for (int m = 0; m <= 3; ++m) out.push_back(tensor_polynomial({m, m}));
    out.push_back(tensor_polynomial({2, 1}));
    out.push_back(monomial({1, 1}));
    out.push_back(exponential({1.0, 1.0}));
    out.push_back(sine_product({2.0, 3.0}, {0.3, 0.7}));
    out.push_back(runge(2));
    out.push_back(abs_power({0.3, 0.6}, 0.5));
    return out;
  }();
  return entries;
}

const FunctionSpec& corpus_entry(const std::string& id) {
  for (const auto& f : corpus()) {
    if (f.id() == id) return f;
  }
  throw ConfigError("unknown function id '" + id + "'");
}

std::vector<FunctionSpec> corpus_of_dim(std::size_t dim) {
  std::vector<FunctionSpec> out;
  for (const auto& f : corpus()) {
    if (f.dim() == dim) out.push_back(f);
  }
  return out;
}

bool in_polynomial_space(const FunctionSpec& f, const MultiIndex& r) {
  const auto& deg = f.polynomial_degrees();
  if (!deg || deg->size() != r.dim()) return false;
  for (std::size_t i = 0; i < r.dim(); ++i) {
    if ((*deg)[i] >= r[i]) return false;
  }
  return true;
}

double sobolev_norm(const FunctionSpec& f, const MultiIndex& r, double p, const Box& q,
                    const QuadratureSpec& quad) {
  if (!f.is_sobolev()) throw CapabilityError("sobolev_norm: '" + f.id() + "' is not Sobolev-tagged");
  if (!(r <= f.max_order())) throw CapabilityError("sobolev_norm: order exceeds available derivatives");
  double sum = 0.0;
  for (const SubsetMask& e : SubsetMask::all(f.dim())) {
    const MultiIndex k = project(r, e);
    sum += lp_norm([&](std::span<const double> x) { return f.derivative(k, x); }, q, p, quad);
  }
  return sum;
}

}  // namespace whitney
