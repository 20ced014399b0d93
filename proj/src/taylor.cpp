#include <cmath>

#include "whitney/best_approx.hpp"
#include "whitney/differences.hpp"
#include "whitney/error.hpp"

namespace whitney {

TensorPolynomial taylor_poly(const FunctionSpec& f, const MultiIndex& k, std::span<const double> x0, const Box& q) {
  const std::size_t d = q.dim();
  if (k.dim() != d || f.dim() != d || x0.size() != d) throw PreconditionError("taylor_poly: dimension mismatch");
  if (!k.is_positive()) throw PreconditionError("taylor_poly: need k_i >= 1");
  if (!q.contains(x0, 1e-12)) throw PreconditionError("taylor_poly: anchor x0 must lie in Q");
  MultiIndex below(std::vector<int>(k.entries().begin(), k.entries().end()));
  for (std::size_t i = 0; i < d; ++i) below[i] -= 1;
  if (!f.has_derivative(below)) {
    throw CapabilityError("taylor_poly: '" + f.id() + "' lacks derivatives of order " + below.to_string());
  }

  // Coefficients f^{(s)}(x0) / s! in powers of (x - x0), last axis fastest.
  std::size_t n = 1;
  for (std::size_t i = 0; i < d; ++i) n *= k[i];
  std::vector<double> coeffs(n);
  std::vector<int> s(d, 0);
  for (std::size_t a = 0; a < n; ++a) {
    double factorial = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      for (int m = 2; m <= s[i]; ++m) factorial *= m;
    }
    coeffs[a] = f.derivative(MultiIndex(s), x0) / factorial;
    for (std::size_t i = d; i > 0; --i) {
      if (++s[i - 1] < k[i - 1]) break;
      s[i - 1] = 0;
    }
  }

  // Rebase per axis: x - x0 = delta u + c with c = a - x0, so
  // (delta u + c)^m = sum_j C(m, j) delta^j c^{m-j} u^j.
  for (std::size_t i = 0; i < d; ++i) {
    const double delta = q.length(i);
    const double c = q.lower(i) - x0[i];
    const int ki = k[i];
    std::vector<std::vector<double>> m(ki, std::vector<double>(ki, 0.0));
    for (int j = 0; j < ki; ++j) {
      for (int p = j; p < ki; ++p) m[j][p] = binomial(p, j) * std::pow(delta, j) * std::pow(c, p - j);
    }
    coeffs = apply_along_axis(coeffs, k, i, m);
  }
  return TensorPolynomial(k, PolyBasis::monomial_shifted, q, std::move(coeffs));
}

double taylor_remainder_bound(const FunctionSpec& f, const MultiIndex& r, double p, const Box& q,
                              const QuadratureSpec& quad) {
  if (!f.has_derivative(r)) {
    throw CapabilityError("taylor_remainder_bound: '" + f.id() + "' lacks derivatives of order " + r.to_string());
  }
  const StepVector delta = q.size();
  double sum = 0.0;
  for (const SubsetMask& e : SubsetMask::all_nonempty(q.dim())) {
    const MultiIndex k = project(r, e);
    const double norm = lp_norm([&](std::span<const double> x) { return f.derivative(k, x); }, q, p, quad);
    sum += weight(delta, r, e) * norm;
  }
  return sum;
}

double taylor_error(const FunctionSpec& f, const MultiIndex& r, double p, const Box& q, std::span<const double> x0,
                    const QuadratureSpec& quad) {
  const TensorPolynomial t = taylor_poly(f, r, x0, q);
  return lp_norm([&](std::span<const double> x) { return f(x) - t(x); }, q, p, quad);
}

}  // namespace whitney
