#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "whitney/geometry.hpp"
#include "whitney/quadrature.hpp"

namespace whitney {

enum class Smoothness {
  lp_only,  ///< Only point values are available.
  sobolev,  ///< Analytic mixed derivatives up to `max_order`.
};

/// A closed-form test function on R^d.
///
/// Sobolev-tagged functions expose analytic mixed derivatives f^{(k)} for
/// every k <= max_order(); derivative(0, x) == f(x).
class FunctionSpec {
 public:
  using Eval = std::function<double(std::span<const double>)>;
  using Derivative = std::function<double(const MultiIndex&, std::span<const double>)>;

  /// Lp-only function.
  FunctionSpec(std::string id, std::size_t dim, Eval eval);
  /// Sobolev function; `eval` must agree with derivative(0, .).
  FunctionSpec(std::string id, std::size_t dim, Eval eval, Derivative derivative, MultiIndex max_order);

  const std::string& id() const { return id_; }
  std::size_t dim() const { return dim_; }
  Smoothness smoothness() const { return smoothness_; }
  bool is_sobolev() const { return smoothness_ == Smoothness::sobolev; }
  const MultiIndex& max_order() const { return max_order_; }
  /// True when f^{(k)} is available.
  bool has_derivative(const MultiIndex& k) const;

  double operator()(std::span<const double> x) const { return eval_(x); }
  /// f^{(k)}(x); throws CapabilityError when unavailable.
  double derivative(const MultiIndex& k, std::span<const double> x) const;

  /// c * f (derivatives scale alike).
  FunctionSpec scaled(double c) const;
  /// f + g on the same dimension; Sobolev when both are, up to the smaller order.
  FunctionSpec plus(const FunctionSpec& g) const;

  /// Coordinate degrees when f is known to be a tensor polynomial.
  const std::optional<std::vector<int>>& polynomial_degrees() const { return degrees_; }
  FunctionSpec with_polynomial_degrees(std::vector<int> degrees) const;

  /// Per-axis coordinates where f fails to be smooth (empty for smooth f).
  const std::vector<std::vector<double>>& kinks() const { return kinks_; }
  FunctionSpec with_kinks(std::vector<std::vector<double>> kinks) const;

 private:
  std::string id_;
  std::size_t dim_;
  Smoothness smoothness_;
  Eval eval_;
  Derivative derivative_;
  MultiIndex max_order_;
  std::optional<std::vector<int>> degrees_;
  std::vector<std::vector<double>> kinks_;
};

/// Derivative order declared for every Sobolev corpus entry.
inline constexpr int kCorpusMaxOrder = 8;

/// prod_i p_{m_i}(x_i) with p_m(t) = 1 + t + ... + t^m: coordinate degrees m.
FunctionSpec tensor_polynomial(const std::vector<int>& degrees);
/// prod_i x_i^{k_i}.
FunctionSpec monomial(const std::vector<int>& powers);
/// exp(a . x); f^{(k)} = prod a_i^{k_i} exp(a . x).
FunctionSpec exponential(const std::vector<double>& a);
/// prod_i sin(omega_i x_i + phi_i).
FunctionSpec sine_product(const std::vector<double>& omega, const std::vector<double>& phi);
/// prod_i 1 / (1 + c x_i^2) (Runge factor with c = 25).
FunctionSpec runge(std::size_t dim, double c = 25.0);
/// prod_i |x_i - c_i|^alpha, Lp-only.
FunctionSpec abs_power(const std::vector<double>& center, double alpha);
/// The zero function (Sobolev).
FunctionSpec zero_function(std::size_t dim);

/// Quadrature for integrands x -> sum_m c_m f(x + o_m) whose shifts on axis i
/// come from offsets[i] (default {0}): breakpoints at every kink of f minus
/// every offset. Returns `quad` unchanged when f has no kinks.
QuadratureSpec adapted_quadrature(const QuadratureSpec& quad, const FunctionSpec& f,
                                  const std::vector<std::vector<double>>& offsets = {});

/// The built-in corpus (d in {1, 2}).
const std::vector<FunctionSpec>& corpus();
/// Corpus entry by id; throws ConfigError for unknown ids.
const FunctionSpec& corpus_entry(const std::string& id);
/// Corpus entries of dimension d.
std::vector<FunctionSpec> corpus_of_dim(std::size_t dim);
/// True when f is a polynomial whose coordinate degrees are all < r_i,
/// i.e. f lies in P_r. Known only for polynomial corpus entries.
bool in_polynomial_space(const FunctionSpec& f, const MultiIndex& r);

/// ||f||_{W^r_p(Q)} = sum over all e subset of [d] of ||f^{(r(e))}||_{p,Q}.
double sobolev_norm(const FunctionSpec& f, const MultiIndex& r, double p, const Box& q,
                    const QuadratureSpec& quad);

}  // namespace whitney
