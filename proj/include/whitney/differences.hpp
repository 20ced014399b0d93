#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "whitney/functions.hpp"
#include "whitney/geometry.hpp"
#include "whitney/quadrature.hpp"

namespace whitney {

/// C(n, k) as a double.
double binomial(int n, int k);

/// Precomputed mixed difference Delta_h^m as a list of (offset, coefficient)
/// pairs: Delta_h^m g(x) = sum_{0 <= j <= m} prod_i (-1)^{m_i - j_i} C(m_i, j_i) g(x + j h).
/// Axes with m_i = 0 ignore h_i.
class DifferenceStencil {
 public:
  DifferenceStencil(const MultiIndex& order, const StepVector& step);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return coeffs_.size(); }

  /// Applies the stencil to f at x; `scratch` must have size dim().
  template <class F>
  double apply(F&& f, std::span<const double> x, Point& scratch) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const double* off = offsets_.data() + k * dim_;
      for (std::size_t i = 0; i < dim_; ++i) scratch[i] = x[i] + off[i];
      sum += coeffs_[k] * f(std::span<const double>(scratch));
    }
    return sum;
  }

 private:
  std::size_t dim_;
  std::vector<double> offsets_;
  std::vector<double> coeffs_;
};

/// (prod_{i: m_i > 0} Delta^{m_i}_{h_i, i}) f (x).
double mixed_difference(const FunctionSpec& f, const MultiIndex& order, const StepVector& h,
                        std::span<const double> x);

inline constexpr int kDefaultHGrid = 33;

/// Inputs of the mixed modulus omega_{r(e)}(f, t)_{p,Q}.
struct ModulusRequest {
  const FunctionSpec& f;
  MultiIndex r;
  SubsetMask e;
  StepVector t;
  double p = 2.0;
  Box q;
  int h_grid = kDefaultHGrid;
  QuadratureSpec quad{};
};

/// omega_{r(e)}(f, t)_{p,Q}: sup over the non-negative step grid
/// {0, t_i/(h_grid-1), ..., t_i} on the axes of e of ||Delta_h^{r(e)} f||_{p, Q_{r(e)h}},
/// refined by golden-section searches between the grid neighbours of the best
/// step. t is clamped to delta(Q). Throws PreconditionError for empty e.
double modulus(const ModulusRequest& req);

/// Omega_r(f, t)_{p,Q}: sum of omega_{r(e)} over the 2^d - 1 non-empty subsets.
double total_modulus(const FunctionSpec& f, const MultiIndex& r, const StepVector& t, double p, const Box& q,
                     int h_grid = kDefaultHGrid, const QuadratureSpec& quad = {});

/// w_{r(e)}(f, t)_{p,Q} = ((prod_{i in e} t_i^{-1}) int_{U(t)} int_{Q_{r(e)h}} |Delta_h^{r(e)} f|^p dx dh)^{1/p}
/// with U(t) the full signed box over the axes of e. For p = inf the outer
/// mean is a sup over the signed step grid of 2 h_grid - 1 values per axis,
/// refined as in modulus().
/// Returns 0 if t_i = 0 on an axis of e.
double p_mean_modulus(const FunctionSpec& f, const MultiIndex& r_e, const StepVector& t, double p, const Box& q,
                      const QuadratureSpec& quad = {}, int h_grid = kDefaultHGrid);

/// W_r(f, t)_{p,Q}: sum of w_{r(e)} over the non-empty subsets.
double total_p_mean_modulus(const FunctionSpec& f, const MultiIndex& r, const StepVector& t, double p,
                            const Box& q, const QuadratureSpec& quad = {}, int h_grid = kDefaultHGrid);

}  // namespace whitney
