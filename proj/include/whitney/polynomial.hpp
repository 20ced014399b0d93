#pragma once

#include <span>
#include <vector>

#include "whitney/geometry.hpp"

namespace whitney {

/// Basis of a TensorPolynomial on its reference box Q, written in the
/// normalized coordinates u_i = (x_i - a_i) / delta_i in [0, 1].
enum class PolyBasis {
  monomial_shifted,  ///< prod u_i^{k_i}
  legendre_shifted,  ///< prod P_{k_i}(2 u_i - 1), orthogonal on Q
};

/// Element of P_r: coordinate degree <= r_i - 1 on axis i.
///
/// Coefficients are stored densely (prod r_i values) with the last axis
/// varying fastest.
class TensorPolynomial {
 public:
  TensorPolynomial(MultiIndex r, PolyBasis basis, Box reference);
  TensorPolynomial(MultiIndex r, PolyBasis basis, Box reference, std::vector<double> coefficients);

  const MultiIndex& degrees() const { return r_; }
  PolyBasis basis() const { return basis_; }
  const Box& reference() const { return box_; }
  std::span<const double> coefficients() const { return coeffs_; }
  std::vector<double>& coefficients() { return coeffs_; }

  /// Flat index of the multi-index k (k_i < r_i).
  std::size_t flat_index(std::span<const int> k) const;

  /// Value at x. Points outside the reference box are extrapolated.
  double operator()(std::span<const double> x) const;
  bool is_extrapolation(std::span<const double> x) const { return !box_.contains(x, 1e-12); }

  /// Same polynomial expressed in another basis.
  TensorPolynomial to_basis(PolyBasis target) const;

 private:
  MultiIndex r_;
  PolyBasis basis_;
  Box box_;
  std::vector<double> coeffs_;
};

/// Coefficients of P_k(2u - 1) in powers of u, k < n: row k holds P_k.
std::vector<std::vector<double>> shifted_legendre_table(int n);

/// Applies the r_axis x r_axis matrix m along one axis of a dense coefficient
/// tensor of shape r: out[.., i, ..] = sum_j m[i][j] in[.., j, ..].
std::vector<double> apply_along_axis(const std::vector<double>& in, const MultiIndex& r, std::size_t axis,
                                     const std::vector<std::vector<double>>& m);

}  // namespace whitney
