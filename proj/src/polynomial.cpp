#include "whitney/polynomial.hpp"

#include <cmath>

#include "whitney/differences.hpp"
#include "whitney/error.hpp"

namespace whitney {

std::vector<double> apply_along_axis(const std::vector<double>& in, const MultiIndex& r, std::size_t axis,
                                 const std::vector<std::vector<double>>& m) {
  std::size_t inner = 1;
  for (std::size_t i = axis + 1; i < r.dim(); ++i) inner *= r[i];
  std::size_t outer = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= r[i];
  const std::size_t n = r[axis];
  std::vector<double> out(in.size(), 0.0);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double c = m[i][j];
        if (c == 0.0) continue;
        for (std::size_t s = 0; s < inner; ++s) {
          out[(o * n + i) * inner + s] += c * in[(o * n + j) * inner + s];
        }
      }
    }
  }
  return out;
}

namespace {

// Legendre -> monomial: monomial coefficient j = sum_k L[k][j] legendre coefficient k.
std::vector<std::vector<double>> legendre_to_monomial_matrix(int n) {
  const auto table = shifted_legendre_table(n);
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) m[j][k] = table[k][j];
  }
  return m;
}

// Inverse of the upper triangular legendre_to_monomial_matrix.
std::vector<std::vector<double>> monomial_to_legendre_matrix(int n) {
  const auto a = legendre_to_monomial_matrix(n);
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (int col = 0; col < n; ++col) {
    for (int row = n - 1; row >= 0; --row) {
      double s = row == col ? 1.0 : 0.0;
      for (int k = row + 1; k < n; ++k) s -= a[row][k] * inv[k][col];
      inv[row][col] = s / a[row][row];
    }
  }
  return inv;
}

}  // namespace

std::vector<std::vector<double>> shifted_legendre_table(int n) {
  // P_k(2u - 1) = sum_j (-1)^{k+j} C(k, j) C(k+j, j) u^j
  std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j <= k; ++j) {
      out[k][j] = ((k + j) % 2 ? -1.0 : 1.0) * binomial(k, j) * binomial(k + j, j);
    }
  }
  return out;
}

TensorPolynomial::TensorPolynomial(MultiIndex r, PolyBasis basis, Box reference)
    : TensorPolynomial(std::move(r), basis, std::move(reference), {}) {}

TensorPolynomial::TensorPolynomial(MultiIndex r, PolyBasis basis, Box reference, std::vector<double> coefficients)
    : r_(std::move(r)), basis_(basis), box_(std::move(reference)), coeffs_(std::move(coefficients)) {
  if (r_.dim() != box_.dim()) throw PreconditionError("TensorPolynomial: degree/box dimension mismatch");
  if (!r_.is_positive()) throw PreconditionError("TensorPolynomial: need r_i >= 1");
  std::size_t n = 1;
  for (std::size_t i = 0; i < r_.dim(); ++i) n *= r_[i];
  if (coeffs_.empty()) coeffs_.assign(n, 0.0);
  if (coeffs_.size() != n) throw PreconditionError("TensorPolynomial: coefficient count must equal prod r_i");
}

std::size_t TensorPolynomial::flat_index(std::span<const int> k) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < r_.dim(); ++i) idx = idx * r_[i] + k[i];
  return idx;
}

double TensorPolynomial::operator()(std::span<const double> x) const {
  const std::size_t d = r_.dim();
  // Contract the last axis first; `work` holds the partially contracted tensor.
  std::vector<double> work = coeffs_;
  std::size_t len = work.size();
  std::vector<double> basis_values;
  for (std::size_t axis = d; axis > 0; --axis) {
    const std::size_t i = axis - 1;
    const int n = r_[i];
    const double u = (x[i] - box_.lower(i)) / box_.length(i);
    basis_values.assign(n, 0.0);
    if (basis_ == PolyBasis::monomial_shifted) {
      double pw = 1.0;
      for (int k = 0; k < n; ++k, pw *= u) basis_values[k] = pw;
    } else {
      const double s = 2.0 * u - 1.0;
      basis_values[0] = 1.0;
      if (n > 1) basis_values[1] = s;
      for (int k = 2; k < n; ++k) {
        basis_values[k] = ((2.0 * k - 1.0) * s * basis_values[k - 1] - (k - 1.0) * basis_values[k - 2]) / k;
      }
    }
    const std::size_t outer = len / n;
    for (std::size_t o = 0; o < outer; ++o) {
      double acc = 0.0;
      if (basis_ == PolyBasis::monomial_shifted) {
        for (int k = n - 1; k >= 0; --k) acc = acc * u + work[o * n + k];
      } else {
        for (int k = 0; k < n; ++k) acc += work[o * n + k] * basis_values[k];
      }
      work[o] = acc;
    }
    len = outer;
  }
  return work[0];
}

TensorPolynomial TensorPolynomial::to_basis(PolyBasis target) const {
  if (target == basis_) return *this;
  std::vector<double> c = coeffs_;
  for (std::size_t axis = 0; axis < r_.dim(); ++axis) {
    const auto m = target == PolyBasis::monomial_shifted ? legendre_to_monomial_matrix(r_[axis])
                                                         : monomial_to_legendre_matrix(r_[axis]);
    c = apply_along_axis(c, r_, axis, m);
  }
  return TensorPolynomial(r_, target, box_, std::move(c));
}

}  // namespace whitney
