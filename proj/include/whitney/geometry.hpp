#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace whitney {

using Point = std::vector<double>;

/// Vector of non-negative integers: smoothness orders r, Taylor orders k and
/// the step counts j of difference sums.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> entries);
  explicit MultiIndex(std::vector<int> entries);

  static MultiIndex zero(std::size_t dim);
  static MultiIndex constant(std::size_t dim, int value);

  std::size_t dim() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  int& operator[](std::size_t i) { return entries_[i]; }
  std::span<const int> entries() const { return entries_; }

  int total() const;
  bool is_zero() const;
  /// All entries >= 1.
  bool is_positive() const;
  /// Number of tuples j with 0 <= j <= *this componentwise.
  std::size_t box_count() const;

  /// Componentwise partial order.
  bool operator<=(const MultiIndex& other) const;
  bool operator==(const MultiIndex& other) const = default;

  /// `2x3` style rendering used in reports.
  std::string to_string() const;

 private:
  std::vector<int> entries_;
};

/// Subset e of the coordinate set {0, ..., d-1}. The empty set is valid.
class SubsetMask {
 public:
  SubsetMask() = default;
  SubsetMask(std::size_t dim, std::uint32_t bits);

  static SubsetMask empty(std::size_t dim) { return {dim, 0}; }
  static SubsetMask full(std::size_t dim);
  /// Every subset of {0, ..., d-1}, in increasing bit order starting at the empty set.
  static std::vector<SubsetMask> all(std::size_t dim);
  static std::vector<SubsetMask> all_nonempty(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::uint32_t bits() const { return bits_; }
  bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
  /// Characteristic function of e evaluated at coordinate i.
  int indicator(std::size_t i) const { return contains(i) ? 1 : 0; }
  bool is_empty() const { return bits_ == 0; }
  std::size_t count() const;
  std::vector<std::size_t> members() const;

  bool operator==(const SubsetMask& other) const = default;

 private:
  std::size_t dim_ = 0;
  std::uint32_t bits_ = 0;
};

/// r(e): r on the coordinates of e and zero elsewhere.
MultiIndex project(const MultiIndex& r, const SubsetMask& e);

/// Real vector used for steps h, radii t and sizes.
class StepVector {
 public:
  StepVector() = default;
  StepVector(std::initializer_list<double> entries);
  explicit StepVector(std::vector<double> entries);

  static StepVector constant(std::size_t dim, double value);

  std::size_t dim() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  double& operator[](std::size_t i) { return entries_[i]; }
  std::span<const double> entries() const { return entries_; }

  bool operator==(const StepVector& other) const = default;

  std::string to_string() const;

 private:
  std::vector<double> entries_;
};

/// x^r = (x_1^{r_1}, ..., x_d^{r_d}).
StepVector pow(const StepVector& x, const MultiIndex& r);

/// Product of x_i^{r_i} over the coordinates in e (1 for the empty set).
double weight(const StepVector& x, const MultiIndex& r, const SubsetMask& e);

/// Componentwise product of an integer and a real vector (the paper's `yh`).
StepVector scale(const MultiIndex& r, const StepVector& h);

/// Axis-aligned box [a_1, b_1] x ... x [a_d, b_d].
///
/// Construction requires a_i < b_i. Boxes produced by `shifted_domain` may
/// carry zero-length axes (point intervals); those are flagged by `is_degenerate`.
class Box {
 public:
  Box() = default;
  Box(std::vector<double> lower, std::vector<double> upper);

  static Box unit(std::size_t dim);
  static Box cube(std::size_t dim, double lower, double upper);

  std::size_t dim() const { return lower_.size(); }
  std::span<const double> lower() const { return lower_; }
  std::span<const double> upper() const { return upper_; }
  double lower(std::size_t i) const { return lower_[i]; }
  double upper(std::size_t i) const { return upper_[i]; }
  double length(std::size_t i) const { return upper_[i] - lower_[i]; }

  /// delta(Q) = (b_1 - a_1, ..., b_d - a_d).
  StepVector size() const;
  double volume() const;
  bool is_degenerate() const;
  bool contains(std::span<const double> x, double tol = 0.0) const;

  /// Box sharing the lower corner with side lengths scaled by 2^{-level}.
  Box shrink_from_lower(int level) const;

  /// `a1:b1xa2:b2` rendering used in reports.
  std::string to_string() const;

  bool operator==(const Box& other) const = default;

 private:
  friend std::optional<Box> shifted_domain(const Box& q, const StepVector& y);
  struct Unchecked {};
  Box(std::vector<double> lower, std::vector<double> upper, Unchecked);

  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// Q_y = {x in Q : x_i, x_i + y_i in [a_i, b_i]}.
///
/// Per axis this is [a_i, b_i - y_i] for y_i >= 0 and [a_i - y_i, b_i] for
/// y_i < 0. Returns nullopt when some axis interval is inverted; an axis that
/// collapses to a single point is kept as a zero-length interval.
std::optional<Box> shifted_domain(const Box& q, const StepVector& y);

}  // namespace whitney
