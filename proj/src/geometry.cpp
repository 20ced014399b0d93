#include "whitney/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <system_error>

#include "whitney/error.hpp"
#include "whitney/format.hpp"

namespace whitney {

std::string format_real(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

// ---------------------------------------------------------------- MultiIndex

MultiIndex::MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int v : entries_) {
    if (v < 0) throw PreconditionError("MultiIndex entries must be non-negative");
  }
}

MultiIndex MultiIndex::zero(std::size_t dim) { return MultiIndex(std::vector<int>(dim, 0)); }

MultiIndex MultiIndex::constant(std::size_t dim, int value) {
  return MultiIndex(std::vector<int>(dim, value));
}

int MultiIndex::total() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

bool MultiIndex::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](int v) { return v == 0; });
}

bool MultiIndex::is_positive() const {
  return std::all_of(entries_.begin(), entries_.end(), [](int v) { return v >= 1; });
}

std::size_t MultiIndex::box_count() const {
  std::size_t n = 1;
  for (int v : entries_) n *= static_cast<std::size_t>(v + 1);
  return n;
}

bool MultiIndex::operator<=(const MultiIndex& other) const {
  if (dim() != other.dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (entries_[i] > other.entries_[i]) return false;
  }
  return true;
}

std::string MultiIndex::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(entries_[i]);
  }
  return out;
}

// ---------------------------------------------------------------- SubsetMask

SubsetMask::SubsetMask(std::size_t dim, std::uint32_t bits) : dim_(dim), bits_(bits) {
  if (dim > 31) throw PreconditionError("SubsetMask supports at most 31 coordinates");
  if (dim < 32 && (bits >> dim) != 0) throw PreconditionError("SubsetMask member out of range");
}

SubsetMask SubsetMask::full(std::size_t dim) { return {dim, (1U << dim) - 1U}; }

std::vector<SubsetMask> SubsetMask::all(std::size_t dim) {
  std::vector<SubsetMask> out;
  for (std::uint32_t bits = 0; bits < (1U << dim); ++bits) out.emplace_back(dim, bits);
  return out;
}

std::vector<SubsetMask> SubsetMask::all_nonempty(std::size_t dim) {
  std::vector<SubsetMask> out;
  for (std::uint32_t bits = 1; bits < (1U << dim); ++bits) out.emplace_back(dim, bits);
  return out;
}

std::size_t SubsetMask::count() const { return static_cast<std::size_t>(__builtin_popcount(bits_)); }

std::vector<std::size_t> SubsetMask::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

MultiIndex project(const MultiIndex& r, const SubsetMask& e) {
  if (r.dim() != e.dim()) throw PreconditionError("project: dimension mismatch");
  std::vector<int> out(r.dim(), 0);
  for (std::size_t i = 0; i < r.dim(); ++i) {
    if (e.contains(i)) out[i] = r[i];
  }
  return MultiIndex(std::move(out));
}

// ---------------------------------------------------------------- StepVector

StepVector::StepVector(std::initializer_list<double> entries) : entries_(entries) {}

StepVector::StepVector(std::vector<double> entries) : entries_(std::move(entries)) {}

StepVector StepVector::constant(std::size_t dim, double value) {
  return StepVector(std::vector<double>(dim, value));
}

std::string StepVector::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += 'x';
    out += format_real(entries_[i]);
  }
  return out;
}

StepVector pow(const StepVector& x, const MultiIndex& r) {
  if (x.dim() != r.dim()) throw PreconditionError("pow: dimension mismatch");
  std::vector<double> out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) out[i] = std::pow(x[i], r[i]);
  return StepVector(std::move(out));
}

double weight(const StepVector& x, const MultiIndex& r, const SubsetMask& e) {
  double w = 1.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (e.contains(i)) w *= std::pow(x[i], r[i]);
  }
  return w;
}

StepVector scale(const MultiIndex& r, const StepVector& h) {
  if (r.dim() != h.dim()) throw PreconditionError("scale: dimension mismatch");
  std::vector<double> out(h.dim());
  for (std::size_t i = 0; i < h.dim(); ++i) out[i] = r[i] * h[i];
  return StepVector(std::move(out));
}

// ---------------------------------------------------------------- Box

Box::Box(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw PreconditionError("Box: dimension must be at least 1");
  if (lower_.size() != upper_.size()) throw PreconditionError("Box: corner dimension mismatch");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i]) || !std::isfinite(lower_[i]) || !std::isfinite(upper_[i])) {
      throw PreconditionError("Box: need finite a_i < b_i on every axis");
    }
  }
}

Box::Box(std::vector<double> lower, std::vector<double> upper, Unchecked)
    : lower_(std::move(lower)), upper_(std::move(upper)) {}

Box Box::unit(std::size_t dim) { return cube(dim, 0.0, 1.0); }

Box Box::cube(std::size_t dim, double lower, double upper) {
  return Box(std::vector<double>(dim, lower), std::vector<double>(dim, upper));
}

StepVector Box::size() const {
  std::vector<double> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = length(i);
  return StepVector(std::move(out));
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < dim(); ++i) v *= length(i);
  return v;
}

bool Box::is_degenerate() const {
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!(lower_[i] < upper_[i])) return true;
  }
  return false;
}

bool Box::contains(std::span<const double> x, double tol) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] < lower_[i] - tol || x[i] > upper_[i] + tol) return false;
  }
  return true;
}

Box Box::shrink_from_lower(int level) const {
  const double factor = std::ldexp(1.0, -level);
  std::vector<double> upper(dim());
  for (std::size_t i = 0; i < dim(); ++i) upper[i] = lower_[i] + length(i) * factor;
  return Box(lower_, std::move(upper));
}

std::string Box::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i) out += 'x';
    out += format_real(lower_[i]);
    out += ':';
    out += format_real(upper_[i]);
  }
  return out;
}

std::optional<Box> shifted_domain(const Box& q, const StepVector& y) {
  if (y.dim() != q.dim()) throw PreconditionError("shifted_domain: dimension mismatch");
  std::vector<double> lo(q.dim());
  std::vector<double> hi(q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) {
    const double a = q.lower(i);
    const double b = q.upper(i);
    if (y[i] >= 0.0) {
      lo[i] = a;
      hi[i] = b - y[i];
    } else {
      lo[i] = a - y[i];
      hi[i] = b;
    }
    // Rounding in b - y can leave a collapsed axis a few ulps inverted.
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b));
    if (hi[i] < lo[i]) {
      if (lo[i] - hi[i] > slack) return std::nullopt;
      if (y[i] >= 0.0) {
        hi[i] = lo[i];
      } else {
        lo[i] = hi[i];
      }
    }
  }
  return Box(std::move(lo), std::move(hi), Box::Unchecked{});
}

}  // namespace whitney
