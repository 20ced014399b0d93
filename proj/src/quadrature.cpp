#include "whitney/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace whitney {

namespace {

Rule1D compute_gauss_legendre(int n) {
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const Rule1D& gauss_legendre(int n) {
  if (n < 1) throw PreconditionError("gauss_legendre: need at least one node");
  static std::mutex mutex;
  static std::map<int, Rule1D> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

std::vector<double> chebyshev_lobatto(int n) {
  if (n < 2) throw PreconditionError("chebyshev_lobatto: need at least two points");
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = -std::cos(std::numbers::pi * j / (n - 1));
  out.front() = -1.0;
  out.back() = 1.0;
  if (n % 2 == 1) out[n / 2] = 0.0;
  return out;
}

TensorGrid::TensorGrid(std::vector<std::vector<double>> nodes, std::vector<std::vector<double>> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.size() != weights_.size()) throw PreconditionError("TensorGrid: axis count mismatch");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].size() != weights_[i].size()) throw PreconditionError("TensorGrid: node/weight mismatch");
  }
}

std::size_t TensorGrid::size() const {
  std::size_t n = 1;
  for (const auto& axis : nodes_) n *= axis.size();
  return n;
}

namespace {

constexpr int kMinPanelNodes = 4;
constexpr int kMinPanelPoints = 3;

// Panel boundaries of [a, b] split at the breakpoints strictly inside it.
std::vector<double> panel_edges(double a, double b, std::size_t axis,
                                const std::vector<std::vector<double>>& breakpoints) {
  std::vector<double> edges{a};
  if (axis < breakpoints.size()) {
    const double tol = 1e-10 * (b - a);
    std::vector<double> inner;
    for (double c : breakpoints[axis]) {
      if (c > a + tol && c < b - tol) inner.push_back(c);
    }
    std::sort(inner.begin(), inner.end());
    for (double c : inner) {
      if (c - edges.back() > tol) edges.push_back(c);
    }
    if (b - edges.back() <= tol) edges.pop_back();
  }
  edges.push_back(b);
  return edges;
}

int panel_share(int total, double length, double full, int minimum) {
  if (length >= full) return total;
  return std::max(minimum, static_cast<int>(std::ceil(total * length / full - 1e-9)));
}

}  // namespace

TensorGrid TensorGrid::gauss(const Box& box, const QuadratureSpec& quad) {
  TensorGrid grid;
  grid.nodes_.resize(box.dim());
  grid.weights_.resize(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const std::vector<double> edges = panel_edges(box.lower(i), box.upper(i), i, quad.breakpoints);
    for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
      const double len = edges[s + 1] - edges[s];
      const Rule1D& rule = gauss_legendre(panel_share(quad.nodes(i), len, box.length(i), kMinPanelNodes));
      const double mid = 0.5 * (edges[s] + edges[s + 1]);
      const double half = 0.5 * len;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        grid.nodes_[i].push_back(mid + half * rule.nodes[k]);
        grid.weights_[i].push_back(half * rule.weights[k]);
      }
    }
  }
  return grid;
}

TensorGrid TensorGrid::lobatto(const Box& box, int points_per_axis,
                               const std::vector<std::vector<double>>& breakpoints) {
  TensorGrid grid;
  grid.nodes_.resize(box.dim());
  grid.weights_.resize(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const double a = box.lower(i);
    const double b = box.upper(i);
    if (!(a < b)) {
      grid.nodes_[i] = {a};
      grid.weights_[i] = {1.0};
      continue;
    }
    const std::vector<double> edges = panel_edges(a, b, i, breakpoints);
    auto& nodes = grid.nodes_[i];
    for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
      const double len = edges[s + 1] - edges[s];
      const int n = edges.size() == 2 ? points_per_axis
                                      : 1 + panel_share(points_per_axis - 1, len, b - a, kMinPanelPoints - 1);
      const std::vector<double> ref = chebyshev_lobatto(n);
      const double mid = 0.5 * (edges[s] + edges[s + 1]);
      const double half = 0.5 * len;
      for (std::size_t k = s == 0 ? 0 : 1; k < ref.size(); ++k) nodes.push_back(mid + half * ref[k]);
      nodes.back() = edges[s + 1];
    }
    nodes.front() = a;
    grid.weights_[i].assign(nodes.size(), 1.0);
  }
  return grid;
}

}  // namespace whitney
