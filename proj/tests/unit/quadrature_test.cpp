#include <cmath>

#include <gtest/gtest.h>

#include "whitney/differences.hpp"
#include "whitney/functions.hpp"
#include "whitney/quadrature.hpp"

using namespace whitney;

TEST(PanelQuadrature, NoBreakpointsMatchesPlainRule) {
  QuadratureSpec with = QuadratureSpec::uniform(7, 9);
  with.breakpoints = {{-3.0, 0.0, 1.0}};
  const QuadratureSpec plain = QuadratureSpec::uniform(7, 9);
  const Box b = Box::unit(1);
  EXPECT_EQ(TensorGrid::gauss(b, with).nodes(0), TensorGrid::gauss(b, plain).nodes(0));
  EXPECT_EQ(TensorGrid::lobatto(b, 9, with.breakpoints).nodes(0), TensorGrid::lobatto(b, 9).nodes(0));
}

TEST(PanelQuadrature, ExactForPiecewisePolynomials) {
  QuadratureSpec quad = QuadratureSpec::uniform(4);
  quad.breakpoints = {{0.3}};
  auto f = [](std::span<const double> x) { return std::abs(x[0] - 0.3) * (x[0] - 0.3) * (x[0] - 0.3); };
  EXPECT_NEAR(integrate(f, Box::unit(1), quad), (std::pow(0.3, 4) + std::pow(0.7, 4)) / 4.0, 1e-15);
  EXPECT_GT(std::abs(integrate(f, Box::unit(1), QuadratureSpec::uniform(4)) - 0.0620500), 1e-6);
}

TEST(PanelQuadrature, SupGridContainsBreakpoints) {
  const TensorGrid g = TensorGrid::lobatto(Box::cube(2, 0.0, 2.0), 9, {{0.25, 1.5}, {}});
  const auto& n0 = g.nodes(0);
  EXPECT_NE(std::find(n0.begin(), n0.end(), 0.25), n0.end());
  EXPECT_NE(std::find(n0.begin(), n0.end(), 1.5), n0.end());
  EXPECT_TRUE(std::is_sorted(n0.begin(), n0.end()));
  EXPECT_EQ(n0.front(), 0.0);
  EXPECT_EQ(n0.back(), 2.0);
  EXPECT_EQ(g.nodes(1).size(), 9u);
}

TEST(PanelQuadrature, AdaptedQuadratureShiftsKinks) {
  const FunctionSpec& a = corpus_entry("abspow_d2");
  ASSERT_EQ(a.kinks().size(), 2u);
  const QuadratureSpec q = adapted_quadrature(QuadratureSpec::uniform(8), a, {{0.0, 0.1}, {}});
  ASSERT_EQ(q.breakpoints.size(), 2u);
  EXPECT_EQ(q.breakpoints[0], (std::vector<double>{0.3, 0.3 - 0.1}));
  EXPECT_EQ(q.breakpoints[1], (std::vector<double>{0.6}));
  EXPECT_TRUE(adapted_quadrature(QuadratureSpec::uniform(8), corpus_entry("exp_d2")).breakpoints.empty());
  EXPECT_EQ(a.scaled(2.0).kinks(), a.kinks());
  EXPECT_EQ(a.plus(corpus_entry("sin_d2")).kinks(), a.kinks());
}

TEST(PanelQuadrature, ModulusOfKinkResolvedAtSmallSteps) {
  // |x - 0.3|^{1/2} on [0,1]: the first difference at step h has L2 norm ~ c h,
  // so omega_1(f, h)/h must stay bounded away from 0 as h shrinks.
  const FunctionSpec& f = corpus_entry("abspow_d1");
  const QuadratureSpec quad = QuadratureSpec::uniform(16, 33);
  std::vector<double> ratios;
  for (double h : {1e-2, 1e-3, 1e-4}) {
    ratios.push_back(modulus({f, MultiIndex{1}, SubsetMask::full(1), StepVector{h}, 2.0, Box::unit(1), 9, quad}) / h);
  }
  EXPECT_NEAR(ratios[1] / ratios[0], 1.0, 0.2);
  EXPECT_NEAR(ratios[2] / ratios[1], 1.0, 0.2);
}
