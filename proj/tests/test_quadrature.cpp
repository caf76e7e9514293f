#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "dafermos/errors.hpp"
#include "dafermos/quadrature.hpp"

using namespace dafermos;

namespace {

double monomial_integral(int d) { return d % 2 ? 0.0 : 2.0 / (d + 1); }

}  // namespace

TEST(GaussLobatto, TwoPointsIsTrapezoid) {
  const QuadRule q = gauss_lobatto(2);
  ASSERT_EQ(q.size(), 2u);
  EXPECT_DOUBLE_EQ(q.nodes[0], -1.0);
  EXPECT_DOUBLE_EQ(q.nodes[1], 1.0);
  EXPECT_NEAR(q.weights[0], 1.0, 1e-15);
  EXPECT_NEAR(q.weights[1], 1.0, 1e-15);
}

TEST(GaussLobatto, ThreePointsIsSimpson) {
  // exactness for 1, x, x^2 with nodes -1, 0, 1 forces w = (1/3, 4/3, 1/3)
  const QuadRule q = gauss_lobatto(3);
  ASSERT_EQ(q.size(), 3u);
  EXPECT_NEAR(q.nodes[0], -1.0, 1e-15);
  EXPECT_NEAR(q.nodes[1], 0.0, 1e-15);
  EXPECT_NEAR(q.nodes[2], 1.0, 1e-15);
  EXPECT_NEAR(q.weights[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(q.weights[1], 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(q.weights[2], 1.0 / 3.0, 1e-15);
}

TEST(GaussLobatto, FourPointsIntegratesQuartic) {
  EXPECT_NEAR(gauss_lobatto(4).integrate([](double x) { return std::pow(x, 4); }), 0.4, 1e-13);
}

TEST(GaussLobatto, RejectsFewerThanTwoPoints) {
  EXPECT_THROW(gauss_lobatto(1), InvalidArgument);
  EXPECT_THROW(gauss_lobatto(0), InvalidArgument);
}

TEST(GaussLegendre, OnePointIsMidpoint) {
  const QuadRule q = gauss_legendre(1);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_NEAR(q.nodes[0], 0.0, 1e-15);
  EXPECT_NEAR(q.weights[0], 2.0, 1e-15);
}

TEST(GaussLegendre, TwoPoints) {
  const QuadRule q = gauss_legendre(2);
  EXPECT_NEAR(q.nodes[0], -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(q.nodes[1], 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(q.weights[0], 1.0, 1e-15);
  EXPECT_NEAR(q.weights[1], 1.0, 1e-15);
}

TEST(GaussLegendre, ThreePointsIntegratesQuartic) {
  EXPECT_NEAR(gauss_legendre(3).integrate([](double x) { return std::pow(x, 4); }), 0.4, 1e-13);
}

TEST(GaussLegendre, RejectsZeroPoints) { EXPECT_THROW(gauss_legendre(0), InvalidArgument); }

TEST(QuadratureProperties, LobattoExactUpToDegree2nMinus3) {
  for (int n = 2; n <= 12; ++n) {
    const QuadRule q = gauss_lobatto(n);
    for (int d = 0; d <= 2 * n - 3; ++d)
      EXPECT_NEAR(q.integrate([d](double x) { return std::pow(x, d); }), monomial_integral(d), 1e-12)
          << "n=" << n << " degree=" << d;
  }
}

TEST(QuadratureProperties, LegendreExactUpToDegree2nMinus1) {
  for (int n = 1; n <= 12; ++n) {
    const QuadRule q = gauss_legendre(n);
    for (int d = 0; d <= 2 * n - 1; ++d)
      EXPECT_NEAR(q.integrate([d](double x) { return std::pow(x, d); }), monomial_integral(d), 1e-12)
          << "n=" << n << " degree=" << d;
  }
}

TEST(QuadratureProperties, NodesSortedSymmetricWeightsPositive) {
  for (int n = 2; n <= 12; ++n)
    for (const QuadRule& q : {gauss_lobatto(n), gauss_legendre(n)}) {
      EXPECT_NEAR(std::accumulate(q.weights.begin(), q.weights.end(), 0.0), 2.0, 1e-13);
      for (std::size_t i = 0; i < q.size(); ++i) {
        EXPECT_GT(q.weights[i], 0.0);
        EXPECT_NEAR(q.nodes[i], -q.nodes[q.size() - 1 - i], 1e-15);
        EXPECT_NEAR(q.weights[i], q.weights[q.size() - 1 - i], 1e-14);
        if (i > 0) {
          EXPECT_LT(q.nodes[i - 1], q.nodes[i]);
        }
      }
    }
}
