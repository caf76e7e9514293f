#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "dafermos/errors.hpp"

namespace dafermos {

/// Quadrature rule on the reference interval [-1, 1].
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }

  template <class Fn>
  double integrate(Fn&& fn) const {
    double sum = 0.0;
    for (std::size_t q = 0; q < nodes.size(); ++q) sum += weights[q] * fn(nodes[q]);
    return sum;
  }
};

namespace detail {

inline constexpr double kNewtonTolerance = 1e-15;
inline constexpr int kNewtonMaxIterations = 100;

// Legendre P_n(x) and P_{n-1}(x) via the three-term recurrence.
inline std::pair<double, double> legendre_pair(int n, double x) {
  double p_prev = 1.0;
  double p = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p_next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
    p_prev = p;
    p = p_next;
  }
  return {p, p_prev};
}

}  // namespace detail

/// Gauss–Lobatto rule with n points (both endpoints included). Exact for
/// polynomials of degree 2n-3.
inline QuadRule gauss_lobatto(int n) {
  if (n < 2) throw InvalidArgument("gauss_lobatto: need at least 2 points, got " + std::to_string(n));
  const int N = n - 1;  // polynomial degree
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.nodes.front() = -1.0;
  rule.nodes.back() = 1.0;
  // interior nodes are the roots of P_N'; use Newton on
  // P_N'(x) = N (x P_N - P_{N-1}) / (x^2 - 1), seeded at Chebyshev–Lobatto points.
  for (int i = 1; i < N; ++i) {
    double x = -std::cos(std::numbers::pi * i / N);
    for (int it = 0; it < detail::kNewtonMaxIterations; ++it) {
      const auto [p, pm1] = detail::legendre_pair(N, x);
      const double dp = N * (x * p - pm1) / (x * x - 1.0);
      // P_N'' from the Legendre ODE: (1-x^2) P'' = 2x P' - N(N+1) P
      const double d2p = (2.0 * x * dp - N * (N + 1.0) * p) / (1.0 - x * x);
      const double step = dp / d2p;
      x -= step;
      if (std::abs(step) < detail::kNewtonTolerance) break;
    }
    rule.nodes[i] = x;
  }
  for (int i = 0; i < n; ++i) {
    const double p = detail::legendre_pair(N, rule.nodes[i]).first;
    rule.weights[i] = 2.0 / (N * (N + 1.0) * p * p);
  }
  return rule;
}

/// Gauss–Legendre rule with n interior points. Exact for degree 2n-1.
inline QuadRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("gauss_legendre: need at least 1 point, got " + std::to_string(n));
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < detail::kNewtonMaxIterations; ++it) {
      const auto [p, pm1] = detail::legendre_pair(n, x);
      dp = n * (x * p - pm1) / (x * x - 1.0);
      const double step = p / dp;
      x -= step;
      if (std::abs(step) < detail::kNewtonTolerance) break;
    }
    const auto [p, pm1] = detail::legendre_pair(n, x);
    dp = n * (x * p - pm1) / (x * x - 1.0);
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace dafermos
