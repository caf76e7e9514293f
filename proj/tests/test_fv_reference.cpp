#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "dafermos/fv_reference.hpp"
#include "dafermos/initial_conditions.hpp"
#include "oracles/exact_solutions.hpp"

using namespace dafermos;

namespace {
const NumericalFlux kGodunov{FluxKind::Godunov};
}

TEST(FvRhs, ConstantStateIsZero) {
  const Mesh1D m(0.0, 2.0, 9);
  EXPECT_LE(fv_rhs(m, Vector::Constant(9, 0.4), Burgers{}, kGodunov).cwiseAbs().maxCoeff(), 0.0);
}

TEST(FvRhs, RiemannBookkeeping) {
  // cells (1, 1, 0, 0): the shock face moves f(1) = 1/2 out of cell 1 into cell 2,
  // while the periodic face (0 | 1) is a rarefaction carrying f(0) = 0
  const Mesh1D m(0.0, 2.0, 4);
  Vector u(4);
  u << 1.0, 1.0, 0.0, 0.0;
  const Vector r = fv_rhs(m, u, Burgers{}, kGodunov);
  const double dx = m.cell_length();
  EXPECT_NEAR(r[0], -0.5 / dx, 1e-15);
  EXPECT_NEAR(r[1], 0.0, 1e-15);
  EXPECT_NEAR(r[2], 0.5 / dx, 1e-15);
  EXPECT_NEAR(r[3], 0.0, 1e-15);
}

TEST(FvRhs, RejectsNonFiniteState) {
  const Mesh1D m(0.0, 2.0, 3);
  Vector u = Vector::Zero(3);
  u[1] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(fv_rhs(m, u, Burgers{}, kGodunov), NonFiniteState);
}

TEST(FvProject, ExactForPolynomials) {
  const FVState s = fv_project([](double x) { return x * x * x; }, Mesh1D(0.0, 2.0, 4));
  for (int k = 0; k < 4; ++k) {
    const double a = 0.5 * k, b = a + 0.5;
    EXPECT_NEAR(s.means[k], (std::pow(b, 4) - std::pow(a, 4)) / 4.0 / 0.5, 1e-14);
  }
}

TEST(FvSolve, Validation) {
  EXPECT_THROW(fv_solve(Burgers{}, sine_shock().value, 10, 0.0, 1.0, {}), InvalidArgument);
  EXPECT_THROW(fv_solve(Burgers{}, sine_shock().value, 10, 1.5, 1.0, {}), InvalidArgument);
  EXPECT_THROW(fv_solve(Burgers{}, sine_shock().value, 10, 0.5, 1.0, {0.5, 0.2}), InvalidArgument);
}

TEST(FvSolve, NonFiniteDataSignalsBlowUp) {
  EXPECT_THROW(fv_solve(Burgers{}, [](double) { return std::nan(""); }, 10, 0.5, 1.0, {}), BlowUp);
}

TEST(FvSolve, ConstantStateStaysConstant) {
  const FVSolution sol = fv_solve(Burgers{}, [](double) { return 0.75; }, 50, 0.9, 1.0, {0.0, 0.5, 1.0});
  ASSERT_EQ(sol.snapshots.size(), 3u);
  for (const auto& snap : sol.snapshots) EXPECT_LE((snap.means.array() - 0.75).abs().maxCoeff(), 1e-15);
  for (double e : sol.entropy) EXPECT_NEAR(e, 2.0 * 0.75 * 0.75, 1e-13);
}

TEST(FvSolve, SnapshotsAtRequestedTimes) {
  const FVSolution sol = fv_solve(Burgers{}, sine_shock().value, 100, 0.8, 0.5, {0.0, 0.1, 0.25, 0.5});
  ASSERT_EQ(sol.snapshots.size(), 4u);
  EXPECT_DOUBLE_EQ(sol.snapshots[1].time, 0.1);
  EXPECT_DOUBLE_EQ(sol.snapshots[3].time, 0.5);
  EXPECT_TRUE(sol.final_state.means == sol.snapshots[3].means);
}

TEST(FvSolveProperties, SineShockMonotoneConservativeDissipative) {
  FVOptions opts;
  opts.record_every_step = true;
  const int n = 10000;
  const FVSolution sol = fv_solve(Burgers{}, sine_shock().value, n, 0.5, 1.0, {0.0, 1.0}, opts);
  ASSERT_EQ(sol.step_entropy.size(), static_cast<std::size_t>(sol.steps + 1));
  for (std::size_t i = 1; i < sol.step_entropy.size(); ++i) ASSERT_LE(sol.step_entropy[i], sol.step_entropy[i - 1] + 1e-12);
  const double m0 = sol.snapshots[0].means.sum(), m1 = sol.final_state.means.sum();
  EXPECT_NEAR(m1, m0, 1e-10 * std::abs(m0));
  EXPECT_GE(sol.final_state.means.minCoeff(), -0.5 - 1e-12);
  EXPECT_LE(sol.final_state.means.maxCoeff(), 1.5 + 1e-12);
}

TEST(FvSolveProperties, SawtoothRarefactionWithinFirstOrder) {
  // a centred fan costs first-order schemes a logarithmic factor: O(dx log(1/dx))
  const double t = 0.3;
  auto errors = [&](int n) {
    const double dx = 2.0 / n;
    const FVSolution sol = fv_solve(Burgers{}, rarefaction().value, n, 0.9, t, {t});
    double l1 = 0.0, linf_smooth = 0.0;
    for (int k = 0; k < n; ++k) {
      const double x = (k + 0.5) * dx;
      const double d = std::abs(sol.final_state.means[k] - oracle::sawtooth_exact(x, t));
      l1 += d * dx;
      if (std::abs(x - 0.7) > 0.05 && std::abs(x - 1.3) > 0.05 && x > 0.05 && x < 1.95)
        linf_smooth = std::max(linf_smooth, d);
    }
    return std::pair{l1, linf_smooth};
  };
  const int n = 10000;
  const double dx = 2.0 / n, bound = 2.0 * dx * std::log(1.0 / dx);
  const auto [l1, linf] = errors(n);
  EXPECT_LE(l1, bound);
  EXPECT_LE(linf, bound);
  EXPECT_GE(std::log(errors(2500).first / l1) / std::log(4.0), 0.75);
}
