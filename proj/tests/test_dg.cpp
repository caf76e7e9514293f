#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "dafermos/dg.hpp"
#include "dafermos/initial_conditions.hpp"

using namespace dafermos;
using std::numbers::pi;

namespace {

DGState random_state(int n, int p, std::uint64_t seed, double lo = -1.0, double hi = 1.5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  DGState s{make_space(Mesh1D(0.0, 2.0, n), p), Coeffs(p + 1, n)};
  for (Eigen::Index i = 0; i < s.coeffs.size(); ++i) s.coeffs.data()[i] = u(rng);
  return s;
}

const NumericalFlux kLLF{FluxKind::LocalLaxFriedrichs};

}  // namespace

TEST(Mesh, Validation) {
  EXPECT_THROW(Mesh1D(0.0, 2.0, 0), InvalidArgument);
  EXPECT_THROW(Mesh1D(1.0, 1.0, 4), InvalidArgument);
  EXPECT_THROW(Mesh1D(2.0, 0.0, 4), InvalidArgument);
  const Mesh1D m(0.0, 2.0, 8);
  EXPECT_DOUBLE_EQ(m.cell_length(), 0.25);
  EXPECT_DOUBLE_EQ(m.cell_left(3), 0.75);
  EXPECT_DOUBLE_EQ(m.measure(), 2.0);
}

TEST(InterpolateIc, Constant) {
  const DGState s = interpolate_ic([](double) { return 3.0; }, make_space(Mesh1D(0.0, 2.0, 5), 4));
  EXPECT_TRUE((s.coeffs.array() == 3.0).all());
}

TEST(InterpolateIc, LinearOnUnitCell) {
  const DGState s = interpolate_ic([](double x) { return x; }, make_space(Mesh1D(0.0, 1.0, 1), 1));
  EXPECT_DOUBLE_EQ(s.coeffs(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(s.coeffs(1, 0), 1.0);
}

TEST(InterpolateIc, RejectsNonFiniteData) {
  EXPECT_THROW(interpolate_ic([](double x) { return 1.0 / (x - 1.0); }, make_space(Mesh1D(0.0, 2.0, 2), 2)),
               NonFiniteState);
}

TEST(InterpolateIc, CellMeansConvergeAtInterpolationOrder) {
  // exact cell mean of sin(pi x) + 1/2
  auto exact_mean = [](double a, double b) {
    return (-(std::cos(pi * b) - std::cos(pi * a)) / pi + 0.5 * (b - a)) / (b - a);
  };
  // the mean of a Lobatto interpolant is Lobatto quadrature, so the rate is at
  // least p + 1; higher orders hit round-off on these grids
  for (int p : {1, 2, 3}) {
    double err[2];
    for (int level = 0; level < 2; ++level) {
      const int n = 20 << level;
      const DGState s = interpolate_ic(sine_shock().value, make_space(Mesh1D(0.0, 2.0, n), p));
      const Mesh1D& m = s.space->mesh();
      err[level] = 0.0;
      for (int j = 0; j < n; ++j)
        err[level] = std::max(err[level],
                              std::abs(cell_mean(s, j) - exact_mean(m.cell_left(j), m.cell_left(j) + m.cell_length())));
    }
    EXPECT_GE(std::log2(err[0] / err[1]), p + 0.8) << "p=" << p;
    EXPECT_LE(err[0], std::pow(0.1, p + 1)) << "p=" << p;
  }
}

TEST(InterpolateIcProperties, Idempotent) {
  const DGState s = random_state(6, 5, 3);
  const DGSpace& sp = *s.space;
  const double dx = sp.mesh().cell_length();
  auto poly = [&](double x) {
    const int j = std::min(sp.n_cells() - 1, static_cast<int>(std::floor(x / dx)));
    const double xi = 2.0 * (x - sp.mesh().cell_left(j)) / dx - 1.0;
    return sp.basis().evaluate(s.coeffs.col(j), xi);
  };
  // nodes on shared faces take the left cell's polynomial, so compare interior nodes only
  const DGState again = interpolate_ic(poly, s.space);
  EXPECT_LE((again.coeffs.middleRows(1, 4) - s.coeffs.middleRows(1, 4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DgRhs, ConstantStateIsStationary) {
  for (int p : {1, 3, 6}) {
    const DGState s = interpolate_ic([](double) { return 0.7; }, make_space(Mesh1D(0.0, 2.0, 7), p));
    EXPECT_LE(dg_rhs(s, Burgers{}, kLLF).du_dt.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE(dg_rhs(s, Burgers{}, NumericalFlux{FluxKind::Godunov}).du_dt.cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(DgRhs, CellMassChangeEqualsFluxDifference) {
  for (int p : {1, 2, 4, 6}) {
    const DGState s = random_state(9, p, 100 + p);
    const DGRhs r = dg_rhs(s, Burgers{}, kLLF);
    const auto& ops = s.space->cell();
    for (int j = 0; j < s.n_cells(); ++j)
      EXPECT_NEAR(ops.integral(r.du_dt.col(j)), r.fstar[j] - r.fstar[(j + 1) % s.n_cells()], 1e-12);
  }
}

TEST(DgRhs, UpwindCellExactForLinearAdvection) {
  // u = x on [0,2) in two p=1 cells; only the right cell sees exact upwind data
  const DGState s = interpolate_ic([](double x) { return x; }, make_space(Mesh1D(0.0, 2.0, 2), 1));
  const DGRhs r = dg_rhs(s, LinearAdvection{}, kLLF);
  EXPECT_NEAR(r.du_dt(0, 1), -1.0, 1e-13);
  EXPECT_NEAR(r.du_dt(1, 1), -1.0, 1e-13);
}

TEST(DgRhsProperties, ExactForContinuousPolynomialsUnderLinearFlux) {
  // u = x (2 - x) is continuous and periodic on [0,2); du/dt = -(2 - 2x)
  for (int n : {1, 2, 5})
    for (int p : {2, 3, 5}) {
      const DGState s = interpolate_ic([](double x) { return x * (2.0 - x); }, make_space(Mesh1D(0.0, 2.0, n), p));
      const DGRhs r = dg_rhs(s, LinearAdvection{}, kLLF);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k <= p; ++k)
          EXPECT_NEAR(r.du_dt(k, j), -(2.0 - 2.0 * s.space->node_x(j, k)), 1e-11) << "n=" << n << " p=" << p;
    }
}

TEST(DgRhsProperties, PeriodicTelescoping) {
  for (int seed = 0; seed < 10; ++seed) {
    const DGState s = random_state(11, 1 + seed % 6, seed);
    const DGRhs r = dg_rhs(s, Burgers{}, kLLF);
    double total = 0.0;
    for (int j = 0; j < s.n_cells(); ++j) total += s.space->cell().integral(r.du_dt.col(j));
    EXPECT_NEAR(total, 0.0, 1e-12);
  }
}

TEST(DgRhs, RejectsNonFiniteState) {
  DGState s = random_state(4, 2, 1);
  s.coeffs(2, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(dg_rhs(s, Burgers{}, kLLF), NonFiniteState);
}

TEST(CellMean, Examples) {
  const auto unit = make_space(Mesh1D(0.0, 1.0, 1), 1);
  EXPECT_NEAR(cell_mean(interpolate_ic([](double) { return 4.0; }, unit), 0), 4.0, 1e-15);
  for (int p : {1, 2, 5})
    EXPECT_NEAR(cell_mean(interpolate_ic([](double x) { return x; }, make_space(Mesh1D(0.0, 1.0, 1), p)), 0), 0.5,
                1e-15);
  EXPECT_NEAR(cell_mean(interpolate_ic([](double x) { return x * x; }, make_space(Mesh1D(0.0, 1.0, 1), 2)), 0),
              1.0 / 3.0, 1e-15);
  EXPECT_THROW(cell_mean(interpolate_ic([](double) { return 0.0; }, unit), 1), InvalidArgument);
}

TEST(TotalMass, Examples) {
  EXPECT_NEAR(total_mass(interpolate_ic([](double) { return 1.0; }, make_space(Mesh1D(0.0, 2.0, 3), 2))), 2.0,
              1e-14);
  // the sine part cancels by the reflection symmetry of any uniform mesh on [0,2)
  for (int n : {1, 2, 7, 20, 64})
    for (int p : {1, 2, 6})
      EXPECT_NEAR(total_mass(interpolate_ic(sine_shock().value, make_space(Mesh1D(0.0, 2.0, n), p))), 1.0, 1e-10)
          << "n=" << n << " p=" << p;
}
