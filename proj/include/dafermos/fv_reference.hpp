#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "dafermos/conservation_law.hpp"
#include "dafermos/dg.hpp"
#include "dafermos/discrete_corrector.hpp"
#include "dafermos/quadrature.hpp"

namespace dafermos {

/// Piecewise constant state of the first-order finite-volume solver.
struct FVState {
  Mesh1D mesh;
  Vector means;
};

/// Conservative update (f(u_{k-1}, u_k) - f(u_k, u_{k+1})) / dx, periodic.
template <ScalarLaw L>
Vector fv_rhs(const Mesh1D& mesh, const Vector& means, const L& law, const NumericalFlux& flux) {
  const Eigen::Index n = means.size();
  Vector fluxes(n);  // flux through left face of cell k
  for (Eigen::Index k = 0; k < n; ++k) fluxes[k] = flux.value(means[(k + n - 1) % n], means[k], law);
  const double inv_dx = 1.0 / mesh.cell_length();
  Vector out(n);
  for (Eigen::Index k = 0; k < n; ++k) out[k] = (fluxes[k] - fluxes[(k + 1) % n]) * inv_dx;
  return out;
}

template <ScalarLaw L>
Vector fv_rhs(const FVState& state, const L& law, const NumericalFlux& flux) {
  return fv_rhs(state.mesh, state.means, law, flux);
}

/// Cell averages of fn by a 6-point Gauss–Legendre rule per cell.
inline FVState fv_project(const std::function<double(double)>& fn, const Mesh1D& mesh) {
  const QuadRule q = gauss_legendre(6);
  FVState s{mesh, Vector(mesh.n_cells)};
  const double dx = mesh.cell_length();
  for (int k = 0; k < mesh.n_cells; ++k) {
    const double a = mesh.cell_left(k);
    s.means[k] = 0.5 * q.integrate([&](double xi) { return fn(a + 0.5 * (xi + 1.0) * dx); });
  }
  return s;
}

template <ScalarLaw L>
double fv_total_entropy(const FVState& s, const L& law) {
  double e = 0.0;
  for (Eigen::Index k = 0; k < s.means.size(); ++k) e += law.entropy(s.means[k]);
  return e * s.mesh.cell_length();
}

struct FVSnapshot {
  double time = 0.0;
  Vector means;
};

struct FVSolution {
  std::vector<FVSnapshot> snapshots;
  std::vector<double> entropy_times;
  std::vector<double> entropy;       // total entropy at the output times
  std::vector<double> step_entropy;  // after every step, when requested
  FVState final_state;
  int steps = 0;
};

struct FVOptions {
  double x_min = 0.0;
  double x_max = 2.0;
  NumericalFlux flux{FluxKind::Godunov};
  bool record_every_step = false;
};

/// Godunov-type reference solver: SSPRK33 with dt = cfl dx / c_max,
/// c_max recomputed each step, steps shortened to hit output times exactly.
template <ScalarLaw L>
FVSolution fv_solve(const L& law, const std::function<double(double)>& ic, int n_cells, double cfl, double t_end,
                    std::vector<double> output_times, const FVOptions& opts = {}) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw InvalidArgument("fv_solve: cfl must lie in (0, 1]");
  if (!std::is_sorted(output_times.begin(), output_times.end()))
    throw InvalidArgument("fv_solve: output times must be sorted");
  const Mesh1D mesh(opts.x_min, opts.x_max, n_cells);
  FVState state = fv_project(ic, mesh);
  FVSolution sol;
  auto rhs = [&](const Vector& m) { return fv_rhs(mesh, m, law, opts.flux); };
  auto emit = [&](double t) {
    sol.snapshots.push_back({t, state.means});
    sol.entropy_times.push_back(t);
    sol.entropy.push_back(fv_total_entropy(state, law));
  };

  double t = 0.0;
  std::size_t next_out = 0;
  while (next_out < output_times.size() && output_times[next_out] <= 0.0) emit(output_times[next_out++]);
  if (opts.record_every_step) sol.step_entropy.push_back(fv_total_entropy(state, law));
  const double dx = mesh.cell_length();
  while (t < t_end) {
    const double c_max =
        max_wave_speed(std::span<const double>(state.means.data(), static_cast<std::size_t>(state.means.size())), law);
    double dt = c_max > 0.0 ? cfl * dx / c_max : t_end - t;
    double target = t_end;
    if (next_out < output_times.size()) target = std::min(target, output_times[next_out]);
    bool hit = false;
    if (t + dt >= target) {
      dt = target - t;
      hit = true;
    }
    state.means = ssprk33_step(state.means, t, dt, rhs).first;
    t = hit ? target : t + dt;
    ++sol.steps;
    if (opts.record_every_step) sol.step_entropy.push_back(fv_total_entropy(state, law));
    while (next_out < output_times.size() && output_times[next_out] <= t) emit(output_times[next_out++]);
  }
  sol.final_state = state;
  return sol;
}

}  // namespace dafermos
