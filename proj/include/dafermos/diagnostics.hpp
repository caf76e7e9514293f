#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "dafermos/discrete_corrector.hpp"
#include "dafermos/initial_conditions.hpp"
#include "dafermos/solver.hpp"

namespace dafermos {

/// Sum over cells of E^T, the Gauss–Lobatto entropy functional.
template <ScalarLaw L>
double total_entropy_dg(const DGState& state, const L& law) {
  const auto& ops = state.space->cell();
  double e = 0.0;
  for (int j = 0; j < state.n_cells(); ++j) e += cell_entropy(state.cell(j), ops, law);
  return e;
}

struct ErrorNorms {
  double l1 = 0.0;
  double l2 = 0.0;
};

/// L1 and L2 distance to `exact` by the p+2 point Gauss–Legendre rule per cell.
inline ErrorNorms error_norms(const DGState& state, const std::function<double(double)>& exact) {
  const DGSpace& space = *state.space;
  const auto& ops = space.cell();
  const auto& xi = space.basis().err_quad.nodes;
  ErrorNorms e;
  double sq = 0.0;
  for (int j = 0; j < state.n_cells(); ++j) {
    const Vector uq = ops.err_basis_vals * state.cell(j);
    for (Eigen::Index q = 0; q < uq.size(); ++q) {
      const double d = uq[q] - exact(space.to_physical(j, xi[q]));
      e.l1 += ops.err_weights[q] * std::abs(d);
      sq += ops.err_weights[q] * d * d;
    }
  }
  e.l2 = std::sqrt(sq);
  return e;
}

struct ConvergenceTable {
  std::vector<int> n_cells;
  std::vector<double> errors_1norm;
  std::vector<double> errors_2norm;
  std::vector<std::optional<double>> eoc_1;  // empty where undefined (zero error)
  std::vector<std::optional<double>> eoc_2;
};

inline std::optional<double> eoc_between(double e_coarse, double e_fine, int n_coarse, int n_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0) || n_coarse == n_fine) return std::nullopt;
  return std::log(e_coarse / e_fine) / std::log(static_cast<double>(n_fine) / n_coarse);
}

/// eoc_i = log(e_i / e_{i+1}) / log(N_{i+1} / N_i)
inline ConvergenceTable eoc(std::vector<int> n_cells, std::vector<double> e1, std::vector<double> e2) {
  if (n_cells.size() < 2 || e1.size() != n_cells.size() || e2.size() != n_cells.size())
    throw InvalidArgument("eoc: need at least two grid levels with matching error lists");
  ConvergenceTable t{std::move(n_cells), std::move(e1), std::move(e2), {}, {}};
  for (std::size_t i = 0; i + 1 < t.n_cells.size(); ++i) {
    t.eoc_1.push_back(eoc_between(t.errors_1norm[i], t.errors_1norm[i + 1], t.n_cells[i], t.n_cells[i + 1]));
    t.eoc_2.push_back(eoc_between(t.errors_2norm[i], t.errors_2norm[i + 1], t.n_cells[i], t.n_cells[i + 1]));
  }
  return t;
}

/// Mean of the defined entries, nullopt if there are none.
inline std::optional<double> mean_eoc(const std::vector<std::optional<double>>& rates) {
  double sum = 0.0;
  int n = 0;
  for (const auto& r : rates)
    if (r) {
      sum += *r;
      ++n;
    }
  if (n == 0) return std::nullopt;
  return sum / n;
}

/// Earliest gradient catastrophe of Burgers' equation, -1 / min u0'(x), by
/// sampling one period of the data.
inline double burgers_breaking_time(const InitialCondition& ic, double x_min = 0.0, double x_max = 2.0) {
  if (!ic.derivative) return 0.0;
  double min_slope = 0.0;
  const int samples = 8192;
  for (int i = 0; i < samples; ++i)
    min_slope = std::min(min_slope, ic.derivative(x_min + (x_max - x_min) * i / samples));
  return min_slope < 0.0 ? -1.0 / min_slope : std::numeric_limits<double>::infinity();
}

/// Classical solution of Burgers' equation by the characteristic fixed point
/// u = u0(x - u t), Newton safeguarded by bisection on [inf u0, sup u0].
inline double burgers_smooth_exact(const InitialCondition& ic, double x, double t) {
  if (t == 0.0) return ic.value(x);
  if (!ic.derivative || t >= burgers_breaking_time(ic))
    throw NoClassicalSolution("burgers_smooth_exact: no classical solution at t = " + std::to_string(t));
  auto G = [&](double u) { return u - ic.value(x - u * t); };
  double lo = ic.lower, hi = ic.upper;
  if (hi - lo < 1e-300) return lo;
  double u = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double g = G(u);
    if (g == 0.0) return u;
    if (g < 0.0) lo = u; else hi = u;
    const double dg = 1.0 + t * ic.derivative(x - u * t);
    double next = dg > 0.0 ? u - g / dg : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 1e-14 * std::max(1.0, std::abs(u))) return next;
    u = next;
  }
  throw NoClassicalSolution("burgers_smooth_exact: characteristic iteration did not converge");
}

/// Per-cell entropy violation history; logs are decadic with a 1e-18 floor.
struct EntropyTrace {
  static constexpr double kFloor = 1e-18;
  std::vector<double> times;
  std::vector<double> total_entropy;
  std::vector<std::vector<double>> violation_pos_log10;  // time x cell
  std::vector<std::vector<double>> violation_neg_log10;

  void record(double t, double entropy, const std::vector<double>& violation) {
    times.push_back(t);
    total_entropy.push_back(entropy);
    std::vector<double> pos(violation.size()), neg(violation.size());
    for (std::size_t j = 0; j < violation.size(); ++j) {
      pos[j] = std::log10(std::max(violation[j], kFloor));
      neg[j] = std::log10(std::max(-violation[j], kFloor));
    }
    violation_pos_log10.push_back(std::move(pos));
    violation_neg_log10.push_back(std::move(neg));
  }
};

/// Piecewise linear interpolation of (ts, vs) at t; clamps outside the range.
inline double interpolate_linear(const std::vector<double>& ts, const std::vector<double>& vs, double t) {
  if (ts.empty()) throw InvalidArgument("interpolate_linear: empty curve");
  if (t <= ts.front()) return vs.front();
  if (t >= ts.back()) return vs.back();
  const auto it = std::upper_bound(ts.begin(), ts.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - ts.begin());
  const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
  return (1.0 - w) * vs[i - 1] + w * vs[i];
}

struct BlowupEntry {
  int order = 0;
  int n_cells = 0;
  double cfl = 0.0;
  double t_reached = 0.0;
};

/// Achieved simulation time min(t_max, blow-up time) for every (p, N, cfl)
/// combination, on the sine-shock problem for Burgers' equation.
inline std::vector<BlowupEntry> blowup_scan(const std::vector<int>& p_list, const std::vector<double>& cfl_list,
                                            const std::vector<int>& n_list, double t_max, Scheme scheme,
                                            const InitialCondition& ic = sine_shock(), long max_steps = 0) {
  if (!(t_max > 0.0)) throw InvalidArgument("blowup_scan: t_max must be positive");
  std::vector<BlowupEntry> grid;
  const Burgers law;
  for (int p : p_list)
    for (int n : n_list)
      for (double cfl : cfl_list) {
        auto space = make_space(Mesh1D(0.0, 2.0, n), p);
        RunOptions opts;
        opts.scheme = scheme;
        opts.rule.cfl = cfl;
        opts.t_end = t_max;
        opts.max_steps = max_steps;
        const RunResult r = run_dg(interpolate_ic(ic.value, space), law, opts);
        grid.push_back({p, n, cfl, (r.blew_up || r.t_reached < t_max) ? std::min(r.t_reached, t_max) : t_max});
      }
  return grid;
}

}  // namespace dafermos
