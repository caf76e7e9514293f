#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "dafermos/dg.hpp"
#include "dafermos/entropy_correction.hpp"
#include "dafermos/reference_derivative.hpp"

namespace dafermos {

/// The three stages of one SSPRK33 step and the right-hand sides evaluated
/// on them. `delta*` are per-cell semidiscrete estimates filled by the
/// corrector; they stay empty for plain integration.
template <class Vec>
struct StageRecord {
  Vec u0, u1, u2;
  Vec L0, L1, L2;
  std::vector<double> delta0, delta1, delta2;
};

/// Max-norm threshold above which a state is treated as blown up.
inline constexpr double kBlowUpThreshold = 1e6;

template <class Vec>
void check_stage(const Vec& u, double t, const char* stage) {
  if (!u.allFinite() || u.cwiseAbs().maxCoeff() > kBlowUpThreshold)
    throw BlowUp(std::string("ssprk33: unusable state at stage ") + stage, t);
}

/// Three-stage strong-stability-preserving Runge–Kutta step (Shu–Osher).
/// `rhs` maps a state to its time derivative.
template <class Vec, class Rhs>
std::pair<Vec, StageRecord<Vec>> ssprk33_step(const Vec& u, double t, double dt, Rhs&& rhs) {
  if (!(dt > 0.0)) throw InvalidArgument("ssprk33_step: dt must be positive");
  StageRecord<Vec> rec;
  rec.u0 = u;
  try {
    rec.L0 = rhs(rec.u0);
    rec.u1 = rec.u0 + dt * rec.L0;
    check_stage(rec.u1, t, "1");
    rec.L1 = rhs(rec.u1);
    rec.u2 = rec.u0 + 0.25 * dt * rec.L0 + 0.25 * dt * rec.L1;
    check_stage(rec.u2, t, "2");
    rec.L2 = rhs(rec.u2);
  } catch (const NonFiniteState& e) {
    throw BlowUp(e.what(), t);
  }
  Vec next = rec.u0 + (dt / 6.0) * rec.L0 + (dt / 6.0) * rec.L1 + (2.0 * dt / 3.0) * rec.L2;
  check_stage(next, t, "3");
  return {std::move(next), std::move(rec)};
}

/// Simpson-rule accumulation of the semidiscrete estimate over one step.
/// Arguments follow the stage times 0, dt/2, dt: u^(0), u^(2), u^(1).
inline double discrete_delta(double dt, double delta_u0, double delta_u2, double delta_u1) {
  return dt * (delta_u0 + 4.0 * delta_u2 + delta_u1) / 6.0;
}

template <class Vec>
std::vector<double> discrete_delta(const StageRecord<Vec>& rec, double dt) {
  std::vector<double> out(rec.delta0.size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = discrete_delta(dt, rec.delta0[j], rec.delta2[j], rec.delta1[j]);
  return out;
}

/// Discrete cell entropy E^T(u) = sum_k w_k U(u_k) on the physical
/// Gauss–Lobatto weights.
template <ScalarLaw L, class CellU>
double cell_entropy(const CellU& u, const CellOperators& ops, const L& law) {
  double e = 0.0;
  for (Eigen::Index k = 0; k < u.size(); ++k) e += ops.lobatto_weights[k] * law.entropy(u[k]);
  return e;
}

/// Curvature of lambda -> E^T(u + lambda h) bounded by max_k U''(u_k) ||h||_w^2.
template <ScalarLaw L, class CellU, class Dir>
double curvature_bound(const CellU& u, const Dir& h, const CellOperators& ops, const L& law) {
  double hess = 0.0;
  for (Eigen::Index k = 0; k < u.size(); ++k) hess = std::max(hess, law.entropy_hess(u[k]));
  return hess * ops.lobatto_weights.dot(h.cwiseProduct(h));
}

struct DescentParams {
  int steps = 3;  // r, one per Runge–Kutta stage
  std::optional<double> curvature;  // fixed L; recomputed per iterate when empty
};

struct DescentTrace {
  std::vector<double> entropy;  // E^T at the initial point and after every iterate
  double displacement = 0.0;    // ||u_final - u_initial||_T
  double mean_before = 0.0;
  double mean_after = 0.0;
  int iterations = 0;
};

/// Bounded gradient descent on E^T over {<1, v> = <1, u>, ||v - u|| <= eps}.
/// Every iterate moves along the restricted descent direction at the current
/// point with
///   lambda = min(eps / (r ||h||), 3 <U'(u), -h> / (2 L)).
template <ScalarLaw L, class CellU>
Vector entropy_descent_discrete(const CellU& u_in, double eps, const DescentParams& params,
                                const CellOperators& ops, const L& law, DescentTrace* trace = nullptr) {
  if (params.steps < 1) throw InvalidArgument("entropy_descent_discrete: need at least one step");
  Vector u = u_in;
  if (trace) {
    *trace = DescentTrace{};
    trace->entropy.push_back(cell_entropy(u, ops, law));
    trace->mean_before = ops.integral(u) / ops.length;
  }
  if (eps > 0.0) {
    for (int it = 0; it < params.steps; ++it) {
      const DescentDirection dir = descent_direction(u, ops, law, 1.0);
      if (dir.s.isZero(0.0)) break;
      Vector var(u.size());
      for (Eigen::Index k = 0; k < u.size(); ++k) var[k] = law.entropy_var(u[k]);
      const double slope = -ops.inner(var, dir.h);  // <U', -h>_T >= 0
      const double curv = params.curvature ? *params.curvature : curvature_bound(u, dir.h, ops, law);
      double lambda = eps / (params.steps * dir.h_norm);
      if (curv > 0.0) lambda = std::min(lambda, 1.5 * slope / curv);
      if (!(lambda > 0.0)) break;
      u += lambda * dir.h;
      if (trace) {
        trace->entropy.push_back(cell_entropy(u, ops, law));
        ++trace->iterations;
      }
    }
  }
  if (!u.allFinite()) throw NonFiniteState("entropy_descent_discrete: non-finite iterate");
  if (trace) {
    trace->displacement = ops.norm(u - u_in);
    trace->mean_after = ops.integral(u) / ops.length;
  }
  return u;
}

struct DrkdgCellReport {
  double delta = 0.0;  // Simpson-accumulated estimate delta^T
  double epsilon = 0.0;
  DescentTrace descent;
};

struct DrkdgStep {
  DGState state;
  DGState vanilla;  // the uncorrected SSPRK33 result
  std::vector<DrkdgCellReport> reports;
};

template <ScalarLaw L>
std::vector<double> stage_deltas(const DGSpace& space, const Coeffs& u, const Coeffs& du_dt, const L& law,
                                 const NumericalFlux& flux) {
  const std::vector<double> fstar = interface_fluxes(u, law, flux);
  const int n = space.n_cells();
  std::vector<double> d(n);
  for (int j = 0; j < n; ++j)
    d[j] = delta(u.col(j), du_dt.col(j), space.cell(), law, fstar[j], fstar[(j + 1) % n]);
  return d;
}

/// One fully discrete corrected step: vanilla SSPRK33, Simpson estimate of the
/// step error per cell, then the bounded entropy descent with eps = delta^T.
template <ScalarLaw L>
DrkdgStep drkdg_step(const DGState& state, double t, double dt, const L& law, const NumericalFlux& flux,
                     const DescentParams& params = {}) {
  const DGSpace& space = *state.space;
  auto rhs = [&](const Coeffs& c) { return dg_rhs(space, c, law, flux).du_dt; };
  auto [next, rec] = ssprk33_step(state.coeffs, t, dt, rhs);
  try {
    rec.delta0 = stage_deltas(space, rec.u0, rec.L0, law, flux);
    rec.delta1 = stage_deltas(space, rec.u1, rec.L1, law, flux);
    rec.delta2 = stage_deltas(space, rec.u2, rec.L2, law, flux);
  } catch (const NonFiniteState& e) {
    throw BlowUp(e.what(), t);
  }
  const std::vector<double> dT = discrete_delta(rec, dt);

  DrkdgStep out{DGState{state.space, next}, DGState{state.space, next}, std::vector<DrkdgCellReport>(dT.size())};
  const auto& ops = space.cell();
  for (int j = 0; j < space.n_cells(); ++j) {
    DrkdgCellReport& rep = out.reports[j];
    rep.delta = dT[j];
    rep.epsilon = dT[j];
    try {
      out.state.coeffs.col(j) = entropy_descent_discrete(next.col(j), rep.epsilon, params, ops, law, &rep.descent);
    } catch (const NonFiniteState& e) {
      throw BlowUp(e.what(), t);
    }
  }
  check_stage(out.state.coeffs, t, "descent");
  return out;
}

}  // namespace dafermos
